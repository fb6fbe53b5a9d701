"""
Exhaustive searches used to validate the bounds on small parameters.

aq_exact_bruteforce finds A_q(n,d) as a maximum clique of the graph on
all q^n words, edges joining words at distance >= d. Vertex sets are
Python int bitsets indexed by the base-q value of the word.

max_systematic_k_bruteforce finds the largest k for which a systematic
(n, k) code of distance >= d exists, by backtracking over redundancy
assignments with forward checking.
"""

from __future__ import annotations

from itertools import combinations, product

from codebounds.combinatorics import BoundParameterError, CodeParams
from codebounds.config import get_settings
from codebounds.logging import get_logger

logger = get_logger(__name__)


class SearchLimitError(BoundParameterError):
    """Raised when q^n exceeds the guard of an exhaustive search."""


class WordSpace:
    """
    The q^n words of length n, indexed by their base-q value.

    Digit i of word x is (x // q^(n-1-i)) % q, so index order is
    lexicographic order on words.
    """

    def __init__(self, q: int, n: int):
        self.q = q
        self.n = n
        self.size = q**n
        self._weights: list[int] | None = None

    def digits(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            x, digit = divmod(x, self.q)
            out.append(digit)
        return tuple(reversed(out))

    def index(self, digits: tuple[int, ...] | list[int]) -> int:
        x = 0
        for digit in digits:
            x = x * self.q + digit
        return x

    def add(self, x: int, y: int) -> int:
        """Digit-wise sum modulo q."""
        if self.q == 2:
            return x ^ y
        return self.index([(a + b) % self.q for a, b in zip(self.digits(x), self.digits(y))])

    @property
    def weights(self) -> list[int]:
        if self._weights is None:
            if self.q == 2:
                self._weights = [x.bit_count() for x in range(self.size)]
            else:
                self._weights = [
                    sum(1 for digit in self.digits(x) if digit) for x in range(self.size)
                ]
        return self._weights

    def error_patterns(self, max_weight: int) -> list[int]:
        """Indices of every word of weight 1..max_weight."""
        patterns = []
        for weight in range(1, min(max_weight, self.n) + 1):
            for support in combinations(range(self.n), weight):
                for values in product(range(1, self.q), repeat=weight):
                    digits = [0] * self.n
                    for position, value in zip(support, values):
                        digits[position] = value
                    patterns.append(self.index(digits))
        return patterns

    def weight_at_least_mask(self, w: int) -> int:
        mask = 0
        for x, weight in enumerate(self.weights):
            if weight >= w:
                mask |= 1 << x
        return mask


def _check_limit(params: CodeParams, limit: int, what: str) -> None:
    if params.space_size > limit:
        raise SearchLimitError(
            f"{what} refuses {params}: q^n = {params.space_size} exceeds the limit {limit}"
        )


def _low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class CliqueSearch:
    """
    Branch and bound maximum clique over the distance graph.

    Uses greedy colouring as the bound, the lexicode as the initial lower
    bound and a fixed zero word plus a fixed minimum-weight second word
    to break translation and coordinate symmetries.
    """

    def __init__(self, params: CodeParams):
        self.params = params
        self.space = WordSpace(params.q, params.n)
        self.full = (1 << self.space.size) - 1
        self._near = self.space.error_patterns(params.d - 1)
        self._adjacency: dict[int, int] = {}
        self.best = 0
        self.nodes = 0

    def adjacency(self, v: int) -> int:
        """Bitset of words at distance >= d from v."""
        mask = self._adjacency.get(v)
        if mask is None:
            near = 1 << v
            for e in self._near:
                near |= 1 << self.space.add(v, e)
            mask = self.full & ~near
            self._adjacency[v] = mask
        return mask

    def lexicode_size(self) -> int:
        """Size of the greedy lexicographic code containing zero."""
        size = 1
        candidates = self.adjacency(0)
        while candidates:
            v = _low_bit(candidates)
            size += 1
            candidates &= self.adjacency(v)
        return size

    def _colour(self, candidates: int) -> list[tuple[int, int]]:
        order: list[tuple[int, int]] = []
        colour = 0
        uncoloured = candidates
        while uncoloured:
            colour += 1
            pool = uncoloured
            while pool:
                low = pool & -pool
                v = low.bit_length() - 1
                order.append((v, colour))
                uncoloured &= ~low
                pool &= ~low & ~self.adjacency(v)
        return order

    def _expand(self, candidates: int, size: int) -> None:
        self.nodes += 1
        for v, colour in reversed(self._colour(candidates)):
            if size + colour <= self.best:
                return
            remaining = candidates & self.adjacency(v)
            if remaining:
                self._expand(remaining, size + 1)
            elif size + 1 > self.best:
                self.best = size + 1
            candidates &= ~(1 << v)

    def run(self) -> int:
        q, n, d = self.params.q, self.params.n, self.params.d
        if d == 1:
            return q**n
        if d == 2:
            # the sum-zero code meets the Singleton bound
            return q ** (n - 1)
        self.best = self.lexicode_size()
        for w in range(d, n + 1):
            # second word 1^w 0^(n-w); the rest have weight >= w
            second = self.space.index([1] * w + [0] * (n - w))
            candidates = (
                self.adjacency(0)
                & self.adjacency(second)
                & self.space.weight_at_least_mask(w)
                & ~(1 << second)
            )
            if candidates:
                self._expand(candidates, 2)
            elif self.best < 2:
                self.best = 2
        return self.best


def aq_exact_bruteforce(params: CodeParams, limit: int | None = None) -> int:
    """
    Exact A_q(n,d) by maximum clique search.

    Raises:
        SearchLimitError: If q^n exceeds the configured limit
    """
    limit = get_settings().bruteforce_limit if limit is None else limit
    _check_limit(params, limit, "aq_exact_bruteforce")
    search = CliqueSearch(params)
    value = search.run()
    logger.debug("aq_exact_found", params=str(params), value=value, nodes=search.nodes)
    return value


class SystematicSearch:
    """
    Backtracking search for a systematic code of a fixed dimension.

    Message i (a word of length k) is extended by a redundancy word of
    length n-k. Messages at distance md < d need redundancies at distance
    >= d - md. Domains are bitsets over the redundancy space; the variable
    with the smallest domain is assigned first.
    """

    def __init__(self, params: CodeParams, k: int):
        self.params = params
        self.k = k
        self.messages = WordSpace(params.q, k)
        self.redundancy = WordSpace(params.q, params.n - k)
        self.full = (1 << self.redundancy.size) - 1
        self._allowed: dict[tuple[int, int], int] = {}
        self._near_patterns: dict[int, list[int]] = {}
        self.neighbours = self._message_neighbours()

    def _message_neighbours(self) -> list[list[tuple[int, int]]]:
        d = self.params.d
        patterns = [
            (e, self.messages.weights[e]) for e in self.messages.error_patterns(d - 1)
        ]
        return [
            [(self.messages.add(i, e), weight) for e, weight in patterns]
            for i in range(self.messages.size)
        ]

    def allowed(self, value: int, distance: int) -> int:
        """Redundancy words at distance >= `distance` from value."""
        key = (value, distance)
        mask = self._allowed.get(key)
        if mask is None:
            patterns = self._near_patterns.get(distance)
            if patterns is None:
                patterns = self.redundancy.error_patterns(distance - 1)
                self._near_patterns[distance] = patterns
            near = 1 << value
            for e in patterns:
                near |= 1 << self.redundancy.add(value, e)
            mask = self.full & ~near
            self._allowed[key] = mask
        return mask

    def exists(self) -> bool:
        d = self.params.d
        m = self.params.n - self.k
        if m < d - 1:
            return False
        if d == 1:
            return True

        count = self.messages.size
        domains = [self.full] * count
        domains[0] = 1  # redundancy of the zero message fixed to zero
        unassigned = set(range(count))
        trail: list[tuple[int, int]] = []

        def undo(mark: int) -> None:
            while len(trail) > mark:
                j, previous = trail.pop()
                domains[j] = previous

        def propagate(i: int, value: int) -> bool:
            for j, message_distance in self.neighbours[i]:
                if j not in unassigned:
                    continue
                narrowed = domains[j] & self.allowed(value, d - message_distance)
                if narrowed != domains[j]:
                    trail.append((j, domains[j]))
                    domains[j] = narrowed
                    if not narrowed:
                        return False
            return True

        def pick() -> int:
            return min(unassigned, key=lambda j: (domains[j].bit_count(), j))

        first = pick()
        unassigned.remove(first)
        # frames are [message, untried values, trail mark]
        stack: list[list[int]] = [[first, domains[first], len(trail)]]
        while stack:
            frame = stack[-1]
            i, untried, mark = frame
            undo(mark)
            if not untried:
                stack.pop()
                unassigned.add(i)
                continue
            low = untried & -untried
            frame[1] = untried & ~low
            if propagate(i, low.bit_length() - 1):
                if not unassigned:
                    return True
                j = pick()
                unassigned.remove(j)
                stack.append([j, domains[j], len(trail)])
        return False


def max_systematic_k_bruteforce(params: CodeParams, limit: int | None = None) -> int:
    """
    Largest k admitting a systematic (n, k) code with distance >= d.

    Raises:
        SearchLimitError: If q^n exceeds the configured limit
    """
    limit = get_settings().systematic_limit if limit is None else limit
    _check_limit(params, limit, "max_systematic_k_bruteforce")
    for k in range(params.n - params.d + 1, 0, -1):
        if SystematicSearch(params, k).exists():
            logger.debug("systematic_k_found", params=str(params), k=k)
            return k
    return 0
