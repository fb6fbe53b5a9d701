"""
Upper bounds on constant-weight codes.

The q-ary Johnson bound needs an upper estimate of A_q(n, d, w), the
largest code of length n, distance d with every word of weight exactly w.
Only upper estimates are needed, so the value below is the minimum of a
few valid bounds rather than an exact table.
"""

from __future__ import annotations

from functools import lru_cache

from codebounds.combinatorics import BoundParameterError, binomial


def constant_weight_upper(q: int, n: int, d: int, w: int) -> int:
    """
    Upper bound on A_q(n, d, w).

    Combines the trivial count of weight-w words, the restricted Johnson
    bound and the recursion A(n,d,w) <= floor(n(q-1) A(n-1,d,w-1) / w).
    """
    if q < 2 or n < 0 or d < 1 or w < 0:
        raise BoundParameterError(
            f"invalid constant-weight parameters q={q}, n={n}, d={d}, w={w}"
        )
    if w > n:
        return 0
    return _constant_weight_upper(q, n, d, w)


@lru_cache(maxsize=None)
def _constant_weight_upper(q: int, n: int, d: int, w: int) -> int:
    if w == 0:
        return 1
    # Binary constant-weight codes have even pairwise distance
    if q == 2 and d % 2 == 1:
        d += 1
    if d > 2 * w or d > n:
        return 1

    best = binomial(n, w) * (q - 1) ** w

    denominator = q * w * w - 2 * (q - 1) * n * w + n * d * (q - 1)
    if denominator > 0:
        best = min(best, (n * d * (q - 1)) // denominator)

    if n >= 1:
        shorter = _constant_weight_upper(q, n - 1, d, w - 1) if w - 1 <= n - 1 else 0
        best = min(best, (n * (q - 1) * shorter) // w)

    return max(best, 1)
