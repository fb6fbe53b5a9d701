"""
Classical upper bounds on A_q(n,d).

Singleton, Hamming, Plotkin, Griesmer, Johnson and Elias-Bassalygo, each
evaluated in exact integer or rational arithmetic and floored once at the
end. Griesmer is the one dimension-native bound: it returns k directly.
"""

from __future__ import annotations

from fractions import Fraction

from codebounds.bounds.constant_weight import constant_weight_upper
from codebounds.combinatorics import CodeParams, ball_size, binomial


def singleton_bound(params: CodeParams) -> int:
    """q^(n-d+1)."""
    return params.q ** (params.n - params.d + 1)


def hamming_bound(params: CodeParams) -> int:
    """Sphere packing: floor(q^n / |B(floor((d-1)/2), n)|)."""
    q, n, d = params.q, params.n, params.d
    return q**n // ball_size((d - 1) // 2, n, q)


def plotkin_bound(params: CodeParams) -> int | None:
    """
    floor(qd / (qd - n(q-1))) when qd > n(q-1), otherwise None.

    The applicability region is d/n > 1 - 1/q.
    """
    q, n, d = params.q, params.n, params.d
    denominator = q * d - n * (q - 1)
    if denominator <= 0:
        return None
    return (q * d) // denominator


def griesmer_max_k(params: CodeParams) -> int:
    """Largest k with sum_{i<k} ceil(d / q^i) <= n."""
    q, n, d = params.q, params.n, params.d
    k = 0
    total = 0
    power = 1
    while True:
        term = -(-d // power)
        if total + term > n:
            return k
        total += term
        power *= q
        k += 1


def johnson_bound(params: CodeParams) -> int:
    """
    q-ary Johnson bound.

    For d = 2t+1 the tail term counts weight t+1 words not covered by the
    packing, using the constant-weight estimate A_q(n, d, d). For d = 2t
    the packing radius is t-1 and weight-t words are shared among
    A_q(n, d, t) codewords.
    """
    q, n, d = params.q, params.n, params.d
    if d == 1:
        return q**n
    space = q**n
    if d % 2 == 1:
        t = (d - 1) // 2
        covered = binomial(d, t) * constant_weight_upper(q, n, d, d)
        uncovered = binomial(n, t + 1) * (q - 1) ** (t + 1) - covered
        tail = Fraction(max(0, uncovered), constant_weight_upper(q, n, d, t + 1))
        return int(Fraction(space) / (ball_size(t, n, q) + tail))
    t = d // 2
    tail = Fraction(binomial(n, t) * (q - 1) ** t, constant_weight_upper(q, n, d, t))
    return int(Fraction(space) / (ball_size(t - 1, n, q) + tail))


def elias_bassalygo_bound(params: CodeParams) -> int:
    """
    Elias-Bassalygo bound, minimised over the admissible radii.

    For 1 <= w <= (q-1)n/q with q w^2 - 2(q-1)nw + (q-1)nd > 0 the size is
    at most (q-1)nd q^n / ((q w^2 - 2(q-1)nw + (q-1)nd) |B(w,n)|).
    Capped at q^n; q^n when no radius is admissible.
    """
    q, n, d = params.q, params.n, params.d
    space = q**n
    best = space
    numerator = (q - 1) * n * d * space
    for w in range(1, ((q - 1) * n) // q + 1):
        denominator = q * w * w - 2 * (q - 1) * n * w + (q - 1) * n * d
        if denominator <= 0:
            continue
        best = min(best, numerator // (denominator * ball_size(w, n, q)))
    return max(best, 1)
