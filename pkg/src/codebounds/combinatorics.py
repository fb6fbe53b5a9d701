"""
Exact combinatorial primitives for code-size bounds.

Everything here works on Python integers and fractions.Fraction, so no
value is ever rounded before a bound is floored. Magnitudes reach 29^100
in sweeps; int and Fraction handle that without overflow.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Exact rational used for ball ratios and the correction term of Bound A / B
Ratio = Fraction


class BoundParameterError(ValueError):
    """Raised when a bound or primitive is called outside its domain."""


class CodeParams(BaseModel):
    """
    A validated (q, n, d) triple.

    q is any integer alphabet size >= 2; prime powers are not required
    because every formula here is purely combinatorial.
    """

    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2, description="Alphabet size")
    n: int = Field(..., ge=1, description="Code length")
    d: int = Field(..., ge=1, description="Minimum distance")

    @model_validator(mode="after")
    def _check_distance(self) -> CodeParams:
        if self.d > self.n:
            raise ValueError(f"minimum distance d={self.d} exceeds length n={self.n}")
        return self

    @classmethod
    def of(cls, q: int, n: int, d: int) -> CodeParams:
        """Build params, raising BoundParameterError instead of a ValidationError."""
        if q < 2 or n < 1 or d < 1 or d > n:
            raise BoundParameterError(f"invalid code parameters q={q}, n={n}, d={d}")
        return cls(q=q, n=n, d=d)

    @property
    def space_size(self) -> int:
        """Number of words in the ambient space, q^n."""
        return self.q**self.n

    def __str__(self) -> str:
        return f"(q={self.q}, n={self.n}, d={self.d})"


def binomial(m: int, j: int) -> int:
    """C(m, j), zero when j > m."""
    if m < 0 or j < 0:
        raise BoundParameterError(f"binomial needs non-negative arguments, got ({m}, {j})")
    return comb(m, j)


@lru_cache(maxsize=None)
def _ball_size(radius: int, m: int, q: int) -> int:
    return sum(comb(m, j) * (q - 1) ** j for j in range(radius + 1))


def ball_size(radius: int, m: int, q: int) -> int:
    """
    Number of q-ary words of length m within Hamming distance `radius` of zero.

    A radius beyond m is clamped to m, so the result is then q^m.
    """
    if radius < 0 or m < 0:
        raise BoundParameterError(f"ball_size needs radius, m >= 0, got ({radius}, {m})")
    if q < 2:
        raise BoundParameterError(f"alphabet size must be >= 2, got {q}")
    return _ball_size(min(radius, m), m, q)


def floor_log_q(x: int, q: int) -> int:
    """Largest s with q^s <= x."""
    if x < 1:
        raise BoundParameterError(f"floor_log_q needs x >= 1, got {x}")
    if q < 2:
        raise BoundParameterError(f"alphabet size must be >= 2, got {q}")
    s = 0
    power = q
    while power <= x:
        power *= q
        s += 1
    return s


def ball_ratio(numerator_radius: int, denominator_radius: int, m: int, q: int) -> Ratio:
    """Exact ratio |B(numerator_radius, m)| / |B(denominator_radius, m)|."""
    return Fraction(
        ball_size(numerator_radius, m, q),
        ball_size(denominator_radius, m, q),
    )


def floor_ball_ratio(numerator_radius: int, denominator_radius: int, m: int, q: int) -> int:
    """Floor-division form of ball_ratio."""
    return ball_size(numerator_radius, m, q) // ball_size(denominator_radius, m, q)
