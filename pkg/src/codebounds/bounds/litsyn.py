"""
Puncturing bounds: the restricted-weight bound, the Litsyn-Laihonen
bound, Bound A and the Bound B dimension search.

All of them consult an A_q oracle for the punctured (n-t, d-2r) code and
therefore take one as an argument. The oracle is any AqSource.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor

from pydantic import BaseModel, ConfigDict, Field

from codebounds.bounds.base import AqSource, BoundSource
from codebounds.combinatorics import (
    BoundParameterError,
    CodeParams,
    Ratio,
    ball_ratio,
    ball_size,
    floor_ball_ratio,
)
from codebounds.config import DeltaMode
from codebounds.logging import get_logger

logger = get_logger(__name__)


class PuncturingParams(BaseModel):
    """Number of punctured coordinates t and inner radius r."""

    model_config = ConfigDict(frozen=True)

    t: int = Field(..., ge=0, description="Punctured coordinate count")
    r: int = Field(..., ge=0, description="Inner radius")

    def check(self, params: CodeParams) -> None:
        """Raise BoundParameterError unless (t, r) is admissible for params."""
        n, d = params.n, params.d
        problems = []
        if self.t > n - d:
            problems.append(f"t={self.t} exceeds n-d={n - d}")
        if d - 2 * self.r > n - self.t:
            problems.append(f"d-2r={d - 2 * self.r} exceeds n-t={n - self.t}")
        if self.r > self.t:
            problems.append(f"r={self.r} exceeds t={self.t}")
        if 2 * self.r >= d:
            # d-2r = 0 leaves no inner distance
            problems.append(f"2r={2 * self.r} leaves no inner distance for d={d}")
        if problems:
            detail = "; ".join(problems)
            raise BoundParameterError(f"inadmissible puncturing for {params}: {detail}")

    def inner(self, params: CodeParams) -> CodeParams:
        """Parameters of the punctured code, (n-t, d-2r)."""
        return CodeParams(q=params.q, n=params.n - self.t, d=params.d - 2 * self.r)


def restricted_code_bound(params: CodeParams, epsilon: int, aq: AqSource) -> int:
    """
    Upper bound on an (n,d) code whose words all have weight >= d + epsilon.

    floor(A_q(n,d) - |B(epsilon,n)| / |B(d-1,n)|), exact subtraction.
    """
    q, n, d = params.q, params.n, params.d
    if epsilon < 1:
        raise BoundParameterError(f"epsilon must be >= 1, got {epsilon}")
    if d + epsilon > n:
        raise BoundParameterError(f"d + epsilon = {d + epsilon} exceeds n = {n}")
    value = Fraction(aq.estimate(params).value) - ball_ratio(epsilon, d - 1, n, q)
    return max(0, floor(value))


def litsyn_laihonen(params: CodeParams, pp: PuncturingParams, aq: AqSource) -> int:
    """floor(q^t A_q(n-t, d-2r) / |B(r,t)|)."""
    pp.check(params)
    q = params.q
    inner = aq.estimate(pp.inner(params)).value
    return (q**pp.t * inner) // ball_size(pp.r, pp.t, q)


def delta_term(r: int, inner_d: int, m: int, q: int, mode: DeltaMode) -> int | Ratio:
    """|B(r,m)| / |B(inner_d - 1, m)| under the requested evaluation mode."""
    if mode == DeltaMode.EXACT:
        return ball_ratio(r, inner_d - 1, m, q)
    return floor_ball_ratio(r, inner_d - 1, m, q)


def bound_a(
    params: CodeParams,
    pp: PuncturingParams,
    aq: AqSource,
    delta_mode: DeltaMode = DeltaMode.FLOOR,
) -> int:
    """
    Bound A for systematic-embedding codes.

    floor((q^t / |B(r,t)|) (A_q(n-t, d-2r) - delta + 1)). The bound only
    holds when t does not exceed floor(log_q |C|); the caller owns that
    hypothesis. A negative inner term clamps the result to 0.
    """
    pp.check(params)
    q = params.q
    inner_params = pp.inner(params)
    inner = aq.estimate(inner_params).value
    delta = delta_term(pp.r, inner_params.d, inner_params.n, q, delta_mode)
    slack = inner - delta + 1
    if slack < 0:
        logger.warning(
            "bound_a_negative_term",
            params=str(params),
            t=pp.t,
            r=pp.r,
            inner=inner,
            delta=str(delta),
        )
        return 0
    return int(Fraction(q**pp.t, ball_size(pp.r, pp.t, q)) * slack)


class ScanVariant(str, Enum):
    """Inequality tested at each (k, r) of the dimension scan."""

    BOUND_B = "boundB"  # |B(r,k)| <= A(n-k, d-2r) - delta + 1
    WEAK = "weakBoundB"  # |B(r,k)| <= A(n-k, d-2r) + 1
    LITSYN_LAIHONEN = "litsynLaihonen"  # |B(r,k)| <= A(n-k, d-2r)


@dataclass(frozen=True)
class BoundBCheck:
    """One (k, r) inequality of the dimension scan."""

    k: int
    r: int
    lhs: int
    rhs: int | Ratio
    delta: int | Ratio
    inner_source: BoundSource
    plotkin_used: bool

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass
class BoundBWitness:
    """
    Audit trail of a dimension scan.

    Attributes:
        k: Largest admissible dimension, 0 when none is
        checks: Every admissible-r check at k, all holding
        rejected: First failing check at k+1, None when k is the ceiling
        monotone: Whether every k below the result also passed; None when unchecked
    """

    k: int
    variant: ScanVariant = ScanVariant.BOUND_B
    delta_mode: DeltaMode = DeltaMode.FLOOR
    checks: list[BoundBCheck] = field(default_factory=list)
    rejected: BoundBCheck | None = None
    monotone: bool | None = None

    @property
    def binding_checks(self) -> list[BoundBCheck]:
        """Checks that decided the result: the rejection, else those at k."""
        if self.rejected is not None:
            return [self.rejected]
        return self.checks

    @property
    def delta_zero(self) -> bool:
        """Whether every binding check had a zero correction term."""
        return all(check.delta == 0 for check in self.binding_checks)

    @property
    def plotkin_used_inner(self) -> bool:
        """Whether a binding check's inner A_q value came from Plotkin."""
        return any(check.plotkin_used for check in self.binding_checks)


def _check_dimension(
    params: CodeParams,
    k: int,
    aq: AqSource,
    variant: ScanVariant,
    delta_mode: DeltaMode,
) -> tuple[list[BoundBCheck], BoundBCheck | None]:
    """Run the r-checks at dimension k; stop at the first violation."""
    q, n, d = params.q, params.n, params.d
    m = n - k
    checks: list[BoundBCheck] = []
    for r in range(min((d - 1) // 2, k) + 1):
        inner_d = d - 2 * r
        if inner_d > m:
            continue
        estimate = aq.estimate(CodeParams(q=q, n=m, d=inner_d))
        if variant == ScanVariant.BOUND_B:
            delta: int | Ratio = delta_term(r, inner_d, m, q, delta_mode)
            rhs: int | Ratio = estimate.value - delta + 1
        elif variant == ScanVariant.WEAK:
            delta = 0
            rhs = estimate.value + 1
        else:
            delta = 0
            rhs = estimate.value
        check = BoundBCheck(
            k=k,
            r=r,
            lhs=ball_size(r, k, q),
            rhs=rhs,
            delta=delta,
            inner_source=estimate.source,
            plotkin_used=estimate.plotkin_used,
        )
        if not check.holds:
            return checks, check
        checks.append(check)
    return checks, None


def scan_dimension(
    params: CodeParams,
    aq: AqSource,
    variant: ScanVariant = ScanVariant.BOUND_B,
    delta_mode: DeltaMode = DeltaMode.FLOOR,
    verify_monotone: bool = False,
) -> BoundBWitness:
    """
    Largest k in [1, n-d+1] whose every admissible r-check holds.

    k is scanned downward from n-d+1 and the first admissible value is
    returned. With verify_monotone every smaller k is checked too and a
    failure is logged, not raised.
    """
    n, d = params.n, params.d
    if d < 2:
        raise BoundParameterError(f"dimension scan needs d >= 2, got {params}")
    top = n - d + 1
    if n <= d:
        return BoundBWitness(k=top, variant=variant, delta_mode=delta_mode)

    rejected: BoundBCheck | None = None
    witness: BoundBWitness | None = None
    for k in range(top, 0, -1):
        checks, violation = _check_dimension(params, k, aq, variant, delta_mode)
        if violation is None:
            witness = BoundBWitness(
                k=k,
                variant=variant,
                delta_mode=delta_mode,
                checks=checks,
                rejected=rejected,
            )
            break
        rejected = violation

    if witness is None:
        logger.warning("dimension_scan_empty", params=str(params), variant=variant.value)
        return BoundBWitness(k=0, variant=variant, delta_mode=delta_mode, rejected=rejected)

    if verify_monotone:
        failures = [
            k
            for k in range(witness.k - 1, 0, -1)
            if _check_dimension(params, k, aq, variant, delta_mode)[1] is not None
        ]
        witness.monotone = not failures
        if failures:
            logger.warning(
                "dimension_scan_non_monotone",
                params=str(params),
                variant=variant.value,
                k=witness.k,
                failing=failures,
            )
    return witness


def bound_b_max_k(
    params: CodeParams,
    aq: AqSource,
    delta_mode: DeltaMode = DeltaMode.FLOOR,
    verify_monotone: bool = False,
) -> BoundBWitness:
    """Bound B for systematic codes, with the full per-r audit trail."""
    return scan_dimension(params, aq, ScanVariant.BOUND_B, delta_mode, verify_monotone)


def weak_bound_b_max_k(params: CodeParams, aq: AqSource) -> int:
    """Bound B with the correction term dropped."""
    return scan_dimension(params, aq, ScanVariant.WEAK).k


def litsyn_laihonen_max_k(params: CodeParams, aq: AqSource) -> int:
    """Dimension form of the Litsyn-Laihonen bound with t = k."""
    return scan_dimension(params, aq, ScanVariant.LITSYN_LAIHONEN).k


def d3_closed_form(q: int, n: int) -> int:
    """Largest k with q^(n-k) >= (q-1)n + 1, Bound B at d = 3."""
    if n < 3 or q < 2:
        raise BoundParameterError(f"d3_closed_form needs q >= 2, n >= 3, got q={q}, n={n}")
    target = (q - 1) * n + 1
    redundancy = 0
    power = 1
    while power < target:
        power *= q
        redundancy += 1
    return n - redundancy
