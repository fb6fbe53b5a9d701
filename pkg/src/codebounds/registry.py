"""
Registry of named bounds.

Maps the bound names used on the command line and in sweep output to
BaseBound implementations. Bounds that consult A_q hold the oracle they
were built with.
"""

from __future__ import annotations

from typing import Any

from codebounds.bounds.base import AqSource, BaseBound, BoundSource, BoundValue
from codebounds.bounds.classical import (
    elias_bassalygo_bound,
    griesmer_max_k,
    hamming_bound,
    johnson_bound,
    plotkin_bound,
    singleton_bound,
)
from codebounds.bounds.litsyn import (
    BoundBWitness,
    PuncturingParams,
    bound_a,
    bound_b_max_k,
    litsyn_laihonen,
    restricted_code_bound,
    weak_bound_b_max_k,
)
from codebounds.combinatorics import BoundParameterError, CodeParams
from codebounds.config import DeltaMode


def _require(kwargs: dict[str, Any], *names: str) -> list[int]:
    missing = [name for name in names if kwargs.get(name) is None]
    if missing:
        raise BoundParameterError(f"missing option(s): {', '.join(missing)}")
    return [int(kwargs[name]) for name in names]


class SingletonBound(BaseBound):
    name = "singleton"
    description = "q^(n-d+1)"
    source = BoundSource.SINGLETON

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_size(params, singleton_bound(params), self.source)


class HammingBound(BaseBound):
    name = "hamming"
    description = "Sphere packing bound"
    source = BoundSource.HAMMING

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_size(params, hamming_bound(params), self.source)


class PlotkinBound(BaseBound):
    name = "plotkin"
    description = "Plotkin bound, applicable when d/n > 1 - 1/q"
    source = BoundSource.PLOTKIN

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        value = plotkin_bound(params)
        if value is None:
            return None
        return BoundValue.from_size(params, value, self.source)


class GriesmerBound(BaseBound):
    name = "griesmer"
    description = "Griesmer bound on the dimension of linear codes"
    source = BoundSource.GRIESMER

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_dimension(params, griesmer_max_k(params), self.source)


class JohnsonBound(BaseBound):
    name = "johnson"
    description = "q-ary Johnson bound"
    source = BoundSource.JOHNSON

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_size(params, johnson_bound(params), self.source)


class EliasBound(BaseBound):
    name = "elias"
    description = "Elias-Bassalygo bound"
    source = BoundSource.ELIAS

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_size(params, elias_bassalygo_bound(params), self.source)


class OracleBound(BaseBound):
    """Base for bounds that consult an A_q oracle."""

    def __init__(self, aq: AqSource, delta_mode: DeltaMode = DeltaMode.FLOOR):
        self.aq = aq
        self.delta_mode = delta_mode


class BoundB(OracleBound):
    name = "boundB"
    description = "Bound B on the dimension of systematic codes"
    source = BoundSource.BOUND_B

    def witness(self, params: CodeParams) -> BoundBWitness:
        return bound_b_max_k(params, self.aq, self.delta_mode)

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_dimension(params, self.witness(params).k, self.source)


class WeakBoundB(OracleBound):
    name = "weakBoundB"
    description = "Bound B without the ball-ratio correction"
    source = BoundSource.WEAK_BOUND_B

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        return BoundValue.from_dimension(params, weak_bound_b_max_k(params, self.aq), self.source)


class BoundA(OracleBound):
    name = "boundA"
    description = "Bound A for systematic-embedding codes, puncturing t coordinates"
    source = BoundSource.BOUND_A
    options = ("t", "r")

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        t, r = _require(kwargs, "t", "r")
        value = bound_a(params, PuncturingParams(t=t, r=r), self.aq, self.delta_mode)
        return BoundValue.from_size(params, value, self.source)


class LitsynLaihonenBound(OracleBound):
    name = "litsynLaihonen"
    description = "Litsyn-Laihonen puncturing bound"
    source = BoundSource.LITSYN_LAIHONEN
    options = ("t", "r")

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        t, r = _require(kwargs, "t", "r")
        value = litsyn_laihonen(params, PuncturingParams(t=t, r=r), self.aq)
        return BoundValue.from_size(params, value, self.source)


class RestrictedBound(OracleBound):
    name = "restricted"
    description = "Codes whose nonzero words all have weight >= d + epsilon"
    source = BoundSource.RESTRICTED
    options = ("epsilon",)

    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        (epsilon,) = _require(kwargs, "epsilon")
        value = restricted_code_bound(params, epsilon, self.aq)
        return BoundValue.from_size(params, value, self.source)


# Column order of sweep output and of winner lists
COMPARISON_ORDER: tuple[BoundSource, ...] = (
    BoundSource.BOUND_B,
    BoundSource.JOHNSON,
    BoundSource.HAMMING,
    BoundSource.GRIESMER,
    BoundSource.ELIAS,
    BoundSource.SINGLETON,
    BoundSource.PLOTKIN,
)


def build_registry(
    aq: AqSource, delta_mode: DeltaMode = DeltaMode.FLOOR
) -> dict[str, BaseBound]:
    """All registered bounds keyed by name."""
    bounds: list[BaseBound] = [
        BoundB(aq, delta_mode),
        JohnsonBound(),
        HammingBound(),
        GriesmerBound(),
        EliasBound(),
        SingletonBound(),
        PlotkinBound(),
        WeakBoundB(aq, delta_mode),
        BoundA(aq, delta_mode),
        LitsynLaihonenBound(aq, delta_mode),
        RestrictedBound(aq, delta_mode),
    ]
    return {bound.name: bound for bound in bounds}


def comparison_bounds(registry: dict[str, BaseBound]) -> dict[BoundSource, BaseBound]:
    """The bounds that take part in sweeps, keyed by source."""
    by_source = {bound.source: bound for bound in registry.values()}
    return {source: by_source[source] for source in COMPARISON_ORDER}
