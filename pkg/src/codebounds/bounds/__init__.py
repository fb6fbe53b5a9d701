"""
Bounds package for codebounds.

Contains the classical bounds, the constant-weight estimates they rely
on and the puncturing bounds that consult an A_q oracle.
"""

from codebounds.bounds.base import (
    AqEstimate,
    AqSource,
    BaseBound,
    BoundSource,
    BoundValue,
)
from codebounds.bounds.classical import (
    elias_bassalygo_bound,
    griesmer_max_k,
    hamming_bound,
    johnson_bound,
    plotkin_bound,
    singleton_bound,
)
from codebounds.bounds.constant_weight import constant_weight_upper
from codebounds.bounds.litsyn import (
    BoundBCheck,
    BoundBWitness,
    PuncturingParams,
    ScanVariant,
    bound_a,
    bound_b_max_k,
    d3_closed_form,
    litsyn_laihonen,
    litsyn_laihonen_max_k,
    restricted_code_bound,
    weak_bound_b_max_k,
)

__all__ = [
    "AqEstimate",
    "AqSource",
    "BaseBound",
    "BoundSource",
    "BoundValue",
    "BoundBCheck",
    "BoundBWitness",
    "PuncturingParams",
    "ScanVariant",
    "bound_a",
    "bound_b_max_k",
    "constant_weight_upper",
    "d3_closed_form",
    "elias_bassalygo_bound",
    "griesmer_max_k",
    "hamming_bound",
    "johnson_bound",
    "litsyn_laihonen",
    "litsyn_laihonen_max_k",
    "plotkin_bound",
    "restricted_code_bound",
    "singleton_bound",
    "weak_bound_b_max_k",
]
