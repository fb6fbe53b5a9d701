"""
codebounds: upper bounds on the size of q-ary codes.

This package evaluates the classical upper bounds on A_q(n,d) together
with puncturing bounds for non-linear, systematic-embedding and
systematic codes, and compares them over parameter grids.

Components:
- Exact combinatorial primitives (ball sizes, floor logarithms)
- Classical bounds (Singleton, Hamming, Plotkin, Griesmer, Johnson, Elias)
- Puncturing bounds (Litsyn-Laihonen, Bound A, Bound B)
- An A_q(n,d) oracle backed by a table of known values and upper bounds
- Exhaustive searches for validation on small parameters
- A sweep harness with win/draw statistics and a CLI
"""

__version__ = "0.1.0"

from codebounds.combinatorics import BoundParameterError, CodeParams
from codebounds.config import DeltaMode, Settings
from codebounds.harness import SweepConfig, compute_stats, run_sweep
from codebounds.oracle import AqOracle, aq_upper, load_known_values

__all__ = [
    "AqOracle",
    "BoundParameterError",
    "CodeParams",
    "DeltaMode",
    "Settings",
    "SweepConfig",
    "aq_upper",
    "compute_stats",
    "load_known_values",
    "run_sweep",
    "__version__",
]
