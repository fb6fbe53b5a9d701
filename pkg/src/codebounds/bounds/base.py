"""
Base interfaces and types for the bound evaluation system.

Defines the source enum every bound reports, the value and estimate
result types, the A_q oracle protocol and the BaseBound interface that
the registry exposes to the harness and the CLI.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Protocol, runtime_checkable

from codebounds.combinatorics import CodeParams, floor_log_q


class BoundSource(str, Enum):
    """Where a size bound came from."""

    SINGLETON = "singleton"
    HAMMING = "hamming"
    PLOTKIN = "plotkin"
    GRIESMER = "griesmer"
    JOHNSON = "johnson"
    ELIAS = "elias"
    KNOWN = "known"  # Entry from the known-values table
    TRIVIAL = "trivial"  # d = 1 or d = 2 shortcut
    BOUND_A = "boundA"
    BOUND_B = "boundB"
    WEAK_BOUND_B = "weakBoundB"
    LITSYN_LAIHONEN = "litsynLaihonen"
    RESTRICTED = "restricted"


@dataclass(frozen=True)
class BoundValue:
    """
    An upper bound on the size of a code, with its dimension form.

    size_bound is at least 1 for every bound except Bound A, which is
    clamped at 0 when its correction term exceeds the rest: no
    systematic-embedding code meets the hypothesis then.

    Attributes:
        size_bound: Upper bound on |C|; 0 only from Bound A
        source: Bound that produced it
        k: floor(log_q(size_bound)); None when size_bound is 0
    """

    size_bound: int
    source: BoundSource
    k: int | None

    @classmethod
    def from_size(cls, params: CodeParams, size_bound: int, source: BoundSource) -> BoundValue:
        """Wrap a size bound, deriving its k-form."""
        k = floor_log_q(size_bound, params.q) if size_bound >= 1 else None
        return cls(size_bound=size_bound, source=source, k=k)

    @classmethod
    def from_dimension(cls, params: CodeParams, k: int, source: BoundSource) -> BoundValue:
        """Wrap a dimension bound; the size form is q^k."""
        return cls(size_bound=params.q**k, source=source, k=k)

    def describe(self) -> str:
        """One-line text form used by the CLI."""
        if self.k is None:
            return f"{self.source.value}: {self.size_bound} (no code meets the hypothesis)"
        return f"{self.source.value}: {self.size_bound}, k <= {self.k}"


@dataclass(frozen=True)
class AqEstimate:
    """The A_q(n,d) value handed to Bound A / Bound B."""

    value: int
    source: BoundSource
    plotkin_used: bool = False


@runtime_checkable
class AqSource(Protocol):
    """
    Protocol for A_q(n,d) oracles.

    Implementations must be safe to read concurrently; the bound modules
    treat them as pure functions of the parameters.
    """

    def estimate(self, params: CodeParams) -> AqEstimate:
        """Upper estimate of A_q(n,d) for the given parameters."""
        ...


class BaseBound(ABC):
    """
    Abstract base class for all registered bounds.

    A bound maps validated code parameters, plus optional bound-specific
    options, to a BoundValue, or None where it does not apply.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique identifier for the bound, as used on the command line."""
        ...

    @property
    @abstractmethod
    def description(self) -> str:
        """Description of what the bound computes."""
        ...

    @property
    @abstractmethod
    def source(self) -> BoundSource:
        """Source tag of the values this bound produces."""
        ...

    @property
    def options(self) -> tuple[str, ...]:
        """
        Names of extra keyword options the bound requires.

        Override in subclasses that need more than (q, n, d).
        """
        return ()

    @abstractmethod
    def evaluate(self, params: CodeParams, **kwargs: Any) -> BoundValue | None:
        """
        Evaluate the bound.

        Args:
            params: Code parameters
            **kwargs: Bound-specific options listed in `options`

        Returns:
            BoundValue, or None when the bound is inapplicable
        """
        ...
