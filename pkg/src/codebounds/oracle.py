
"""
A_q(n,d) oracle used inside the puncturing bounds.

The oracle computes the best of the Hamming, Singleton, Johnson and
Elias bounds, with Plotkin taken whenever it applies and is no worse,
and serves a known-values entry instead where one is loaded and is no
larger. Table entries are exact values or published upper bounds.
"""

from __future__ import annotations

import csv
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from codebounds.bounds.base import AqEstimate, BoundSource
from codebounds.bounds.classical import (
    elias_bassalygo_bound,
    hamming_bound,
    johnson_bound,
    plotkin_bound,
    singleton_bound,
)
from codebounds.combinatorics import CodeParams
from codebounds.logging import get_logger

logger = get_logger(__name__)

KNOWN_VALUES_HEADER = ("q", "n", "d", "A")

Key = tuple[int, int, int]


class KnownValuesError(ValueError):
    """Raised when a known-values file cannot be parsed."""

    def __init__(self, path: Path | str, row: int, message: str):
        self.path = str(path)
        self.row = row
        super().__init__(f"{path}, row {row}: {message}")


class KnownValuesTable(BaseModel):
    """
    Known A_q(n,d) values or upper bounds keyed by (q, n, d).

    Frozen after construction; the oracle only ever reads it.
    """

    model_config = ConfigDict(frozen=True)

    entries: dict[Key, int] = Field(default_factory=dict)
    provenance: dict[Key, str] = Field(default_factory=dict)
    source_path: str | None = None

    def get(self, params: CodeParams) -> int | None:
        return self.entries.get((params.q, params.n, params.d))

    def source_of(self, params: CodeParams) -> str | None:
        return self.provenance.get((params.q, params.n, params.d))

    def __contains__(self, params: object) -> bool:
        if not isinstance(params, CodeParams):
            return False
        return (params.q, params.n, params.d) in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def _parse_row(path: Path, row_number: int, row: list[str]) -> tuple[Key, int, str]:
    if len(row) not in (4, 5):
        raise KnownValuesError(path, row_number, f"expected 4 or 5 fields, got {len(row)}")
    try:
        q, n, d, value = (int(field.strip()) for field in row[:4])
    except ValueError as e:
        raise KnownValuesError(path, row_number, f"non-integer field: {e}") from e
    try:
        params = CodeParams(q=q, n=n, d=d)
    except ValidationError as e:
        raise KnownValuesError(path, row_number, f"invalid parameters q={q}, n={n}, d={d}") from e
    if not 1 <= value <= params.space_size:
        raise KnownValuesError(
            path, row_number, f"value {value} outside [1, q^n] for {params}"
        )
    note = row[4].strip() if len(row) == 5 else ""
    return (q, n, d), value, note


def load_known_values(path: Path | str) -> KnownValuesTable:
    """
    Parse a known-values CSV.

    The format is a `q,n,d,A[,source]` header followed by one entry per
    row; blank lines and `#` comments are skipped. An empty file gives an
    empty table.

    Raises:
        FileNotFoundError: If the file does not exist
        KnownValuesError: On a malformed or duplicate row
    """
    path = Path(path)
    entries: dict[Key, int] = {}
    provenance: dict[Key, str] = {}
    header_seen = False

    with path.open(encoding="utf-8", newline="") as handle:
        for row_number, row in enumerate(csv.reader(handle), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if not header_seen:
                names = tuple(field.strip() for field in row)
                if names[:4] != KNOWN_VALUES_HEADER:
                    raise KnownValuesError(
                        path, row_number, f"expected header q,n,d,A[,source], got {','.join(row)}"
                    )
                header_seen = True
                continue
            key, value, note = _parse_row(path, row_number, row)
            if key in entries:
                raise KnownValuesError(path, row_number, f"duplicate entry for {key}")
            entries[key] = value
            provenance[key] = note

    logger.debug("known_values_loaded", path=str(path), entries=len(entries))
    return KnownValuesTable(entries=entries, provenance=provenance, source_path=str(path))


def load_known_values_or_empty(path: Path | str | None) -> KnownValuesTable:
    """
    Load a table, falling back to an empty one when the file is missing.

    Raises:
        KnownValuesError: On a malformed file; only absence is forgiven
    """
    if path is None:
        return KnownValuesTable()
    try:
        return load_known_values(path)
    except FileNotFoundError:
        logger.warning("known_values_missing", path=str(path))
        return KnownValuesTable()


def aq_upper(params: CodeParams, table: KnownValuesTable | None = None) -> AqEstimate:
    """
    Upper estimate of A_q(n,d).

    d = 1 gives q^n and d = 2 gives q^(n-1); beyond that the minimum of
    Hamming, Singleton, Johnson and Elias is taken, and Plotkin replaces
    it when applicable and no larger. A table entry wins when it is no
    larger than that estimate. Exact entries always are; open cells listed
    with a published upper bound win only where that bound is tighter.
    """
    computed = _computed_upper(params)
    if table is not None:
        known = table.get(params)
        if known is not None and known <= computed.value:
            return AqEstimate(value=known, source=BoundSource.KNOWN)
    return computed


def _computed_upper(params: CodeParams) -> AqEstimate:
    q, n, d = params.q, params.n, params.d
    if d == 1:
        return AqEstimate(value=q**n, source=BoundSource.TRIVIAL)
    if d == 2:
        return AqEstimate(value=q ** (n - 1), source=BoundSource.TRIVIAL)

    candidates = [
        (hamming_bound(params), BoundSource.HAMMING),
        (singleton_bound(params), BoundSource.SINGLETON),
        (johnson_bound(params), BoundSource.JOHNSON),
        (elias_bassalygo_bound(params), BoundSource.ELIAS),
    ]
    value, source = min(candidates, key=lambda item: item[0])

    plotkin = plotkin_bound(params)
    if plotkin is not None and plotkin <= value:
        return AqEstimate(value=plotkin, source=BoundSource.PLOTKIN, plotkin_used=True)
    return AqEstimate(value=value, source=source)


class AqOracle:
    """
    Memoising A_q oracle over a known-values table.

    Each worker process builds its own instance; the memo is a plain dict
    and is only written by the owning process.
    """

    def __init__(self, table: KnownValuesTable | None = None):
        self.table = table if table is not None else KnownValuesTable()
        self._cache: dict[Key, AqEstimate] = {}

    def estimate(self, params: CodeParams) -> AqEstimate:
        key = (params.q, params.n, params.d)
        cached = self._cache.get(key)
        if cached is None:
            cached = aq_upper(params, self.table)
            self._cache[key] = cached
        return cached

    def __call__(self, q: int, n: int, d: int) -> int:
        return self.estimate(CodeParams(q=q, n=n, d=d)).value

    @property
    def cache_size(self) -> int:
        return len(self._cache)
