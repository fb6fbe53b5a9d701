"""
Sweep harness: compares the bounds over a (q, n, d) grid.

Each cell records the k-form of every enabled bound, the smallest one
and the set of bounds attaining it. Cells are evaluated in chunks of one
(q, n) pair, optionally across a process pool, and merged in (q, n, d)
order so output never depends on the worker count.
"""

from __future__ import annotations

import asyncio
import concurrent.futures
import csv
import io
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from pydantic import BaseModel, Field, field_validator, model_validator

from codebounds.bounds.base import BoundSource
from codebounds.combinatorics import BoundParameterError, CodeParams
from codebounds.config import DeltaMode, OutputFormat, Settings, get_settings
from codebounds.logging import TraceContext, get_logger
from codebounds.oracle import AqOracle, load_known_values_or_empty
from codebounds.registry import COMPARISON_ORDER, BoundB, build_registry, comparison_bounds

logger = get_logger(__name__)

# Alphabet sizes of the published comparison
PUBLISHED_Q_VALUES: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29)

DEFAULT_ENABLED: tuple[BoundSource, ...] = (
    BoundSource.BOUND_B,
    BoundSource.JOHNSON,
    BoundSource.HAMMING,
    BoundSource.GRIESMER,
    BoundSource.ELIAS,
    BoundSource.SINGLETON,
)

ROW_COLUMNS: tuple[str, ...] = (
    "q",
    "n",
    "d",
    *(f"{source.value}_k" for source in COMPARISON_ORDER),
    "best_k",
    "winners",
    "delta_zero",
    "plotkin_used_inner",
)

# First distance of every sweep; d runs up to n-1
D_MIN = 3


class SweepConfig(BaseModel):
    """Configuration of one sweep run."""

    q_list: list[int] = Field(default_factory=lambda: list(PUBLISHED_Q_VALUES))
    n_min: int = Field(default=3, ge=3)
    n_max: int = Field(default=100, ge=3)
    enabled_bounds: list[BoundSource] = Field(default_factory=lambda: list(DEFAULT_ENABLED))
    delta_mode: DeltaMode = DeltaMode.FLOOR
    known_values_path: Path | None = None
    output_format: OutputFormat = OutputFormat.CSV
    workers: int = Field(default=1, ge=1)

    @field_validator("q_list")
    @classmethod
    def _check_q(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("q_list must not be empty")
        if any(q < 2 for q in value):
            raise ValueError(f"alphabet sizes must be >= 2, got {value}")
        return sorted(set(value))

    @field_validator("enabled_bounds")
    @classmethod
    def _check_bounds(cls, value: list[BoundSource]) -> list[BoundSource]:
        unknown = [source for source in value if source not in COMPARISON_ORDER]
        if unknown:
            raise ValueError(f"bounds not available in sweeps: {unknown}")
        if not value:
            raise ValueError("enabled_bounds must not be empty")
        return [source for source in COMPARISON_ORDER if source in value]

    @model_validator(mode="after")
    def _check_range(self) -> SweepConfig:
        if self.n_min > self.n_max:
            raise ValueError(f"n_min={self.n_min} exceeds n_max={self.n_max}")
        return self

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: Any) -> SweepConfig:
        """Defaults taken from the environment, then explicit overrides."""
        settings = settings or get_settings()
        values: dict[str, Any] = {
            "delta_mode": settings.delta_mode,
            "known_values_path": settings.resolved_known_values_path(),
            "output_format": settings.output_format,
            "workers": settings.workers,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def cells(self) -> list[tuple[int, int]]:
        """(q, n) chunks in output order."""
        return [(q, n) for q in self.q_list for n in range(self.n_min, self.n_max + 1)]


@dataclass
class ComparisonRow:
    """
    One sweep cell.

    Attributes:
        k_values: k-form per enabled bound, None where it does not apply
        best_k: Smallest k-form, None when no enabled bound applies
        winners: Bounds whose k equals best_k, in column order
        delta_zero: Whether the binding Bound B checks had a zero
            correction term; None when Bound B is disabled
        plotkin_used_inner: Whether a binding Bound B check used Plotkin
            for its inner A_q value; None when Bound B is disabled
    """

    q: int
    n: int
    d: int
    k_values: dict[BoundSource, int | None]
    best_k: int | None
    winners: tuple[BoundSource, ...]
    delta_zero: bool | None = None
    plotkin_used_inner: bool | None = None

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, self.n, self.d)

    def to_record(self) -> dict[str, Any]:
        """Row in the fixed output schema; absent values are None."""
        record: dict[str, Any] = {"q": self.q, "n": self.n, "d": self.d}
        for source in COMPARISON_ORDER:
            record[f"{source.value}_k"] = self.k_values.get(source)
        record["best_k"] = self.best_k
        record["winners"] = [source.value for source in self.winners]
        record["delta_zero"] = self.delta_zero
        record["plotkin_used_inner"] = self.plotkin_used_inner
        return record


def evaluate_cell(
    params: CodeParams,
    enabled: Iterable[BoundSource],
    oracle: AqOracle,
    delta_mode: DeltaMode = DeltaMode.FLOOR,
) -> ComparisonRow:
    """Evaluate every enabled bound on one (q, n, d) cell."""
    bounds = comparison_bounds(build_registry(oracle, delta_mode))
    k_values: dict[BoundSource, int | None] = {}
    delta_zero: bool | None = None
    plotkin_used_inner: bool | None = None

    wanted = set(enabled)
    for source in (source for source in COMPARISON_ORDER if source in wanted):
        bound = bounds[source]
        if isinstance(bound, BoundB):
            witness = bound.witness(params)
            k_values[source] = witness.k
            delta_zero = witness.delta_zero
            plotkin_used_inner = witness.plotkin_used_inner
            continue
        value = bound.evaluate(params)
        k_values[source] = value.k if value is not None else None

    present = [k for k in k_values.values() if k is not None]
    best_k = min(present) if present else None
    winners = tuple(
        source for source, k in k_values.items() if k is not None and k == best_k
    )
    if best_k is None:
        logger.debug("cell_without_bound", params=str(params))
    return ComparisonRow(
        q=params.q,
        n=params.n,
        d=params.d,
        k_values=k_values,
        best_k=best_k,
        winners=winners,
        delta_zero=delta_zero,
        plotkin_used_inner=plotkin_used_inner,
    )


# One oracle per worker process and known-values file
_ORACLES: dict[str | None, AqOracle] = {}


def _oracle_for(path: Path | None) -> AqOracle:
    key = str(path) if path is not None else None
    oracle = _ORACLES.get(key)
    if oracle is None:
        oracle = AqOracle(load_known_values_or_empty(path))
        _ORACLES[key] = oracle
    return oracle


def _evaluate_chunk(cfg: SweepConfig, q: int, n: int) -> list[ComparisonRow]:
    oracle = _oracle_for(cfg.known_values_path)
    return [
        evaluate_cell(CodeParams(q=q, n=n, d=d), cfg.enabled_bounds, oracle, cfg.delta_mode)
        for d in range(D_MIN, n)
    ]


async def run_sweep_async(cfg: SweepConfig) -> list[ComparisonRow]:
    """
    Evaluate every cell of the sweep grid.

    With more than one worker, chunks run in a process pool driven from
    the event loop; rows are merged in (q, n, d) order either way.
    """
    chunks = cfg.cells()
    with TraceContext("run_sweep") as trace:
        trace.log_event(
            "sweep_config",
            data={
                "q_list": cfg.q_list,
                "n_range": [cfg.n_min, cfg.n_max],
                "workers": cfg.workers,
                "delta_mode": cfg.delta_mode.value,
            },
        )
        results: list[list[ComparisonRow]] = []
        if cfg.workers == 1:
            for q, n in chunks:
                results.append(_evaluate_chunk(cfg, q, n))
                trace.log_progress(len(results), len(chunks))
        else:
            loop = asyncio.get_running_loop()
            with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                futures = [
                    loop.run_in_executor(pool, _evaluate_chunk, cfg, q, n) for q, n in chunks
                ]
                # completion order varies; the sort below restores (q, n, d) order
                for finished in asyncio.as_completed(futures):
                    results.append(await finished)
                    trace.log_progress(len(results), len(chunks))

        rows = sorted((row for chunk in results for row in chunk), key=lambda row: row.key)
        trace.log_event("sweep_done", data={"rows": len(rows)})
    return rows


def run_sweep(cfg: SweepConfig) -> list[ComparisonRow]:
    """Synchronous wrapper around run_sweep_async."""
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(run_sweep_async(cfg))
    # Already inside an event loop, run in a separate thread
    with concurrent.futures.ThreadPoolExecutor(max_workers=1) as executor:
        return executor.submit(asyncio.run, run_sweep_async(cfg)).result()


def format_two_decimals(value: Fraction | None) -> str:
    """Two-decimal rendering of a percentage or ratio, half-even rounding."""
    if value is None:
        return ""
    decimal = Decimal(value.numerator) / Decimal(value.denominator)
    return str(decimal.quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))


def _percent(count: int, total: int) -> Fraction | None:
    if total == 0:
        return None
    return Fraction(100 * count, total)


@dataclass
class QStats:
    """Aggregated statistics for one alphabet size."""

    q: int
    cells: int
    best_percentage: dict[BoundSource, Fraction] = field(default_factory=dict)
    bound_b_draws: Fraction | None = None
    bound_b_wins: Fraction | None = None
    delta_zero: Fraction | None = None
    plotkin_usage: Fraction | None = None
    max_win_ratio: Fraction | None = None

    @property
    def plotkin_frontier(self) -> Fraction:
        """d/n above which Plotkin applies, 1 - 1/q."""
        return 1 - Fraction(1, self.q)

    def to_record(self) -> dict[str, str]:
        record = {"q": str(self.q), "cells": str(self.cells)}
        for source in COMPARISON_ORDER:
            if source in self.best_percentage:
                record[f"{source.value}_best"] = format_two_decimals(self.best_percentage[source])
        record["boundB_draws"] = format_two_decimals(self.bound_b_draws)
        record["boundB_wins"] = format_two_decimals(self.bound_b_wins)
        record["delta_zero"] = format_two_decimals(self.delta_zero)
        record["plotkin_usage"] = format_two_decimals(self.plotkin_usage)
        record["max_win_d_over_n"] = (
            format_two_decimals(self.max_win_ratio)
            if self.max_win_ratio is not None
            else ""
        )
        record["plotkin_frontier"] = format_two_decimals(self.plotkin_frontier)
        return record


@dataclass
class StatsSummary:
    """Per-q statistics of a sweep."""

    per_q: dict[int, QStats]
    enabled: tuple[BoundSource, ...]

    def to_records(self) -> list[dict[str, str]]:
        return [self.per_q[q].to_record() for q in sorted(self.per_q)]


def compute_stats(
    rows: list[ComparisonRow], enabled_bounds: Iterable[BoundSource] | None = None
) -> StatsSummary:
    """
    Aggregate sweep rows per alphabet size.

    Best-percentages count every winner of a cell, draws included, so
    they may add up to more than 100. The denominator is the number of
    cells for that q, cells where no bound applies included.

    Args:
        rows: Sweep rows
        enabled_bounds: Bounds to report; defaults to the bounds present in
            the rows' k_values. Rows read back from CSV carry every column,
            so pass the sweep's bounds for those.
    """
    if not rows:
        raise BoundParameterError("compute_stats needs at least one row")

    if enabled_bounds is None:
        present = {source for row in rows for source in row.k_values}
    else:
        present = set(enabled_bounds)
    enabled = tuple(source for source in COMPARISON_ORDER if source in present)
    grouped: dict[int, list[ComparisonRow]] = {}
    for row in rows:
        grouped.setdefault(row.q, []).append(row)

    per_q: dict[int, QStats] = {}
    for q, group in sorted(grouped.items()):
        total = len(group)
        stats = QStats(q=q, cells=total)
        for source in enabled:
            count = sum(1 for row in group if source in row.winners)
            stats.best_percentage[source] = Fraction(100 * count, total)

        if BoundSource.BOUND_B in enabled:
            best = [row for row in group if BoundSource.BOUND_B in row.winners]
            wins = [row for row in best if len(row.winners) == 1]
            stats.bound_b_draws = _percent(len(best) - len(wins), total)
            stats.bound_b_wins = _percent(len(wins), total)
            stats.delta_zero = _percent(sum(1 for row in best if row.delta_zero), len(best))
            stats.plotkin_usage = _percent(
                sum(1 for row in best if row.plotkin_used_inner), len(best)
            )
            if wins:
                stats.max_win_ratio = max(Fraction(row.d, row.n) for row in wins)
        per_q[q] = stats

    logger.info("stats_computed", q_values=list(per_q), rows=len(rows))
    return StatsSummary(per_q=per_q, enabled=enabled)


def _csv_field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "|".join(value)
    return str(value)


def write_rows(rows: list[ComparisonRow], stream: TextIO, fmt: OutputFormat) -> None:
    """Serialize sweep rows in the fixed schema."""
    records = [row.to_record() for row in rows]
    if fmt == OutputFormat.JSON:
        json.dump(records, stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ROW_COLUMNS)
    for record in records:
        writer.writerow([_csv_field(record[column]) for column in ROW_COLUMNS])


def write_stats(summary: StatsSummary, stream: TextIO, fmt: OutputFormat) -> None:
    """Serialize a statistics summary, one record per q."""
    records = summary.to_records()
    if fmt == OutputFormat.JSON:
        json.dump(records, stream, indent=2)
        stream.write("\n")
        return
    columns = list(records[0]) if records else []
    writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)


def rows_to_text(rows: list[ComparisonRow], fmt: OutputFormat) -> str:
    buffer = io.StringIO()
    write_rows(rows, buffer, fmt)
    return buffer.getvalue()


def _parse_optional_int(value: str) -> int | None:
    return int(value) if value != "" else None


def _parse_optional_bool(value: str) -> bool | None:
    if value == "":
        return None
    return value == "true"


def read_rows(path: Path | str) -> list[ComparisonRow]:
    """
    Load rows previously written by write_rows in CSV form.

    Every schema column is kept; empty fields become None, so a disabled
    bound and an inapplicable one read back the same way.
    """
    rows: list[ComparisonRow] = []
    with Path(path).open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != ROW_COLUMNS:
            raise BoundParameterError(f"{path} is not a sweep CSV")
        for record in reader:
            k_values = {
                source: _parse_optional_int(record[f"{source.value}_k"])
                for source in COMPARISON_ORDER
            }
            rows.append(
                ComparisonRow(
                    q=int(record["q"]),
                    n=int(record["n"]),
                    d=int(record["d"]),
                    k_values=k_values,
                    best_k=_parse_optional_int(record["best_k"]),
                    winners=tuple(
                        BoundSource(name) for name in record["winners"].split("|") if name
                    ),
                    delta_zero=_parse_optional_bool(record["delta_zero"]),
                    plotkin_used_inner=_parse_optional_bool(record["plotkin_used_inner"]),
                )
            )
    return rows
