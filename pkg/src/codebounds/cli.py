"""
CLI entry point for codebounds.

Subcommands evaluate a single bound, compare all bounds on one cell, run
exhaustive searches, sweep a grid, summarise a sweep and diff against
the published reference rows.

Exit codes: 0 on success, 2 on invalid parameters or usage, 3 when
`table3 --strict` finds a mismatch.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

from codebounds.bounds.base import BoundSource
from codebounds.combinatorics import CodeParams
from codebounds.config import DeltaMode, OutputFormat, get_settings
from codebounds.harness import (
    DEFAULT_ENABLED,
    PUBLISHED_Q_VALUES,
    SweepConfig,
    compute_stats,
    evaluate_cell,
    read_rows,
    run_sweep_async,
    write_rows,
    write_stats,
)
from codebounds.logging import get_logger
from codebounds.oracle import AqOracle, load_known_values_or_empty
from codebounds.reference import diff_reference_rows, load_reference_rows
from codebounds.registry import COMPARISON_ORDER, build_registry
from codebounds.search import aq_exact_bruteforce, max_systematic_k_bruteforce

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

# Labels printed next to bounds that hold only for a restricted class of codes
CODE_CLASS_NOTES = {
    "boundA": "valid for systematic-embedding codes",
    "boundB": "valid for systematic codes",
    "weakBoundB": "valid for systematic codes",
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--delta-mode",
        choices=[mode.value for mode in DeltaMode],
        default=None,
        help="Evaluation of the ball-ratio term (default: CODEBOUNDS_DELTA_MODE or floor)",
    )
    common.add_argument(
        "--known-values", type=Path, default=None, help="CSV of known A_q(n,d) values or upper bounds"
    )
    common.add_argument(
        "--no-known-values",
        action="store_true",
        help="Ignore every known-values table and use computed bounds only",
    )
    common.add_argument(
        "--format", choices=[fmt.value for fmt in OutputFormat], default=None, dest="fmt"
    )
    common.add_argument("--out", type=Path, default=None, help="Output file (default: stdout)")
    common.add_argument("--workers", type=int, default=None, help="Worker processes for sweeps")
    return common


def _cell_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-q", type=int, required=True, help="Alphabet size")
    parser.add_argument("-n", type=int, required=True, help="Code length")
    parser.add_argument("-d", type=int, required=True, help="Minimum distance")


def _grid_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--q",
        type=int,
        nargs="+",
        default=list(PUBLISHED_Q_VALUES),
        dest="q_list",
        help="Alphabet sizes",
    )
    parser.add_argument("--n-min", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=100)
    parser.add_argument(
        "--bounds",
        nargs="+",
        choices=[source.value for source in COMPARISON_ORDER],
        default=[source.value for source in DEFAULT_ENABLED],
        help="Bounds taking part in the comparison",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="codebounds", description="Upper bounds on the size of q-ary codes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", parents=[common], help="Evaluate one bound")
    bound.add_argument(
        "name", choices=sorted(build_registry(AqOracle()).keys()), help="Bound name"
    )
    _cell_options(bound)
    bound.add_argument("--t", type=int, default=None, help="Punctured coordinates")
    bound.add_argument("--r", type=int, default=None, help="Inner radius")
    bound.add_argument("--epsilon", type=int, default=None, help="Extra weight margin")

    best = sub.add_parser("best", parents=[common], help="Compare all bounds on one cell")
    _cell_options(best)
    best.add_argument("--plotkin", action="store_true", help="Include the Plotkin bound")

    exact = sub.add_parser("exact", parents=[common], help="Exhaustive search on small cells")
    _cell_options(exact)
    exact.add_argument(
        "--systematic",
        action="store_true",
        help="Largest dimension of a systematic code instead of A_q(n,d)",
    )

    sweep = sub.add_parser("sweep", parents=[common], help="Emit comparison rows for a grid")
    _grid_options(sweep)

    stats = sub.add_parser("stats", parents=[common], help="Summarise a sweep")
    _grid_options(stats)
    stats.add_argument("--rows", type=Path, default=None, help="Read rows from a sweep CSV")

    table3 = sub.add_parser(
        "table3",
        aliases=["fixtures"],
        parents=[common],
        help="Recompute the published reference rows and diff",
    )
    table3.add_argument("--strict", action="store_true", help="Exit 3 on any mismatch")
    table3.add_argument("--path", type=Path, default=None, help="Reference rows CSV")
    return parser


def _delta_mode(args: argparse.Namespace) -> DeltaMode:
    if args.delta_mode is not None:
        return DeltaMode(args.delta_mode)
    return get_settings().delta_mode


def _output_format(args: argparse.Namespace) -> OutputFormat:
    if args.fmt is not None:
        return OutputFormat(args.fmt)
    return get_settings().output_format


def _known_values_path(args: argparse.Namespace) -> Path | None:
    if args.no_known_values:
        return None
    if args.known_values is not None:
        return args.known_values
    return get_settings().resolved_known_values_path()


def _oracle(args: argparse.Namespace) -> AqOracle:
    return AqOracle(load_known_values_or_empty(_known_values_path(args)))


@contextmanager
def _output(args: argparse.Namespace) -> Iterator[TextIO]:
    if args.out is None:
        yield sys.stdout
        return
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", encoding="utf-8", newline="") as handle:
        yield handle


def _cmd_bound(args: argparse.Namespace) -> int:
    params = CodeParams.of(args.q, args.n, args.d)
    registry = build_registry(_oracle(args), _delta_mode(args))
    bound = registry[args.name]
    value = bound.evaluate(params, t=args.t, r=args.r, epsilon=args.epsilon)
    with _output(args) as out:
        if value is None:
            out.write(f"{bound.name}: not applicable to {params}\n")
            return EXIT_OK
        out.write(value.describe() + "\n")
        note = CODE_CLASS_NOTES.get(bound.name)
        if note:
            out.write(f"({note})\n")
    return EXIT_OK


def _cmd_best(args: argparse.Namespace) -> int:
    params = CodeParams.of(args.q, args.n, args.d)
    enabled = list(DEFAULT_ENABLED)
    if args.plotkin:
        enabled.append(BoundSource.PLOTKIN)
    row = evaluate_cell(params, enabled, _oracle(args), _delta_mode(args))
    with _output(args) as out:
        for source, k in row.k_values.items():
            out.write(f"{source.value}: {'n/a' if k is None else f'k <= {k}'}\n")
        best_k = "n/a" if row.best_k is None else f"k <= {row.best_k}"
        out.write(f"best: {best_k}\n")
        out.write("winners: " + ", ".join(source.value for source in row.winners) + "\n")
    return EXIT_OK


def _cmd_exact(args: argparse.Namespace) -> int:
    params = CodeParams.of(args.q, args.n, args.d)
    settings = get_settings()
    with _output(args) as out:
        if args.systematic:
            k = max_systematic_k_bruteforce(params, settings.systematic_limit)
            out.write(f"largest systematic dimension for {params}: {k}\n")
        else:
            value = aq_exact_bruteforce(params, settings.bruteforce_limit)
            out.write(f"A_{params.q}({params.n},{params.d}) = {value}\n")
    return EXIT_OK


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    return SweepConfig(
        q_list=args.q_list,
        n_min=args.n_min,
        n_max=args.n_max,
        enabled_bounds=[BoundSource(name) for name in args.bounds],
        delta_mode=_delta_mode(args),
        known_values_path=_known_values_path(args),
        output_format=_output_format(args),
        workers=args.workers if args.workers is not None else get_settings().workers,
    )


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _sweep_config(args)
    rows = asyncio.run(run_sweep_async(cfg))
    with _output(args) as out:
        write_rows(rows, out, cfg.output_format)
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    fmt = _output_format(args)
    if args.rows is not None:
        rows = read_rows(args.rows)
    else:
        rows = asyncio.run(run_sweep_async(_sweep_config(args)))
    summary = compute_stats(rows, [BoundSource(name) for name in args.bounds])
    with _output(args) as out:
        write_stats(summary, out, fmt)
    return EXIT_OK


def _cmd_table3(args: argparse.Namespace) -> int:
    report = diff_reference_rows(
        _oracle(args), _delta_mode(args), load_reference_rows(args.path)
    )
    with _output(args) as out:
        out.write(report.to_text())
    if args.strict and not report.passed:
        return EXIT_MISMATCH
    return EXIT_OK


COMMANDS = {
    "bound": _cmd_bound,
    "best": _cmd_best,
    "exact": _cmd_exact,
    "sweep": _cmd_sweep,
    "stats": _cmd_stats,
    "table3": _cmd_table3,
    "fixtures": _cmd_table3,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INVALID

    try:
        return COMMANDS[args.command](args)
    except ValueError as e:
        # BoundParameterError, KnownValuesError and pydantic ValidationError
        logger.error("invalid_parameters", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as e:
        logger.error("file_not_found", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
