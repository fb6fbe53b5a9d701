"""
Tests for the sweep harness and its statistics.
"""

import io
from fractions import Fraction

import pytest
from pydantic import ValidationError

from codebounds.bounds import BoundSource
from codebounds.combinatorics import BoundParameterError, CodeParams
from codebounds.config import OutputFormat
from codebounds.harness import (
    DEFAULT_ENABLED,
    ROW_COLUMNS,
    ComparisonRow,
    QStats,
    SweepConfig,
    compute_stats,
    evaluate_cell,
    format_two_decimals,
    read_rows,
    rows_to_text,
    run_sweep,
    run_sweep_async,
    write_stats,
)
from codebounds.registry import COMPARISON_ORDER


@pytest.fixture(scope="module")
def small_rows():
    """Sweep over q in {2, 3} and n in 3..12 without a known-values table."""
    return run_sweep(SweepConfig(q_list=[3, 2], n_min=3, n_max=12))


def _row(q, n, d, k_values, **flags):
    best = min(k for k in k_values.values() if k is not None)
    return ComparisonRow(
        q=q,
        n=n,
        d=d,
        k_values=k_values,
        best_k=best,
        winners=tuple(source for source, k in k_values.items() if k == best),
        **flags,
    )


class TestEvaluateCell:
    """Tests for single-cell comparison."""

    def test_bound_b_strict_win(self, oracle):
        row = evaluate_cell(CodeParams(q=9, n=17, d=7), DEFAULT_ENABLED, oracle)
        assert row.best_k == 10
        assert row.winners == (BoundSource.BOUND_B,)
        assert row.k_values[BoundSource.SINGLETON] == 11
        assert row.delta_zero is not None

    def test_singleton_near_full_distance(self, oracle):
        row = evaluate_cell(CodeParams(q=5, n=9, d=8), DEFAULT_ENABLED, oracle)
        assert row.k_values[BoundSource.SINGLETON] == 2
        assert row.best_k <= 2

    def test_disabled_bound_b_leaves_flags_empty(self, oracle):
        row = evaluate_cell(
            CodeParams(q=3, n=10, d=4), [BoundSource.HAMMING, BoundSource.SINGLETON], oracle
        )
        assert set(row.k_values) == {BoundSource.HAMMING, BoundSource.SINGLETON}
        assert row.delta_zero is None
        assert row.plotkin_used_inner is None

    def test_plotkin_absent_outside_region(self, oracle):
        row = evaluate_cell(
            CodeParams(q=2, n=10, d=4), [BoundSource.HAMMING, BoundSource.PLOTKIN], oracle
        )
        assert row.k_values[BoundSource.PLOTKIN] is None
        assert row.winners == (BoundSource.HAMMING,)

    def test_no_applicable_bound_gives_empty_row(self, oracle):
        row = evaluate_cell(CodeParams(q=2, n=6, d=3), [BoundSource.PLOTKIN], oracle)
        assert row.k_values == {BoundSource.PLOTKIN: None}
        assert row.best_k is None
        assert row.winners == ()


class TestSweep:
    """Tests for grid sweeps."""

    def test_row_count_and_order(self, small_rows):
        assert len(small_rows) == 90
        keys = [row.key for row in small_rows]
        assert keys == sorted(keys)
        assert all(3 <= row.d < row.n for row in small_rows)

    def test_winner_consistency(self, small_rows):
        for row in small_rows:
            present = [k for k in row.k_values.values() if k is not None]
            assert row.best_k == min(present)
            assert row.winners
            assert all(row.k_values[source] == row.best_k for source in row.winners)
            assert all(
                source in row.winners
                for source, k in row.k_values.items()
                if k == row.best_k
            )

    def test_bound_b_never_above_singleton(self, small_rows):
        for row in small_rows:
            assert row.k_values[BoundSource.BOUND_B] <= row.k_values[BoundSource.SINGLETON]

    def test_worker_count_does_not_change_output(self, small_rows):
        parallel = run_sweep(SweepConfig(q_list=[2, 3], n_min=3, n_max=12, workers=2))
        assert rows_to_text(parallel, OutputFormat.CSV) == rows_to_text(
            small_rows, OutputFormat.CSV
        )

    async def test_async_entry_point(self):
        rows = await run_sweep_async(SweepConfig(q_list=[4], n_min=3, n_max=6))
        assert [row.key for row in rows] == [
            (4, 4, 3),
            (4, 5, 3),
            (4, 5, 4),
            (4, 6, 3),
            (4, 6, 4),
            (4, 6, 5),
        ]


class TestSweepConfig:
    """Tests for sweep configuration validation."""

    def test_normalisation(self):
        cfg = SweepConfig(
            q_list=[5, 2, 5],
            enabled_bounds=[BoundSource.SINGLETON, BoundSource.BOUND_B],
        )
        assert cfg.q_list == [2, 5]
        assert cfg.enabled_bounds == [BoundSource.BOUND_B, BoundSource.SINGLETON]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"q_list": []},
            {"q_list": [1]},
            {"n_min": 2},
            {"n_min": 10, "n_max": 5},
            {"workers": 0},
            {"enabled_bounds": []},
            {"enabled_bounds": [BoundSource.BOUND_A]},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            SweepConfig(**kwargs)

    def test_from_settings_overrides(self):
        cfg = SweepConfig.from_settings(q_list=[7], workers=3)
        assert cfg.q_list == [7]
        assert cfg.workers == 3

    def test_cells(self):
        assert SweepConfig(q_list=[2, 3], n_min=3, n_max=4).cells() == [
            (2, 3),
            (2, 4),
            (3, 3),
            (3, 4),
        ]


class TestOutput:
    """Tests for row serialization."""

    def test_csv_header(self, small_rows):
        text = rows_to_text(small_rows[:1], OutputFormat.CSV)
        header = text.splitlines()[0]
        assert header == (
            "q,n,d,boundB_k,johnson_k,hamming_k,griesmer_k,elias_k,singleton_k,plotkin_k,"
            "best_k,winners,delta_zero,plotkin_used_inner"
        )
        assert tuple(header.split(",")) == ROW_COLUMNS

    def test_csv_fields(self):
        row = _row(
            2,
            10,
            4,
            {BoundSource.BOUND_B: 5, BoundSource.HAMMING: 5, BoundSource.SINGLETON: 7},
            delta_zero=True,
            plotkin_used_inner=False,
        )
        line = rows_to_text([row], OutputFormat.CSV).splitlines()[1]
        assert line == "2,10,4,5,,5,,,7,,5,boundB|hamming,true,false"

    def test_read_back(self, small_rows, tmp_path):
        path = tmp_path / "rows.csv"
        path.write_text(rows_to_text(small_rows, OutputFormat.CSV), encoding="utf-8")
        loaded = read_rows(path)
        assert [row.key for row in loaded] == [row.key for row in small_rows]
        assert [row.winners for row in loaded] == [row.winners for row in small_rows]
        assert loaded[10].k_values == {**small_rows[10].k_values, BoundSource.PLOTKIN: None}

    def test_read_rejects_other_csv(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("q,n,d\n2,7,3\n", encoding="utf-8")
        with pytest.raises(BoundParameterError):
            read_rows(path)

    def test_json(self, small_rows):
        text = rows_to_text(small_rows[:2], OutputFormat.JSON)
        assert '"winners": [' in text
        assert '"boundB_k"' in text


class TestStats:
    """Tests for per-q statistics."""

    def test_draws_count_for_every_winner(self):
        row = _row(2, 10, 4, {BoundSource.BOUND_B: 5, BoundSource.JOHNSON: 5})
        stats = compute_stats([row]).per_q[2]
        assert stats.best_percentage[BoundSource.BOUND_B] == 100
        assert stats.best_percentage[BoundSource.JOHNSON] == 100
        assert stats.bound_b_draws == 100
        assert stats.bound_b_wins == 0
        assert stats.max_win_ratio is None
        record = stats.to_record()
        assert record["boundB_best"] == "100.00"
        assert record["max_win_d_over_n"] == ""

    def test_strict_wins(self):
        rows = [
            _row(3, 10, 4, {BoundSource.BOUND_B: 5, BoundSource.JOHNSON: 6}, delta_zero=True,
                 plotkin_used_inner=False),
            _row(3, 10, 6, {BoundSource.BOUND_B: 3, BoundSource.JOHNSON: 3}, delta_zero=False,
                 plotkin_used_inner=True),
            _row(3, 10, 7, {BoundSource.BOUND_B: 3, BoundSource.JOHNSON: 2}, delta_zero=False,
                 plotkin_used_inner=False),
        ]
        stats = compute_stats(rows).per_q[3]
        assert stats.bound_b_wins == Fraction(100, 3)
        assert stats.bound_b_draws == Fraction(100, 3)
        assert stats.delta_zero == 50
        assert stats.plotkin_usage == 50
        assert stats.max_win_ratio == Fraction(2, 5)
        assert stats.to_record()["boundB_wins"] == "33.33"

    @pytest.mark.parametrize("q, expected", [(2, "0.50"), (8, "0.88"), (29, "0.97")])
    def test_plotkin_frontier(self, q, expected):
        assert format_two_decimals(QStats(q=q, cells=1).plotkin_frontier) == expected

    def test_half_even_rounding(self):
        assert format_two_decimals(Fraction(1, 8)) == "0.12"
        assert format_two_decimals(Fraction(3, 8)) == "0.38"

    def test_empty_rows(self):
        with pytest.raises(BoundParameterError):
            compute_stats([])

    def test_removing_a_competitor_never_lowers_percentages(self):
        full = run_sweep(SweepConfig(q_list=[3], n_min=3, n_max=15))
        reduced_bounds = [source for source in DEFAULT_ENABLED if source != BoundSource.JOHNSON]
        reduced = run_sweep(
            SweepConfig(q_list=[3], n_min=3, n_max=15, enabled_bounds=reduced_bounds)
        )
        before = compute_stats(full).per_q[3].best_percentage
        after = compute_stats(reduced).per_q[3].best_percentage
        assert BoundSource.JOHNSON not in after
        for source in reduced_bounds:
            assert after[source] >= before[source]

    def test_write_stats_csv(self, small_rows):
        buffer = io.StringIO()
        write_stats(compute_stats(small_rows), buffer, OutputFormat.CSV)
        lines = buffer.getvalue().splitlines()
        assert lines[0].startswith("q,cells,boundB_best")
        assert lines[1].startswith("2,45,")
        assert lines[2].startswith("3,45,")


class TestInapplicableBounds:
    """Tests for cells and sweeps where an enabled bound does not apply."""

    @pytest.fixture(scope="class")
    def plotkin_rows(self):
        """Plotkin alone over q = 2, n = 6: it applies to d = 4 and d = 5 only."""
        return run_sweep(
            SweepConfig(q_list=[2], n_min=6, n_max=6, enabled_bounds=[BoundSource.PLOTKIN])
        )

    def test_sweep_keeps_cells_without_a_bound(self, plotkin_rows):
        assert [row.key for row in plotkin_rows] == [(2, 6, 3), (2, 6, 4), (2, 6, 5)]
        assert plotkin_rows[0].best_k is None
        assert plotkin_rows[0].winners == ()
        assert plotkin_rows[1].best_k == 2
        assert plotkin_rows[1].winners == (BoundSource.PLOTKIN,)

    def test_empty_best_k_in_csv_and_json(self, plotkin_rows):
        line = rows_to_text(plotkin_rows[:1], OutputFormat.CSV).splitlines()[1]
        assert line == "2,6,3" + "," * 11
        assert '"best_k": null' in rows_to_text(plotkin_rows[:1], OutputFormat.JSON)

    def test_cells_without_a_bound_count_in_the_denominator(self, plotkin_rows):
        stats = compute_stats(plotkin_rows).per_q[2]
        assert stats.cells == 3
        assert stats.best_percentage == {BoundSource.PLOTKIN: Fraction(200, 3)}

    def test_read_back_keeps_every_column(self, plotkin_rows, tmp_path):
        path = tmp_path / "plotkin.csv"
        path.write_text(rows_to_text(plotkin_rows, OutputFormat.CSV), encoding="utf-8")
        loaded = read_rows(path)
        assert loaded[0].best_k is None
        assert loaded[0].k_values[BoundSource.PLOTKIN] is None
        assert loaded[0].k_values[BoundSource.BOUND_B] is None
        assert set(loaded[0].k_values) == set(COMPARISON_ORDER)
        stats = compute_stats(loaded, [BoundSource.PLOTKIN]).per_q[2]
        assert stats.to_record()["plotkin_best"] == "66.67"
        assert "boundB_best" not in stats.to_record()
