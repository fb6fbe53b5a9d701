"""
Tests for the known-values table and the A_q oracle.
"""

import pytest

from codebounds.bounds import BoundSource
from codebounds.combinatorics import CodeParams
from codebounds.config import packaged_known_values_path
from codebounds.oracle import (
    AqOracle,
    KnownValuesError,
    KnownValuesTable,
    aq_upper,
    load_known_values,
    load_known_values_or_empty,
)
from codebounds.search import aq_exact_bruteforce

MONOTONE_SOURCES = {
    BoundSource.HAMMING,
    BoundSource.SINGLETON,
    BoundSource.ELIAS,
    BoundSource.PLOTKIN,
}


@pytest.fixture
def write_csv(tmp_path):
    """Write a known-values file and return its path."""

    def _write(text: str):
        path = tmp_path / "known.csv"
        path.write_text(text, encoding="utf-8")
        return path

    return _write


class TestLoadKnownValues:
    """Tests for parsing known-values files."""

    def test_rows_become_entries(self, write_csv):
        path = write_csv("q,n,d,A\n2,7,3,16\n2,5,3,4\n")
        table = load_known_values(path)
        assert len(table) == 2
        assert table.get(CodeParams(q=2, n=7, d=3)) == 16
        assert table.get(CodeParams(q=2, n=5, d=3)) == 4
        assert table.get(CodeParams(q=2, n=6, d=3)) is None

    def test_source_column_and_comments(self, write_csv):
        path = write_csv("# exact values\nq,n,d,A,source\n\n2,8,4,16,extended Hamming\n")
        table = load_known_values(path)
        assert table.source_of(CodeParams(q=2, n=8, d=4)) == "extended Hamming"
        assert CodeParams(q=2, n=8, d=4) in table

    def test_empty_file(self, write_csv):
        table = load_known_values(write_csv(""))
        assert len(table) == 0

    @pytest.mark.parametrize(
        "body, row",
        [
            ("2,7,3\n", 2),
            ("2,7,3,x\n", 2),
            ("2,3,3,9\n", 2),
            ("2,7,3,16\n2,7,3,16\n", 3),
            ("2,5,6,2\n", 2),
        ],
    )
    def test_malformed_rows_report_row_number(self, write_csv, body, row):
        path = write_csv("q,n,d,A\n" + body)
        with pytest.raises(KnownValuesError) as exc_info:
            load_known_values(path)
        assert exc_info.value.row == row

    def test_bad_header(self, write_csv):
        with pytest.raises(KnownValuesError):
            load_known_values(write_csv("a,b,c,d\n2,7,3,16\n"))

    def test_missing_file_falls_back(self, tmp_path):
        table = load_known_values_or_empty(tmp_path / "absent.csv")
        assert len(table) == 0
        with pytest.raises(FileNotFoundError):
            load_known_values(tmp_path / "absent.csv")

    def test_packaged_table(self):
        table = load_known_values(packaged_known_values_path())
        assert len(table) == 273
        assert table.get(CodeParams(q=2, n=7, d=3)) == 16
        assert table.get(CodeParams(q=2, n=23, d=7)) == 4096
        assert all(q == 2 and 3 <= d <= 16 and n <= 28 for q, n, d in table.entries)

    def test_packaged_table_covers_binary_domain(self):
        table = load_known_values(packaged_known_values_path())
        for n in range(3, 29):
            for d in range(3, min(n, 16) + 1):
                assert CodeParams(q=2, n=n, d=d) in table

    def test_packaged_open_cells_are_labelled(self):
        table = load_known_values(packaged_known_values_path())
        note = table.source_of(CodeParams(q=2, n=24, d=6))
        assert note is not None and note.startswith("upper bound")
        assert table.source_of(CodeParams(q=2, n=24, d=8)) == "classical binary table"

    def test_quoted_source_with_commas(self, write_csv):
        path = write_csv('q,n,d,A,source\n2,8,4,16,"extended Hamming, length 8"\n')
        table = load_known_values(path)
        assert table.source_of(CodeParams(q=2, n=8, d=4)) == "extended Hamming, length 8"

    def test_unquoted_commas_in_source_are_rejected(self, write_csv):
        path = write_csv("q,n,d,A,source\n2,8,4,16,extended Hamming, length 8\n")
        with pytest.raises(KnownValuesError) as exc_info:
            load_known_values_or_empty(path)
        assert exc_info.value.row == 2


class TestAqUpper:
    """Tests for the oracle's estimate."""

    def test_known_value_wins(self, table_oracle):
        estimate = aq_upper(CodeParams(q=2, n=7, d=3), table_oracle.table)
        assert estimate.value == 16
        assert estimate.source == BoundSource.KNOWN

    def test_trivial_distances(self):
        assert aq_upper(CodeParams(q=3, n=5, d=1)).value == 3**5
        assert aq_upper(CodeParams(q=3, n=5, d=1)).source == BoundSource.TRIVIAL
        assert aq_upper(CodeParams(q=3, n=5, d=2)).value == 3**4

    def test_plotkin_used(self):
        estimate = aq_upper(CodeParams(q=2, n=10, d=7))
        assert estimate.value == 3
        assert estimate.source == BoundSource.PLOTKIN
        assert estimate.plotkin_used is True

    def test_computed_minimum(self):
        estimate = aq_upper(CodeParams(q=2, n=7, d=3))
        assert estimate.value == 16
        assert estimate.plotkin_used is False

    def test_agrees_with_table(self, table_oracle):
        table = table_oracle.table
        for (q, n, d), value in table.entries.items():
            params = CodeParams(q=q, n=n, d=d)
            if table.source_of(params).startswith("upper bound"):
                assert table_oracle(q, n, d) <= value
            else:
                assert table_oracle(q, n, d) == value

    def test_published_upper_bound_tightens_estimate(self, oracle, table_oracle):
        params = CodeParams(q=2, n=24, d=6)
        assert table_oracle(2, 24, 6) == 24106
        assert table_oracle.estimate(params).source == BoundSource.KNOWN
        assert oracle(2, 24, 6) > 24106

    def test_looser_table_entry_falls_back_to_computed(self, write_csv):
        table = load_known_values(write_csv("q,n,d,A\n2,10,7,5\n"))
        estimate = aq_upper(CodeParams(q=2, n=10, d=7), table)
        assert estimate.value == 3
        assert estimate.source == BoundSource.PLOTKIN

    def test_dominates_exact(self, oracle, table_oracle):
        for n in range(1, 8):
            for d in range(1, n + 1):
                params = CodeParams(q=2, n=n, d=d)
                exact = aq_exact_bruteforce(params)
                assert oracle.estimate(params).value >= exact
                assert table_oracle.estimate(params).value >= exact

    def test_range(self, oracle):
        for q in (2, 3, 5, 29):
            for n in range(1, 30):
                for d in range(1, n + 1):
                    value = oracle(q, n, d)
                    assert 1 <= value <= q**n

    def test_antitone_within_family(self, oracle):
        for q in (2, 3, 4, 7):
            for n in range(2, 40):
                for d in range(3, n):
                    here = oracle.estimate(CodeParams(q=q, n=n, d=d))
                    there = oracle.estimate(CodeParams(q=q, n=n, d=d + 1))
                    if here.source == there.source and here.source in MONOTONE_SOURCES:
                        assert there.value <= here.value


class TestAqOracle:
    """Tests for the memoising oracle."""

    def test_cache(self):
        oracle = AqOracle(KnownValuesTable())
        oracle(2, 10, 3)
        oracle(2, 10, 3)
        assert oracle.cache_size == 1

    def test_default_table_is_empty(self):
        assert len(AqOracle().table) == 0
