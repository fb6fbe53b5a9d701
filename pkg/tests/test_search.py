"""
Tests for the exhaustive searches.
"""

import pytest

from codebounds.combinatorics import CodeParams
from codebounds.search import (
    CliqueSearch,
    SearchLimitError,
    SystematicSearch,
    WordSpace,
    aq_exact_bruteforce,
    max_systematic_k_bruteforce,
)


class TestWordSpace:
    """Tests for word indexing."""

    def test_digits_and_index(self):
        space = WordSpace(3, 3)
        assert space.digits(5) == (0, 1, 2)
        assert space.index((0, 1, 2)) == 5

    def test_add(self):
        assert WordSpace(2, 4).add(0b1010, 0b0110) == 0b1100
        space = WordSpace(3, 2)
        assert space.add(space.index((2, 1)), space.index((2, 2))) == space.index((1, 0))

    def test_weights(self):
        space = WordSpace(3, 2)
        assert space.weights[space.index((0, 0))] == 0
        assert space.weights[space.index((2, 0))] == 1
        assert space.weights[space.index((1, 2))] == 2

    def test_error_patterns_count(self):
        # 1 + 4*2 + 6*4 words of weight <= 2 in F_3^4, minus the zero word
        assert len(WordSpace(3, 4).error_patterns(2)) == 8 + 24


class TestExactSearch:
    """Tests for the maximum clique search."""

    @pytest.mark.parametrize(
        "q, n, d, expected",
        [
            (2, 4, 3, 2),
            (2, 5, 3, 4),
            (2, 6, 1, 64),
            (2, 6, 4, 4),
            (2, 7, 3, 16),
            (3, 4, 3, 9),
            (3, 4, 2, 27),
        ],
    )
    def test_known_values(self, q, n, d, expected):
        assert aq_exact_bruteforce(CodeParams(q=q, n=n, d=d)) == expected

    def test_lexicode(self):
        assert CliqueSearch(CodeParams(q=2, n=7, d=3)).lexicode_size() == 16

    def test_full_length_distance(self):
        assert aq_exact_bruteforce(CodeParams(q=3, n=4, d=4)) == 3

    def test_limit(self):
        with pytest.raises(SearchLimitError):
            aq_exact_bruteforce(CodeParams(q=2, n=21, d=3), limit=2**20)

    def test_limit_error_is_value_error(self):
        with pytest.raises(ValueError):
            aq_exact_bruteforce(CodeParams(q=3, n=5, d=3), limit=100)


class TestSystematicSearch:
    """Tests for the systematic code search."""

    @pytest.mark.parametrize(
        "q, n, d, expected",
        [
            (2, 7, 3, 4),
            (2, 4, 4, 1),
            (2, 5, 2, 4),
            (2, 6, 3, 3),
            (3, 4, 3, 2),
        ],
    )
    def test_known_values(self, q, n, d, expected):
        assert max_systematic_k_bruteforce(CodeParams(q=q, n=n, d=d)) == expected

    def test_existence_per_dimension(self):
        params = CodeParams(q=2, n=7, d=3)
        assert SystematicSearch(params, 4).exists()
        assert not SystematicSearch(params, 5).exists()

    def test_not_enough_redundancy(self):
        assert not SystematicSearch(CodeParams(q=2, n=6, d=4), 4).exists()

    def test_limit(self):
        with pytest.raises(SearchLimitError):
            max_systematic_k_bruteforce(CodeParams(q=2, n=17, d=3), limit=2**16)
