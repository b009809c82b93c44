import numpy as np
import pytest

from designlab.domain import CapExceededError
from designlab.oracle import (
    CoverageMap,
    audit,
    count_latin_squares,
    count_latin_squares_by_symbols,
    count_mols_pairs,
    count_mols_pairs_by_transversals,
    count_transversals,
    latin_squares,
)
from designlab.sqs import boolean_sqs


@pytest.mark.parametrize("q,expected", [(1, 1), (2, 2), (3, 12), (4, 576), (5, 161280)])
def test_latin_square_counts(q, expected):
    assert count_latin_squares(q) == expected
    assert count_latin_squares_by_symbols(q) == expected


@pytest.mark.parametrize("q,expected", [(2, 1), (3, 1), (4, 4), (5, 56), (6, 9408)])
def test_reduced_counts(q, expected):
    assert count_latin_squares(q, reduced=True) == expected


def test_parallel_count_matches():
    assert count_latin_squares(4, n_jobs=2) == 576


def test_count_caps():
    with pytest.raises(CapExceededError):
        count_latin_squares(6)
    with pytest.raises(CapExceededError):
        count_latin_squares(7, reduced=True)
    with pytest.raises(CapExceededError):
        count_latin_squares_by_symbols(6)
    with pytest.raises(CapExceededError):
        count_mols_pairs(5)


def test_listing_matches_count():
    squares = list(latin_squares(4))
    assert len(squares) == 576
    assert len({sq.tobytes() for sq in squares}) == 576


def test_mols_counts():
    assert count_mols_pairs(2) == 0
    assert count_mols_pairs_by_transversals(2) == 0
    pairs = count_mols_pairs(3)
    assert pairs > 0
    assert pairs == count_mols_pairs_by_transversals(3)


def test_transversals_of_cyclic_square():
    cyclic = (np.arange(3)[:, None] + np.arange(3)[None, :]) % 3
    assert count_transversals(cyclic) == 3
    even = (np.arange(4)[:, None] + np.arange(4)[None, :]) % 4
    assert count_transversals(even) == 0


def test_sqs8_audit():
    summary = audit(boolean_sqs(3).blocks, 8, 3)
    assert summary.minimum == summary.maximum == 1
    assert summary.exact
    assert summary.universe == 56


def test_audit_with_missing_block():
    summary = audit(boolean_sqs(3).blocks[1:], 8, 3)
    assert summary.minimum == 0
    assert summary.histogram == {0: 4, 1: 52}
    assert len(summary.violations) == 4


def test_rank_unrank_inverse():
    coverage = CoverageMap(10, 3)
    subsets = coverage.all_subsets()
    assert len(subsets) == 120
    assert (np.diff(subsets, axis=1) > 0).all()
    assert np.array_equal(coverage.rank(subsets), np.arange(120))
    assert np.array_equal(coverage.unrank(coverage.rank(subsets)), subsets)


def test_counters_saturate():
    coverage = CoverageMap(6, 3).add_blocks(np.array([[0, 1, 2, 3]] * 5))
    assert coverage.counts.max() == 3
    assert coverage.total == 20


def test_add_blocks_rejects_bad_blocks():
    coverage = CoverageMap(6, 3)
    with pytest.raises(ValueError):
        coverage.add_blocks(np.array([[0, 1, 1, 2]]))
    with pytest.raises(ValueError):
        coverage.add_blocks(np.array([[0, 1, 2, 6]]))
    with pytest.raises(ValueError):
        CoverageMap(2, 3)


def test_masks():
    coverage = CoverageMap(5, 3)
    cross = coverage.cross_mask([0, 0, 1, 1, -1])
    assert int(cross.sum()) == 8
    transverse = coverage.transverse_mask([0, 0, 1, 1, 2])
    assert int(transverse.sum()) == 4


def test_excluded_hits():
    coverage = CoverageMap(5, 3).add_blocks(np.array([[0, 1, 2, 4]]))
    summary = coverage.summary(coverage.cross_mask([0, 0, 1, 1, -1]))
    assert summary.excluded_hits == 1
    assert not summary.exact
