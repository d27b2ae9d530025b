"""Tests for the deterministic compensated reductions."""
import math

import numpy as np
import pytest

from pauli_zeromodes.lattice._summation import pairwise_reduce, pairwise_sum, two_sum


class TestTwoSum:
    def test_error_term_is_exact(self) -> None:
        s, t = two_sum(np.array([1e16]), np.array([1.0]))
        assert s[0] == 1e16
        assert t[0] == 1.0

    def test_no_error_for_representable_sum(self) -> None:
        s, t = two_sum(np.array([0.5]), np.array([0.25]))
        assert s[0] == 0.75
        assert t[0] == 0.0


class TestPairwiseSum:
    def test_recovers_cancelled_term(self) -> None:
        values = np.array([1e16, 1.0, -1e16])
        assert sum(values.tolist()) == 0.0
        assert pairwise_sum(values) == 1.0

    def test_matches_exact_sum(self) -> None:
        rng = np.random.default_rng(7)
        values = rng.normal(size=10_001) * 10.0 ** rng.integers(-8, 8, size=10_001)
        assert float(pairwise_sum(values)) == pytest.approx(math.fsum(values), rel=1e-14, abs=1e-12)

    def test_empty_is_zero(self) -> None:
        assert pairwise_sum(np.array([])) == 0.0

    def test_rows_independent_of_batching(self) -> None:
        rng = np.random.default_rng(11)
        block = rng.normal(size=(5, 37))
        together = pairwise_sum(block, axis=1)
        one_by_one = np.array([pairwise_sum(row) for row in block])
        assert np.array_equal(together, one_by_one)

    def test_axis_argument(self) -> None:
        block = np.arange(12.0).reshape(3, 4)
        np.testing.assert_array_equal(pairwise_sum(block, axis=0), block.sum(axis=0))

    def test_carried_error_continues_reduction(self) -> None:
        s, c = pairwise_reduce(np.array([1e16, 1.0]), np.array([0.0, 0.5]))
        assert s == 1e16
        assert c == 1.5
