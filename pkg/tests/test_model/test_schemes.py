"""Tests for bayesrec.model.schemes."""

import numpy as np
import pytest

from bayesrec.model.schemes import (
    DirectScheme,
    GeneralScheme,
    Posterior,
    is_threshold_scheme,
    to_general,
)


class TestDirectScheme:
    def test_clips_rounding_noise(self):
        scheme = DirectScheme.of([1.0 + 1e-13, -1e-13])
        np.testing.assert_array_equal(scheme.p, [1.0, 0.0])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            DirectScheme.of([0.5, 1.1])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            DirectScheme.of([0.5, np.nan])

    def test_rejects_matrix(self):
        with pytest.raises(ValueError, match="1-D"):
            DirectScheme.of([[0.5, 0.5]])

    def test_zeros_and_key(self):
        scheme = DirectScheme.zeros(3)
        assert scheme.m == 3
        assert scheme.key() == (0.0, 0.0, 0.0)
        assert DirectScheme.of([0.0, 0.0, 0.0]).key() == scheme.key()


class TestGeneralScheme:
    def test_rows_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            GeneralScheme(np.array([[0.5, 0.4], [0.0, 1.0]]))

    def test_to_general(self):
        table = to_general(DirectScheme.of([1.0, 0.25])).table
        np.testing.assert_allclose(table, [[0.0, 1.0], [0.75, 0.25]])
        assert to_general(DirectScheme.of([1.0, 0.25])).signal_count == 2


class TestPosterior:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            Posterior(np.array([0.5, 0.4]))


class TestThresholdScheme:
    def test_threshold_shapes(self):
        assert is_threshold_scheme(DirectScheme.of([1.0, 0.3, 0.0]))
        assert is_threshold_scheme(DirectScheme.of([1.0, 1.0, 0.0]))
        assert not is_threshold_scheme(DirectScheme.of([0.5, 0.3, 0.0]))
