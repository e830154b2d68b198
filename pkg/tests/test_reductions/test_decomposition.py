"""Tests for bayesrec.reductions.decomposition."""

import numpy as np
import pytest

from bayesrec.model.errors import NotADistribution
from bayesrec.reductions.decomposition import (
    Component,
    Decomposition,
    check_decomposition,
    decompose_binary_support,
    linear_system_residual,
    verify_decomposition,
)


class TestDecomposition:
    """Mean-preserving binary-support decompositions."""

    def test_worked_example(self):
        support, probs = [0.1, 0.6, 0.9], [0.5, 0.3, 0.2]
        dec = decompose_binary_support(support, probs)
        assert dec.mean == pytest.approx(0.41)
        by_high = {comp.support[1]: (comp, w) for comp, w in zip(dec.components, dec.weights)}
        comp_six, w_six = by_high[0.6]
        comp_nine, w_nine = by_high[0.9]
        assert w_six == pytest.approx(0.15 / 0.31, abs=1e-12)
        assert w_nine == pytest.approx(0.16 / 0.31, abs=1e-12)
        assert comp_six.probabilities[1] == pytest.approx(0.62, abs=1e-12)
        assert comp_nine.probabilities[1] == pytest.approx(0.3875, abs=1e-12)
        for x, q in zip(support, probs):
            assert dec.mass_at(x) == pytest.approx(q, abs=1e-12)

    def test_atom_at_mean(self):
        dec = decompose_binary_support([0.0, 0.5, 1.0], [0.25, 0.5, 0.25])
        sizes = sorted(len(c.support) for c in dec.components)
        assert sizes == [1, 2]
        assert dec.mass_at(0.5) == pytest.approx(0.5)

    def test_point_mass(self):
        dec = decompose_binary_support([0.3], [1.0])
        assert len(dec.components) == 1
        np.testing.assert_allclose(dec.weights, [1.0])

    def test_random_distributions(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            support = rng.choice(np.linspace(0.0, 1.0, 101), size=n, replace=False)
            probs = rng.dirichlet(np.ones(n))
            dec = decompose_binary_support(support, probs)
            verify_decomposition(dec, support, probs)
            assert all(len(c.support) <= 2 for c in dec.components)
            assert all(c.mean == pytest.approx(dec.mean, abs=1e-9) for c in dec.components)
            assert linear_system_residual(dec, support, probs) <= 1e-9

    def test_not_a_distribution(self):
        with pytest.raises(NotADistribution):
            decompose_binary_support([0.1, 0.9], [0.5, 0.4])

    def test_repeated_support(self):
        with pytest.raises(ValueError, match="distinct"):
            decompose_binary_support([0.1, 0.1, 0.9], [0.3, 0.3, 0.4])

    def test_support_outside_unit_interval(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            decompose_binary_support([0.1, 1.5], [0.5, 0.5])


class TestCheckDecomposition:
    """Measured errors of a decomposition."""

    def test_worked_example_is_exact(self):
        support, probs = [0.1, 0.6, 0.9], [0.5, 0.3, 0.2]
        check = check_decomposition(decompose_binary_support(support, probs), support, probs)
        assert check.max_support == 2
        assert check.mean_error <= 1e-12
        assert check.mass_error <= 1e-12
        assert check.residual <= 1e-12
        assert check.passed

    def test_wrong_weights_are_measured(self):
        support, probs = [0.1, 0.9], [0.5, 0.5]
        dec = Decomposition(
            (Component(support=(0.1, 0.9), probabilities=(0.5, 0.5)),), np.array([0.5]), 0.5
        )
        check = check_decomposition(dec, support, probs)
        assert check.mass_error == pytest.approx(0.25)
        assert not check.passed
