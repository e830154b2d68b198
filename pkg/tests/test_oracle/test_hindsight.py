"""Tests for bayesrec.oracle.hindsight."""

import numpy as np
import pytest

from bayesrec.config.experiment_config import RandomInstanceSpec
from bayesrec.harness.random_instances import random_instance
from bayesrec.model.errors import TooManyStates
from bayesrec.model.instance import Instance
from bayesrec.model.response import expected_platform_utility, is_persuasive
from bayesrec.model.schemes import DirectScheme, is_threshold_scheme
from bayesrec.oracle.hindsight import (
    bang_per_buck,
    bang_per_buck_order,
    solve_bruteforce,
    solve_threshold,
)


class TestSolveThreshold:
    """Greedy solution of the hindsight program."""

    def test_two_state(self, two_state):
        sol = solve_threshold(two_state)
        np.testing.assert_allclose(sol.scheme.p, [1.0, 0.5])
        assert sol.value == pytest.approx(0.75)
        assert sol.threshold_state == 1

    def test_three_state(self, three_state):
        sol = solve_threshold(three_state)
        np.testing.assert_allclose(sol.scheme.p, [1.0, 1.0, 0.5])
        assert sol.value == pytest.approx(0.61)

    def test_bang_per_buck_order(self, three_state):
        np.testing.assert_allclose(bang_per_buck(three_state), [1.0, -2.0 / 3.0, -1.25])
        assert bang_per_buck_order(three_state) == [0, 1, 2]

    def test_retained_subset(self, two_state):
        sol = solve_threshold(two_state, retained={0})
        np.testing.assert_allclose(sol.scheme.p, [1.0, 0.0])
        assert sol.value == pytest.approx(0.5)

    def test_random_instances_are_persuasive_thresholds(self, rng):
        for m in (2, 3, 5, 8):
            for _ in range(20):
                inst = random_instance(RandomInstanceSpec(m=m, random_values=True), rng)
                sol = solve_threshold(inst)
                assert is_persuasive(inst, sol.scheme)
                assert is_threshold_scheme(sol.scheme)


class TestSolveBruteforce:
    """Vertex enumeration agrees with the greedy solution."""

    def test_agrees_with_threshold(self, rng):
        for m in (2, 3, 4, 6):
            for _ in range(25):
                spec = RandomInstanceSpec(m=m, distinct_belief=True, random_values=True)
                inst = random_instance(spec, rng)
                assert solve_bruteforce(inst).value == pytest.approx(
                    solve_threshold(inst).value, abs=1e-9
                )

    def test_agrees_on_retained_subset(self, three_state):
        greedy = solve_threshold(three_state, retained={0, 2})
        brute = solve_bruteforce(three_state, retained={0, 2})
        assert brute.value == pytest.approx(greedy.value, abs=1e-12)
        assert brute.scheme.p[1] == 0.0

    def test_too_many_states(self):
        spec = RandomInstanceSpec(m=13)
        inst = random_instance(spec, np.random.default_rng(0))
        with pytest.raises(TooManyStates):
            solve_bruteforce(inst)


class TestInvariants:
    """Properties every hindsight solution keeps."""

    @pytest.fixture
    def tied(self):
        # omega = (1, -3, -3): states 2 and 3 tie on bang-per-buck.
        return Instance.from_lists(prior=[1 / 3, 1 / 3, 1 / 3], utility_gap=[3.0, -9.0, -9.0])

    def test_tie_value(self, tied):
        np.testing.assert_allclose(tied.omega, [1.0, -3.0, -3.0])
        sol = solve_threshold(tied)
        np.testing.assert_allclose(sol.scheme.p, [1.0, 1.0 / 3.0, 0.0])
        assert sol.value == pytest.approx(4.0 / 9.0, abs=1e-12)
        assert solve_bruteforce(tied).value == pytest.approx(4.0 / 9.0, abs=1e-12)

    def test_either_tie_order_is_optimal(self, tied):
        for p in ([1.0, 1.0 / 3.0, 0.0], [1.0, 0.0, 1.0 / 3.0]):
            scheme = DirectScheme.of(p)
            assert is_persuasive(tied, scheme)
            assert expected_platform_utility(tied, scheme) == pytest.approx(4.0 / 9.0, abs=1e-12)

    @pytest.mark.parametrize("factor", [0.5, 4.0, 1e3])
    def test_scaling_omega_keeps_solution(self, rng, factor):
        for m in (2, 3, 5):
            for _ in range(10):
                spec = RandomInstanceSpec(m=m, distinct_belief=True, random_values=True)
                inst = random_instance(spec, rng)
                scaled = Instance(
                    prior=inst.prior,
                    utility_gap=inst.utility_gap * factor,
                    user_belief=inst.user_belief,
                    platform_value=inst.platform_value,
                )
                base, other = solve_threshold(inst), solve_threshold(scaled)
                np.testing.assert_allclose(other.scheme.p, base.scheme.p, rtol=1e-9, atol=1e-12)
                assert other.value == pytest.approx(base.value, rel=1e-9, abs=1e-12)
