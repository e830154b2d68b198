"""Tests for bayesrec.policies.poly_search."""

import pytest

from bayesrec.config.experiment_config import RandomInstanceSpec
from bayesrec.env.environment import Environment
from bayesrec.harness.random_instances import random_instance
from bayesrec.model.instance import Instance
from bayesrec.model.response import is_persuasive
from bayesrec.policies.poly_search import PolySearch, run_poly_search, solver_parameters


class TestSolverParameters:
    def test_values(self):
        params = solver_parameters(2, 100)
        assert params["inner_radius"] == pytest.approx(1.0 / 6400.0)
        assert params["outer_radius"] == pytest.approx(2**0.5)
        assert params["precision"] == params["confidence"] == 0.01


class TestPolySearch:
    """Phase behaviour of the polynomial search."""

    def test_two_state_phases(self, two_state):
        trace = run_poly_search(Environment(two_state, 10_000, seed=0))
        assert trace.lower_bound == 0.5
        assert trace.pair_set == [(0, 0)]
        assert trace.retained_states == frozenset({0, 1})
        assert is_persuasive(two_state, trace.final_scheme)

    def test_lower_bound_is_certified(self, three_state):
        env = Environment(three_state, 10_000, seed=1)
        trace = run_poly_search(env)
        assert trace.lower_bound >= env.optimum.value / three_state.m**2
        assert trace.lower_bound <= env.optimum.value

    def test_expensive_state_is_dropped(self):
        horizon = 1000
        m = 3
        inst = Instance.from_lists(
            prior=[1 / 3, 1 / 3, 1 / 3], utility_gap=[3.0, -6.0, -3.0 * m * horizon]
        )
        policy = PolySearch(Environment(inst, horizon, seed=0))
        pairs = policy.certify_pairs(1 / 3)
        assert (0, 0) in pairs
        assert 2 not in policy.retain_states(pairs, 1 / 3)

    def test_final_scheme_is_persuasive(self, rng):
        for m in (2, 3):
            inst = random_instance(RandomInstanceSpec(m=m), rng)
            env = Environment(inst, 5_000, seed=m)
            trace = run_poly_search(env)
            assert is_persuasive(inst, trace.final_scheme)
            spent = trace.rounds_phase1 + trace.rounds_phase2 + trace.rounds_phase3
            assert spent <= 5_000
            assert trace.expected_regret <= 5_000 * env.optimum.value + 1e-9
            assert env.remaining == 0
