"""Tests for bayesrec.policies.loglog_search."""

import pytest

from bayesrec.config.experiment_config import RandomInstanceSpec
from bayesrec.env.environment import Environment
from bayesrec.harness.random_instances import random_instance
from bayesrec.model.errors import PermutationCapExceeded
from bayesrec.model.response import expected_platform_utility, is_persuasive
from bayesrec.policies.loglog_search import LogLogConfig, LogLogSearch, run_loglog_search


class TestLogLogSearch:
    """Order search on small instances."""

    def test_first_phase_bracket(self, two_state):
        trace = run_loglog_search(Environment(two_state, 10_000, seed=0))
        assert trace.lower_bound == 0.5
        left, right, eps = trace.intervals[0]
        assert (left, right, eps) == (0.5, 1.0, 0.5)

    def test_converges_to_optimum(self, two_state):
        horizon = 10_000
        env = Environment(two_state, horizon, seed=1)
        trace = run_loglog_search(env, LogLogConfig(record_orders=True))
        assert trace.exploration_completed
        assert is_persuasive(two_state, trace.final_scheme)
        value = expected_platform_utility(two_state, trace.final_scheme)
        assert value >= env.optimum.value - 1.0 / horizon
        assert trace.surviving_orders[-1] == [(0, 1)]
        assert env.remaining == 0

    def test_intervals_shrink(self, three_state):
        trace = run_loglog_search(Environment(three_state, 10_000, seed=2))
        for left, right, eps in trace.intervals:
            assert right - left <= (2 * eps) ** 0.5 * left + 1e-12
        widths = [right - left for left, right, _ in trace.intervals]
        assert widths == sorted(widths, reverse=True)

    def test_random_instances(self, rng):
        horizon = 5_000
        for m in (2, 3, 4):
            inst = random_instance(RandomInstanceSpec(m=m, random_values=True), rng)
            env = Environment(inst, horizon, seed=m)
            trace = run_loglog_search(env)
            assert trace.rounds_phase1 + trace.rounds_phase2 <= horizon
            assert is_persuasive(inst, trace.final_scheme)
            if trace.exploration_completed:
                value = expected_platform_utility(inst, trace.final_scheme)
                assert value >= env.optimum.value - 1.0 / horizon

    def test_permutation_cap(self, rng):
        inst = random_instance(RandomInstanceSpec(m=8), rng)
        with pytest.raises(PermutationCapExceeded):
            LogLogSearch(Environment(inst, 100))

    def test_short_horizon_falls_back(self, two_state):
        trace = run_loglog_search(Environment(two_state, 3, seed=0))
        assert trace.horizon == 3
        assert is_persuasive(two_state, trace.final_scheme)
