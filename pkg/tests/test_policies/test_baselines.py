"""Tests for bayesrec.policies.baselines."""

import numpy as np
import pytest

from bayesrec.config.types import PolicyKind
from bayesrec.env.environment import Environment
from bayesrec.policies.baselines import baseline_scheme, run_baseline


class TestBaselines:
    def test_no_info_regret(self, two_state):
        trace = run_baseline(Environment(two_state, 1000, seed=0), PolicyKind.NO_INFO)
        assert trace.expected_regret == pytest.approx(750.0)
        assert trace.realized_payoff == 0.0

    def test_full_reveal_regret(self, two_state):
        env = Environment(two_state, 1000, seed=0)
        np.testing.assert_array_equal(baseline_scheme(env, PolicyKind.FULL_REVEAL).p, [1, 0])
        trace = run_baseline(env, PolicyKind.FULL_REVEAL)
        assert trace.expected_regret == pytest.approx(250.0)

    def test_hindsight_has_no_regret(self, three_state):
        trace = run_baseline(Environment(three_state, 1000, seed=0), PolicyKind.HINDSIGHT)
        assert trace.expected_regret == pytest.approx(0.0, abs=1e-9)
        assert trace.exploration_completed

    def test_rejects_learning_policies(self, two_state):
        with pytest.raises(ValueError, match="not a baseline"):
            baseline_scheme(Environment(two_state, 10), PolicyKind.LOGLOG)
