"""Tests for bayesrec.model.response."""

import numpy as np
import pytest

from bayesrec.model.errors import ZeroProbabilitySignal
from bayesrec.model.instance import Instance
from bayesrec.model.response import (
    best_response,
    expected_platform_utility,
    is_persuasive,
    posterior,
    recommend_probability,
    signal_responses,
)
from bayesrec.model.schemes import DirectScheme, Posterior


@pytest.fixture
def three_belief() -> Instance:
    return Instance.from_lists(prior=[0.2, 0.3, 0.5], utility_gap=[1.0, -1.0, -1.0])


class TestPosterior:
    """Bayes updates of the user's belief."""

    def test_recommend_signal(self, three_belief):
        post = posterior(three_belief, DirectScheme.of([1.0, 0.5, 0.0]), 1)
        np.testing.assert_allclose(post.belief, np.array([0.2, 0.15, 0.0]) / 0.35)

    def test_other_signal(self, three_belief):
        post = posterior(three_belief, DirectScheme.of([1.0, 0.5, 0.0]), 0)
        np.testing.assert_allclose(post.belief, np.array([0.0, 0.15, 0.5]) / 0.65)

    def test_zero_probability_signal(self, three_belief):
        with pytest.raises(ZeroProbabilitySignal):
            posterior(three_belief, DirectScheme.zeros(3), 1)

    def test_signal_out_of_range(self, three_belief):
        with pytest.raises(ValueError, match="outside the signal space"):
            posterior(three_belief, DirectScheme.zeros(3), 2)

    def test_uses_user_belief(self, three_state):
        post = posterior(three_state, DirectScheme.of([1.0, 1.0, 1.0]), 1)
        np.testing.assert_allclose(post.belief, three_state.user_belief)


class TestBestResponse:
    def test_tie_goes_to_action_one(self):
        inst = Instance.from_lists(prior=[0.5, 0.5], utility_gap=[1.0, -1.0])
        assert best_response(inst, Posterior(np.array([0.5, 0.5]))) == 1

    def test_negative_gain(self, two_state):
        assert best_response(two_state, Posterior(np.array([0.5, 0.5]))) == 0

    def test_unrealized_signal_has_no_response(self, two_state):
        assert signal_responses(two_state, DirectScheme.of([1.0, 0.0])) == [0, 1]
        assert signal_responses(two_state, DirectScheme.zeros(2)) == [0, None]


class TestPersuasiveness:
    """Persuasiveness and the value of a scheme."""

    def test_boundary_scheme_is_persuasive(self, two_state):
        assert is_persuasive(two_state, DirectScheme.of([1.0, 0.5]))
        assert not is_persuasive(two_state, DirectScheme.of([1.0, 0.5 + 1e-6]))

    def test_persuasive_utility_is_recommended_value(self, three_state, rng):
        for _ in range(50):
            scheme = DirectScheme(rng.uniform(size=3))
            value = expected_platform_utility(three_state, scheme)
            if is_persuasive(three_state, scheme):
                assert value == pytest.approx(float(three_state.value_weight @ scheme.p))

    def test_ignored_recommendation_earns_nothing(self, two_state):
        assert expected_platform_utility(two_state, DirectScheme.of([1.0, 1.0])) == 0.0

    def test_optimum_value(self, two_state):
        assert expected_platform_utility(two_state, DirectScheme.of([1.0, 0.5])) == 0.75

    def test_recommend_probability(self, two_state):
        assert recommend_probability(two_state, DirectScheme.of([1.0, 0.5])) == 0.75
