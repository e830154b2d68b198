"""Tests for bayesrec.env.environment."""

import numpy as np
import pytest

from bayesrec.config.types import Verdict
from bayesrec.env.environment import (
    Environment,
    check_persu_regret_bound,
    stackelberg_regret,
)
from bayesrec.model.errors import AssumptionTwoViolated, HorizonExhausted
from bayesrec.model.instance import Instance
from bayesrec.model.schemes import DirectScheme, GeneralScheme


class TestPlayRounds:
    """Round consumption, outcomes and the regret ledger."""

    def test_block_matches_single_rounds(self, three_state):
        scheme = DirectScheme.of([1.0, 0.5, 0.2])
        block_env = Environment(three_state, 200, seed=7)
        single_env = Environment(three_state, 200, seed=7)
        block = block_env.play_rounds(scheme, 200)
        singles = [single_env.play_round(scheme) for _ in range(200)]
        assert block.outcomes() == singles
        assert block_env.realized_payoff == pytest.approx(single_env.realized_payoff)

    def test_same_seed_same_outcomes(self, two_state):
        scheme = DirectScheme.of([1.0, 0.5])
        a = Environment(two_state, 100, seed=3).play_rounds(scheme, 100)
        b = Environment(two_state, 100, seed=3).play_rounds(scheme, 100)
        np.testing.assert_array_equal(a.states, b.states)
        np.testing.assert_array_equal(a.signals, b.signals)

    def test_counters(self, two_state):
        env = Environment(two_state, 10, seed=0)
        env.play_rounds(DirectScheme.of([1.0, 0.0]), 4)
        assert env.round == 5
        assert env.consumed == 4
        assert env.remaining == 6

    def test_expected_regret_ledger(self, two_state):
        env = Environment(two_state, 100, seed=0)
        env.play_rounds(DirectScheme.of([1.0, 0.0]), 40)
        env.play_rounds(DirectScheme.zeros(2), 10)
        assert env.expected_regret == pytest.approx(40 * 0.25 + 10 * 0.75)
        assert stackelberg_regret(env) == env.expected_regret

    def test_optimum_has_no_regret(self, three_state):
        env = Environment(three_state, 50, seed=0)
        env.play_rounds(env.optimum.scheme, 50)
        assert env.expected_regret == pytest.approx(0.0, abs=1e-12)

    def test_followed_recommendations(self, two_state):
        block = Environment(two_state, 500, seed=1).play_rounds(DirectScheme.of([1.0, 0.5]), 500)
        np.testing.assert_array_equal(block.actions, block.signals)
        np.testing.assert_allclose(block.payoffs, block.actions)

    def test_states_follow_prior(self, three_state):
        n = 20_000
        block = Environment(three_state, n, seed=5).play_rounds(DirectScheme.zeros(3), n)
        freq = np.bincount(block.states, minlength=3) / n
        np.testing.assert_allclose(freq, three_state.prior, atol=0.02)

    def test_general_scheme(self, two_state):
        env = Environment(two_state, 10, seed=0)
        scheme = GeneralScheme(np.array([[0.0, 1.0, 0.0], [0.5, 0.0, 0.5]]))
        env.play_rounds(scheme, 10)
        assert env.scheme_utility(scheme) == pytest.approx(0.5)

    def test_horizon_exhausted(self, two_state):
        env = Environment(two_state, 3, seed=0)
        env.play_rounds(DirectScheme.zeros(2), 3)
        with pytest.raises(HorizonExhausted):
            env.play_round(DirectScheme.zeros(2))
        with pytest.raises(HorizonExhausted):
            Environment(two_state, 3, seed=0).play_rounds(DirectScheme.zeros(2), 4)

    def test_scheme_size_mismatch(self, two_state):
        with pytest.raises(ValueError, match="states"):
            Environment(two_state, 3, seed=0).play_round(DirectScheme.zeros(3))

    def test_invalid_instance(self):
        inst = Instance.from_lists(prior=[0.5, 0.5], utility_gap=[2.0, -1.0])
        with pytest.raises(AssumptionTwoViolated):
            Environment(inst, 10)

    def test_invalid_horizon(self, two_state):
        with pytest.raises(ValueError, match="horizon"):
            Environment(two_state, 0)

    def test_realized_regret_tracks_expected(self, two_state):
        env = Environment(two_state, 20_000, seed=11)
        env.play_rounds(DirectScheme.of([1.0, 0.0]), 20_000)
        assert env.realized_regret() == pytest.approx(env.expected_regret, rel=0.05)


class TestCheckPersu:
    """The persuasiveness probe."""

    def test_persuasive(self, two_state):
        env = Environment(two_state, 1000, seed=0)
        result = env.check_persu(DirectScheme.of([1.0, 0.0]))
        assert result.verdict is Verdict.PERSUASIVE
        assert result.rounds_used == env.consumed
        assert env.persu_checks == 1

    def test_not_persuasive_stops_at_first_round(self, two_state):
        env = Environment(two_state, 1000, seed=0)
        result = env.check_persu(DirectScheme.of([1.0, 1.0]))
        assert result.verdict is Verdict.NOT_PERSUASIVE
        assert result.rounds_used == 1

    def test_not_persuasive_mean_rounds(self, two_state):
        # omega . p = 1 - 1.2 < 0; signal 1 is sent with probability 0.8.
        scheme = DirectScheme.of([1.0, 0.6])
        env = Environment(two_state, 10**9, seed=11)
        used = []
        for _ in range(2000):
            result = env.check_persu(scheme)
            assert result.verdict is Verdict.NOT_PERSUASIVE
            used.append(result.rounds_used)
        mean = float(np.mean(used))
        se = float(np.std(used, ddof=1)) / np.sqrt(len(used))
        assert 1.0 <= mean <= 1.25 + 3.0 * se

    def test_never_recommending_exhausts_horizon(self, two_state):
        env = Environment(two_state, 1000, seed=0)
        result = env.check_persu(DirectScheme.zeros(2))
        assert result.verdict is Verdict.ROUND_EXHAUSTED
        assert result.rounds_used == 1000
        assert env.remaining == 0

    def test_verdicts_are_sound(self, three_state, rng):
        env = Environment(three_state, 10**9, seed=2)
        for _ in range(200):
            scheme = DirectScheme(rng.uniform(size=3))
            persuasive = float(three_state.omega @ scheme.p) >= 0.0
            expected = Verdict.PERSUASIVE if persuasive else Verdict.NOT_PERSUASIVE
            assert env.check_persu(scheme).verdict is expected

    def test_probe_rounds_enter_the_ledger(self, two_state):
        env = Environment(two_state, 1000, seed=4)
        env.check_persu(DirectScheme.of([1.0, 0.0]))
        assert env.expected_regret == pytest.approx(0.25 * env.consumed)

    def test_probe_keeps_block_stream(self, two_state):
        """A probe consumes exactly the draws of the rounds it reports."""
        scheme = DirectScheme.of([0.01, 0.0])
        probed = Environment(two_state, 5000, seed=9)
        used = probed.check_persu(scheme).rounds_used
        after = probed.play_rounds(scheme, 10)
        replay = Environment(two_state, 5000, seed=9)
        replay.play_rounds(scheme, used)
        np.testing.assert_array_equal(replay.play_rounds(scheme, 10).states, after.states)


class TestRegretBound:
    def test_persuasive(self, two_state):
        assert check_persu_regret_bound(two_state, DirectScheme.of([1.0, 0.0])) == 0.5

    def test_not_persuasive(self, two_state):
        assert check_persu_regret_bound(two_state, DirectScheme.of([0.0, 1.0])) == 1.5

    def test_never_recommending(self, two_state):
        assert check_persu_regret_bound(two_state, DirectScheme.zeros(2)) == float("inf")

    def test_bound_holds_on_average(self, two_state):
        scheme = DirectScheme.of([0.2, 0.0])
        bound = check_persu_regret_bound(two_state, scheme)
        regrets = []
        for seed in range(300):
            env = Environment(two_state, 10**6, seed=seed)
            env.check_persu(scheme)
            regrets.append(env.expected_regret)
        # Probe length is Geometric(0.1): the mean over 300 runs has standard error ~0.36.
        assert np.mean(regrets) <= bound + 1.5
