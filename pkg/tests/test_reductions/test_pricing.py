"""Tests for bayesrec.reductions.pricing."""

import numpy as np
import pytest

from bayesrec.env.environment import Environment
from bayesrec.model.errors import DegenerateScheme
from bayesrec.model.instance import omega
from bayesrec.model.response import is_persuasive
from bayesrec.model.schemes import DirectScheme
from bayesrec.oracle.hindsight import solve_threshold
from bayesrec.reductions.pricing import (
    NO_SALE_PRICE,
    PricingInstance,
    build_pricing_instance,
    prices_from_schemes,
    pricing_regret,
    scheme_price,
    transcript_pricing_regret,
)


@pytest.fixture
def pricing() -> PricingInstance:
    return PricingInstance(horizon=100, value=0.25)


class TestPricingInstance:
    """The recommendation instance encoding a buyer."""

    def test_instance(self, pricing):
        inst = build_pricing_instance(pricing)
        np.testing.assert_allclose(inst.prior, [0.01, 0.99])
        np.testing.assert_allclose(omega(inst), [0.01, -0.0396])

    def test_optimum_is_value_plus_eps(self, pricing):
        sol = solve_threshold(build_pricing_instance(pricing))
        assert sol.value == pytest.approx(0.25 + 0.01)
        assert sol.scheme.p[1] == pytest.approx(0.25 / 0.99)
        assert scheme_price(pricing, sol.scheme) == pytest.approx(0.25)

    def test_persuasive_iff_price_accepted(self, pricing, rng):
        inst = build_pricing_instance(pricing)
        for _ in range(200):
            scheme = DirectScheme(np.array([rng.uniform(0.01, 1.0), rng.uniform(0.0, 0.01)]))
            price = scheme_price(pricing, scheme)
            if abs(price - pricing.value) > 1e-9:
                assert is_persuasive(inst, scheme) == (price <= pricing.value)

    def test_validation(self):
        with pytest.raises(ValueError, match="buyer value"):
            PricingInstance(horizon=100, value=0.6)
        with pytest.raises(ValueError, match="horizon"):
            PricingInstance(horizon=1, value=0.25)


class TestPrices:
    def test_degenerate_scheme(self, pricing):
        scheme = DirectScheme.of([0.0, 0.5])
        with pytest.raises(DegenerateScheme):
            scheme_price(pricing, scheme)
        assert scheme_price(pricing, scheme, on_degenerate="no-sale") == NO_SALE_PRICE

    def test_two_states_only(self, pricing):
        with pytest.raises(ValueError, match="two-state"):
            scheme_price(pricing, DirectScheme.of([1.0, 0.0, 0.0]))

    def test_prices_from_schemes(self, pricing):
        prices = prices_from_schemes(
            pricing, [DirectScheme.of([1.0, 0.1]), DirectScheme.of([0.5, 0.1])]
        )
        np.testing.assert_allclose(prices, [0.099, 0.198])

    def test_pricing_regret(self, pricing):
        assert pricing_regret(pricing, [0.25, 0.2, 0.3]) == pytest.approx(0.0 + 0.05 + 0.25)

    def test_transcript(self, pricing):
        inst = build_pricing_instance(pricing)
        env = Environment(inst, 100, seed=0, log_commits=True)
        env.play_rounds(DirectScheme.of([1.0, 0.2]), 60)
        env.play_rounds(DirectScheme.zeros(2), 40)
        expected = 60 * (0.25 - 0.198) + 40 * 0.25
        assert transcript_pricing_regret(pricing, env.commit_log) == pytest.approx(expected)
        assert transcript_pricing_regret(pricing, env.commit_log) <= env.expected_regret + 1
