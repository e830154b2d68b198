"""Shared fixtures: small hand-checked instances and a seeded generator."""

import numpy as np
import pytest

from bayesrec.model.instance import Instance


@pytest.fixture
def two_state() -> Instance:
    """Uniform prior, omega = (1, -2). Hindsight optimum (1, 1/2) with value 3/4."""
    return Instance.from_lists(prior=[0.5, 0.5], utility_gap=[2.0, -4.0])


@pytest.fixture
def three_state() -> Instance:
    """omega = (0.3, -0.1, -0.4) with a distinct user belief and non-unit values."""
    return Instance.from_lists(
        prior=[0.3, 0.3, 0.4],
        user_belief=[0.2, 0.4, 0.4],
        utility_gap=[1.5, -0.25, -1.0],
        platform_value=[1.0, 0.5, 0.8],
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)
