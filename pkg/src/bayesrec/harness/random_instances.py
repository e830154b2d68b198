"""Random instances satisfying both standing assumptions.

The prior (and optionally the user's belief) is Dirichlet(1, ..., 1). A sign pattern
for the prior-weighted utility gaps is drawn and redrawn until it has a state of each
sign. Magnitudes are uniform on ``[omega_low, omega_high]``. When the positive part
outweighs the negative part, the negative gaps are scaled up so that their sum wins by
a random margin. The utility gaps are then recovered by dividing by the belief.
"""

from __future__ import annotations

from logging import getLogger

import numpy as np

from bayesrec.config.experiment_config import RandomInstanceSpec
from bayesrec.model.instance import Instance, validate_instance

logger = getLogger(__name__)

MIN_BELIEF = 1e-6
MIN_VALUE = 0.1


def _simplex(rng: np.random.Generator, m: int) -> np.ndarray:
    # Keep every state reachable so the gaps stay recoverable from omega.
    while True:
        vec = rng.dirichlet(np.ones(m))
        if np.all(vec >= MIN_BELIEF):
            return vec


def random_omega(rng: np.random.Generator, m: int, low: float, high: float) -> np.ndarray:
    """Prior-weighted utility gaps with a positive entry and a negative sum."""
    if m < 2:
        raise ValueError(f"both assumptions need at least two states, got m={m}.")
    while True:
        signs = rng.integers(0, 2, size=m).astype(bool)
        if signs.any() and not signs.all():
            break
    magnitude = rng.uniform(low, high, size=m)
    positive = float(magnitude[signs].sum())
    negative = float(magnitude[~signs].sum())
    if negative <= positive:
        margin = rng.uniform(1.05, 2.0)
        magnitude[~signs] *= margin * positive / negative
    return np.where(signs, magnitude, -magnitude)


def random_instance(spec: RandomInstanceSpec, rng: np.random.Generator) -> Instance:
    """Draw one valid instance from the family described by ``spec``."""
    m = spec.m
    prior = _simplex(rng, m)
    belief = _simplex(rng, m) if spec.distinct_belief else prior
    value = rng.uniform(MIN_VALUE, 1.0, size=m) if spec.random_values else None
    w = random_omega(rng, m, spec.omega_low, spec.omega_high)
    inst = Instance.from_lists(
        prior=(prior / prior.sum()).tolist(),
        utility_gap=(w / belief).tolist(),
        user_belief=None if belief is prior else (belief / belief.sum()).tolist(),
        platform_value=None if value is None else value.tolist(),
    )
    validate_instance(inst)
    logger.debug("drew instance m=%d omega=%s", m, np.round(inst.omega, 6).tolist())
    return inst


def instance_for(spec: RandomInstanceSpec) -> Instance:
    """The instance a generator spec denotes, drawn from its own seed."""
    return random_instance(spec, np.random.default_rng(spec.seed))
