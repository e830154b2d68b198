"""Bayes-plausibility for binary-state posteriors.

A distribution over posteriors ``P(state 1) = x_s`` (with probabilities ``p_s``) is
implementable by some signaling scheme iff its mean equals the prior mass of state 1.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from bayesrec.model.errors import NotADistribution
from bayesrec.model.schemes import GeneralScheme

PLAUSIBILITY_TOL = 1e-10
DISTRIBUTION_TOL = 1e-10


def as_distribution(
    values: Sequence[float], probs: Sequence[float]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Validate a finite distribution on [0, 1] and return it as arrays.

    Raises:
        NotADistribution: probabilities are negative or do not sum to one.
        ValueError: lengths differ or a value lies outside [0, 1].
    """
    x = np.asarray(values, dtype=np.float64)
    q = np.asarray(probs, dtype=np.float64)
    if x.ndim != 1 or x.shape != q.shape or x.size == 0:
        raise ValueError(
            f"values and probs must be equal-length vectors, got {x.shape}, {q.shape}."
        )
    if np.any(q < -DISTRIBUTION_TOL):
        raise NotADistribution(f"probabilities must be non-negative, got {q.tolist()}.")
    total = float(q.sum())
    if abs(total - 1.0) > DISTRIBUTION_TOL:
        raise NotADistribution(f"probabilities sum to {total!r}, not 1.")
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError(f"values must lie in [0, 1], got {x.tolist()}.")
    return x, np.clip(q, 0.0, None)


def check_bayes_plausible(
    prior_mass: float, posterior_values: Sequence[float], posterior_probs: Sequence[float]
) -> bool:
    """True when the posterior distribution averages back to ``prior_mass``."""
    x, q = as_distribution(posterior_values, posterior_probs)
    return abs(float(q @ x) - prior_mass) <= PLAUSIBILITY_TOL


def scheme_from_posteriors(
    prior_mass: float, posterior_values: Sequence[float], posterior_probs: Sequence[float]
) -> GeneralScheme:
    """Scheme with one signal per posterior that induces the given distribution.

    Signal ``s`` is sent with probability ``p_s x_s / lambda`` in state 1 and
    ``p_s (1 - x_s) / (1 - lambda)`` in state 2.

    Raises:
        NotADistribution: ``posterior_probs`` is not a distribution.
        ValueError: the prior is degenerate or the distribution is not Bayes-plausible.
    """
    if not 0.0 < prior_mass < 1.0:
        raise ValueError(f"prior mass must lie strictly inside (0, 1), got {prior_mass}.")
    x, q = as_distribution(posterior_values, posterior_probs)
    if not check_bayes_plausible(prior_mass, x, q):
        raise ValueError(
            f"posteriors average to {float(q @ x)!r}, not the prior mass {prior_mass!r}."
        )
    table = np.vstack([q * x / prior_mass, q * (1.0 - x) / (1.0 - prior_mass)])
    table /= table.sum(axis=1, keepdims=True)
    return GeneralScheme(table)
