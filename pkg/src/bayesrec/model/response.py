"""Bayesian user model: posteriors, best responses, persuasiveness and platform value."""

from __future__ import annotations

import numpy as np

from .errors import ZeroProbabilitySignal
from .instance import Instance, omega
from .schemes import DirectScheme, GeneralScheme, Posterior, to_general

# Indifferent users take action 1; boundary schemes count as persuasive.
RESPONSE_TOL = 1e-12


def posterior(inst: Instance, scheme: GeneralScheme | DirectScheme, signal: int) -> Posterior:
    """Bayes posterior of the user (prior ``user_belief``) after observing ``signal``.

    Raises:
        ZeroProbabilitySignal: the signal has zero marginal probability.
    """
    table = to_general(scheme).table if isinstance(scheme, DirectScheme) else scheme.table
    if not 0 <= signal < table.shape[1]:
        raise ValueError(f"signal {signal} is outside the signal space of size {table.shape[1]}.")
    joint = inst.user_belief * table[:, signal]
    marginal = float(joint.sum())
    if marginal <= 0.0:
        raise ZeroProbabilitySignal(f"signal {signal} has zero marginal probability.")
    belief = joint / marginal
    # Renormalise away the last ulp so the Posterior invariant holds exactly.
    return Posterior(belief / belief.sum())


def best_response(inst: Instance, post: Posterior) -> int:
    """Action maximising the user's expected utility; ties go to action 1."""
    gain = float(np.dot(post.belief, inst.utility_gap))
    return 1 if gain >= -RESPONSE_TOL else 0


def signal_responses(inst: Instance, scheme: GeneralScheme | DirectScheme) -> list[int | None]:
    """Best response to every signal, ``None`` for signals that are never realized."""
    table = to_general(scheme).table if isinstance(scheme, DirectScheme) else scheme.table
    responses: list[int | None] = []
    for signal in range(table.shape[1]):
        try:
            responses.append(best_response(inst, posterior(inst, scheme, signal)))
        except ZeroProbabilitySignal:
            responses.append(None)
    return responses


def is_persuasive(inst: Instance, scheme: DirectScheme) -> bool:
    """A direct scheme is persuasive iff ``sum(omega * p) >= 0``."""
    return float(np.dot(omega(inst), scheme.p)) >= -RESPONSE_TOL


def recommend_probability(inst: Instance, scheme: DirectScheme) -> float:
    """Probability (under the platform prior) that the scheme recommends action 1."""
    return float(np.dot(inst.prior, scheme.p))


def general_platform_utility(inst: Instance, scheme: GeneralScheme) -> float:
    """Expected platform payoff of an arbitrary scheme against a best-responding user."""
    responses = signal_responses(inst, scheme)
    weight = inst.value_weight
    total = 0.0
    for signal, response in enumerate(responses):
        if response == 1:
            total += float(np.dot(weight, scheme.table[:, signal]))
    return total


def expected_platform_utility(inst: Instance, scheme: DirectScheme) -> float:
    """Expected platform payoff U(pi) of a direct scheme.

    Both signals are evaluated: the payoff of a non-persuasive scheme is whatever the
    user's actual responses give, not the recommended value.
    """
    return general_platform_utility(inst, to_general(scheme))
