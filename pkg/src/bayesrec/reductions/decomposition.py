"""Mean-preserving decomposition of a distribution into binary-support components.

Any finite distribution on [0, 1] with mean ``lam`` is a convex combination of
distributions that each have mean ``lam`` and at most two support points. The
construction pairs one point above the mean with one below it. Each pair gets a
scaled weight ``f`` that exhausts the smaller side. The component of a pair
``(x_minus, x_plus)`` takes ``x_plus`` with probability
``(lam - x_minus) / (x_plus - x_minus)`` and carries weight ``f * (x_plus - x_minus)``.
An atom exactly at the mean becomes a singleton component.
"""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from bayesrec.model.errors import EmptySide

from .plausibility import as_distribution

logger = getLogger(__name__)

ATOM_TOL = 1e-12
VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class Component:
    """A distribution with support of size one or two.

    Attributes:
        support: Support points, ascending.
        probabilities: Probability of each support point.
    """

    support: tuple[float, ...]
    probabilities: tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.dot(self.support, self.probabilities))


@dataclass(frozen=True)
class Decomposition:
    """Convex combination ``sum_k weights[k] * components[k]``."""

    components: tuple[Component, ...]
    weights: NDArray[np.float64]
    mean: float

    def mass_at(self, value: float) -> float:
        """Probability the mixture puts on ``value``."""
        total = 0.0
        for weight, comp in zip(self.weights, self.components):
            for x, p in zip(comp.support, comp.probabilities):
                if abs(x - value) <= ATOM_TOL:
                    total += float(weight) * p
        return total


def _pair_component(lo: float, hi: float, lam: float) -> Component:
    p_hi = (lam - lo) / (hi - lo)
    return Component(support=(lo, hi), probabilities=(1.0 - p_hi, p_hi))


def decompose_binary_support(
    support: Sequence[float], probs: Sequence[float]
) -> Decomposition:
    """Split a distribution into mean-preserving components of support size <= 2.

    Raises:
        NotADistribution: ``probs`` is not a distribution.
        EmptySide: all mass sits strictly on one side of the mean.
        ValueError: support points repeat or the result fails verification.
    """
    x, q = as_distribution(support, probs)
    if np.unique(x).size != x.size:
        raise ValueError(f"support points must be distinct, got {x.tolist()}.")
    lam = float(q @ x)

    components: list[Component] = []
    weights: list[float] = []
    atom = np.abs(x - lam) <= ATOM_TOL
    if np.any(atom):
        components.append(Component(support=(lam,), probabilities=(1.0,)))
        weights.append(float(q[atom].sum()))

    above = [[float(v), float(m)] for v, m in zip(x, q) if v > lam + ATOM_TOL and m > 0.0]
    below = [[float(v), float(m)] for v, m in zip(x, q) if v < lam - ATOM_TOL and m > 0.0]
    if bool(above) != bool(below):
        raise EmptySide(
            f"mass lies only {'above' if above else 'below'} the mean {lam!r}: {x.tolist()}."
        )

    while above and below:
        hi, q_hi = above[-1]
        lo, q_lo = below[-1]
        if q_hi * (hi - lam) >= q_lo * (lam - lo):
            scaled = q_lo / (hi - lam)
            above[-1][1] = q_hi - scaled * (lam - lo)
            below.pop()
        else:
            scaled = q_hi / (lam - lo)
            below[-1][1] = q_lo - scaled * (hi - lam)
            above.pop()
        components.append(_pair_component(lo, hi, lam))
        weights.append(scaled * (hi - lo))
        # Drop sides whose leftover mass is rounding noise.
        if above and above[-1][1] <= VERIFY_TOL * 1e-3:
            above.pop()
        if below and below[-1][1] <= VERIFY_TOL * 1e-3:
            below.pop()

    leftover = sum(m for _, m in above) + sum(m for _, m in below)
    if leftover > VERIFY_TOL:
        raise ValueError(f"decomposition left {leftover!r} unassigned mass.")

    result = Decomposition(tuple(components), np.array(weights), lam)
    verify_decomposition(result, x, q)
    logger.debug("decomposed %d points into %d components", x.size, len(components))
    return result


def verify_decomposition(
    dec: Decomposition, support: NDArray[np.float64], probs: NDArray[np.float64]
) -> None:
    """Check weights, per-component means, support sizes and mixture consistency.

    Raises:
        ValueError: naming the first property that fails.
    """
    if np.any(dec.weights < -VERIFY_TOL) or abs(float(dec.weights.sum()) - 1.0) > VERIFY_TOL:
        raise ValueError(f"weights {dec.weights.tolist()} are not a convex combination.")
    for comp in dec.components:
        if len(comp.support) > 2:
            raise ValueError(f"component {comp} has more than two support points.")
        if abs(comp.mean - dec.mean) > VERIFY_TOL:
            raise ValueError(f"component {comp} has mean {comp.mean!r}, not {dec.mean!r}.")
    for value, mass in zip(support, probs):
        mixed = dec.mass_at(float(value))
        if abs(mixed - float(mass)) > VERIFY_TOL:
            raise ValueError(f"mixture puts {mixed!r} on {value!r}, expected {mass!r}.")


def linear_system_residual(
    dec: Decomposition, support: Sequence[float], probs: Sequence[float]
) -> float:
    """Largest violation of the pairing equations.

    With scaled weights ``f_ij = weight / (x_plus - x_minus)`` every point above the
    mean satisfies ``sum_j f_ij (lam - x_j) = q_i`` and every point below satisfies
    ``sum_i f_ij (x_i - lam) = q_j``.
    """
    x, q = as_distribution(support, probs)
    lam = dec.mean
    totals = {float(v): 0.0 for v in x}
    for weight, comp in zip(dec.weights, dec.components):
        if len(comp.support) != 2:
            continue
        lo, hi = comp.support
        scaled = float(weight) / (hi - lo)
        totals[hi] += scaled * (lam - lo)
        totals[lo] += scaled * (hi - lam)
    residual = 0.0
    for v, m in zip(x, q):
        if abs(v - lam) <= ATOM_TOL:
            continue
        residual = max(residual, abs(totals[float(v)] - float(m)))
    return residual


@dataclass(frozen=True)
class DecompositionCheck:
    """Measured errors of a decomposition against its source distribution.

    Attributes:
        mean_error: Largest ``|component mean - mean|``.
        max_support: Largest component support size.
        mass_error: Largest ``|mixture mass - source mass|`` over the source support.
        residual: :func:`linear_system_residual` of the pairing equations.
    """

    mean_error: float
    max_support: int
    mass_error: float
    residual: float

    @property
    def passed(self) -> bool:
        return (
            self.mean_error <= VERIFY_TOL
            and self.max_support <= 2
            and self.mass_error <= VERIFY_TOL
            and self.residual <= VERIFY_TOL
        )


def check_decomposition(
    dec: Decomposition, support: Sequence[float], probs: Sequence[float]
) -> DecompositionCheck:
    """Measure how closely ``dec`` reproduces the distribution ``(support, probs)``."""
    x, q = as_distribution(support, probs)
    mean_error = max((abs(c.mean - dec.mean) for c in dec.components), default=0.0)
    mass_error = max(
        (abs(dec.mass_at(float(v)) - float(m)) for v, m in zip(x, q)), default=0.0
    )
    return DecompositionCheck(
        mean_error=mean_error,
        max_support=max((len(c.support) for c in dec.components), default=0),
        mass_error=mass_error,
        residual=linear_system_residual(dec, support, probs),
    )
