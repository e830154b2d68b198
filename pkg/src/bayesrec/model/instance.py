"""Problem primitives of the online Bayesian recommendation problem."""

from __future__ import annotations

from dataclasses import dataclass, field
from logging import getLogger
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import AssumptionOneViolated, AssumptionTwoViolated, PriorNotSimplex

logger = getLogger(__name__)

SIMPLEX_TOL = 1e-12


def _frozen_vector(values: ArrayLike, *, name: str) -> NDArray[np.float64]:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain only finite values, got {arr.tolist()}.")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """A problem instance.

    Attributes:
        prior: (m,) platform prior over states.
        utility_gap: (m,) user's gain from action 1 over action 0 in each state.
        user_belief: (m,) user's prior over states. Defaults to ``prior``.
        platform_value: (m,) platform payoff in [0, 1] when the user takes action 1.
            Defaults to all ones.
    """

    prior: NDArray[np.float64]
    utility_gap: NDArray[np.float64]
    user_belief: NDArray[np.float64] = field(default=None)  # type: ignore[assignment]
    platform_value: NDArray[np.float64] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        prior = _frozen_vector(self.prior, name="prior")
        gap = _frozen_vector(self.utility_gap, name="utility_gap")
        belief = prior if self.user_belief is None else _frozen_vector(
            self.user_belief, name="user_belief"
        )
        if self.platform_value is None:
            value = np.ones_like(prior)
            value.setflags(write=False)
        else:
            value = _frozen_vector(self.platform_value, name="platform_value")

        m = prior.shape[0]
        if m < 1:
            raise ValueError("An instance needs at least one state.")
        for name, vec in (("utility_gap", gap), ("user_belief", belief), ("platform_value", value)):
            if vec.shape[0] != m:
                raise ValueError(f"{name} has length {vec.shape[0]}, expected m={m}.")
        if np.any(value < 0.0) or np.any(value > 1.0):
            raise ValueError(f"platform_value must lie in [0, 1], got {value.tolist()}.")

        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "utility_gap", gap)
        object.__setattr__(self, "user_belief", belief)
        object.__setattr__(self, "platform_value", value)

    @classmethod
    def from_lists(
        cls,
        prior: Sequence[float],
        utility_gap: Sequence[float],
        user_belief: Sequence[float] | None = None,
        platform_value: Sequence[float] | None = None,
    ) -> "Instance":
        belief = None if user_belief is None else np.asarray(user_belief, dtype=np.float64)
        value = None if platform_value is None else np.asarray(platform_value, dtype=np.float64)
        return cls(
            prior=np.asarray(prior, dtype=np.float64),
            utility_gap=np.asarray(utility_gap, dtype=np.float64),
            user_belief=belief,  # type: ignore[arg-type]
            platform_value=value,  # type: ignore[arg-type]
        )

    @property
    def m(self) -> int:
        return int(self.prior.shape[0])

    @property
    def omega(self) -> NDArray[np.float64]:
        """Prior-weighted utility gaps under the user's belief."""
        return omega(self)

    @property
    def value_weight(self) -> NDArray[np.float64]:
        """``prior * platform_value``: the value each state adds when recommended."""
        return self.prior * self.platform_value

    @property
    def max_value(self) -> float:
        return float(np.sum(self.value_weight))

    def to_dict(self) -> dict[str, object]:
        return {
            "m": self.m,
            "prior": self.prior.tolist(),
            "user_belief": self.user_belief.tolist(),
            "utility_gap": self.utility_gap.tolist(),
            "platform_value": self.platform_value.tolist(),
        }


def omega(inst: Instance) -> NDArray[np.float64]:
    """Return ``utility_gap * user_belief``.

    Only this product is identifiable from user behaviour, so everything downstream
    (persuasiveness, the hindsight optimum) is expressed through it.
    """
    return inst.utility_gap * inst.user_belief


def _check_simplex(vec: NDArray[np.float64], *, name: str) -> None:
    if np.any(vec < 0.0):
        raise PriorNotSimplex(f"{name} has negative entries: {vec.tolist()}.")
    total = float(np.sum(vec))
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise PriorNotSimplex(f"{name} sums to {total!r}, not 1 (tolerance {SIMPLEX_TOL}).")


def validate_instance(inst: Instance) -> None:
    """Check the instance invariants, raising the named error on the first failure.

    Raises:
        PriorNotSimplex: prior or user_belief is not a probability vector.
        AssumptionOneViolated: no state has omega > 0.
        AssumptionTwoViolated: sum of omega is not negative.
    """
    _check_simplex(inst.prior, name="prior")
    _check_simplex(inst.user_belief, name="user_belief")

    w = omega(inst)
    if not np.any(w > 0.0):
        raise AssumptionOneViolated(
            f"no state has a positive prior-weighted utility gap: omega={w.tolist()}."
        )
    total = float(np.sum(w))
    if not total < 0.0:
        raise AssumptionTwoViolated(
            f"prior-weighted utility gaps must sum below 0, got {total!r} (omega={w.tolist()})."
        )
    logger.debug("Validated instance with m=%d, sum(omega)=%.6g", inst.m, total)
