"""Reduction from single-item dynamic pricing to online recommendation.

A buyer with private value ``v`` in (0, 1/2] is encoded as a two-state instance with
prior ``(eps, 1 - eps)``, ``eps = 1 / T``, where state 1 always persuades and state 2
persuades only up to ``v / (1 - eps)``. A recommendation scheme ``p`` maps to the
posted price ``(1 - eps) * p[1] / p[0]``, so a persuasive scheme is exactly a price the
buyer accepts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bayesrec.env.commit_log import CommitLog
from bayesrec.model.errors import DegenerateScheme
from bayesrec.model.instance import Instance
from bayesrec.model.schemes import DirectScheme

NO_SALE_PRICE = 1.0


@dataclass(frozen=True)
class PricingInstance:
    """Dynamic-pricing problem: horizon ``T`` and the buyer's private value."""

    horizon: int
    value: float

    def __post_init__(self) -> None:
        if self.horizon < 2:
            raise ValueError(f"horizon must be at least 2, got {self.horizon}.")
        if not 0.0 < self.value <= 0.5:
            raise ValueError(f"buyer value must lie in (0, 1/2], got {self.value}.")

    @property
    def eps(self) -> float:
        return 1.0 / self.horizon


def build_pricing_instance(p: PricingInstance) -> Instance:
    eps = p.eps
    return Instance.from_lists(prior=[eps, 1.0 - eps], utility_gap=[1.0, -eps / p.value])


def scheme_price(
    p: PricingInstance,
    scheme: DirectScheme,
    *,
    on_degenerate: Literal["raise", "no-sale"] = "raise",
) -> float:
    """Price posted for ``scheme`` after normalising ``scheme.p[0]`` to 1.

    Raises:
        DegenerateScheme: ``scheme.p[0] == 0`` and ``on_degenerate`` is ``"raise"``.
    """
    if scheme.m != 2:
        raise ValueError(f"the pricing reduction uses two-state schemes, got m={scheme.m}.")
    first, second = float(scheme.p[0]), float(scheme.p[1])
    if first <= 0.0:
        if on_degenerate == "raise":
            raise DegenerateScheme(f"{scheme} never recommends in state 1; no price exists.")
        return NO_SALE_PRICE
    return (1.0 - p.eps) * min(second / first, 1.0)


def prices_from_schemes(
    p: PricingInstance,
    schemes: Iterable[DirectScheme],
    *,
    on_degenerate: Literal["raise", "no-sale"] = "raise",
) -> NDArray[np.float64]:
    """Posted price for every scheme of a transcript."""
    return np.array([scheme_price(p, s, on_degenerate=on_degenerate) for s in schemes])


def pricing_regret(p: PricingInstance, prices: ArrayLike) -> float:
    """``sum_t (v - price_t * 1{price_t <= v})``."""
    arr = np.asarray(prices, dtype=np.float64)
    revenue = np.where(arr <= p.value, arr, 0.0)
    return float(np.sum(p.value - revenue))


def transcript_pricing_regret(p: PricingInstance, log: CommitLog) -> float:
    """Pricing regret of the prices induced by a recorded commit log.

    Rounds committed to a scheme that never recommends in state 1 post a price no
    buyer accepts.
    """
    total = 0.0
    for block in log.blocks:
        if not np.all(np.isfinite(block.p)):
            raise ValueError("commit log holds a non-direct scheme; it has no price.")
        price = scheme_price(p, DirectScheme(block.p), on_degenerate="no-sale")
        total += len(block.states) * pricing_regret(p, [price])
    return total
