"""Optimum-in-hindsight signaling scheme.

The hindsight program maximises ``sum(prior * value * p)`` over ``p in [0, 1]^m``
subject to the single persuasiveness constraint ``sum(omega * p) >= 0``. It is a
fractional knapsack with a zero budget, so the optimum is a threshold scheme in
bang-per-buck order. :func:`solve_bruteforce` enumerates the polytope's vertices and
serves as an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from logging import getLogger
from typing import Collection

import numpy as np
from numpy.typing import NDArray

from bayesrec.model.errors import TooManyStates
from bayesrec.model.instance import Instance, omega
from bayesrec.model.schemes import DirectScheme

logger = getLogger(__name__)

BRUTEFORCE_MAX_STATES = 12
IC_TOL = 1e-12


@dataclass(frozen=True)
class HindsightSolution:
    """Optimal persuasive scheme and its value.

    Attributes:
        scheme: The optimal direct scheme.
        threshold_state: The single state allowed a fractional recommendation.
        value: Platform utility of ``scheme``.
    """

    scheme: DirectScheme
    threshold_state: int
    value: float


def bang_per_buck(inst: Instance) -> NDArray[np.float64]:
    """``omega / (prior * value)``; states with zero value weight map to +inf or -inf."""
    w = omega(inst)
    weight = inst.value_weight
    keys = np.empty(inst.m)
    for i in range(inst.m):
        if weight[i] > 0.0:
            keys[i] = w[i] / weight[i]
        else:
            keys[i] = np.inf if w[i] >= 0.0 else -np.inf
    return keys


def bang_per_buck_order(inst: Instance) -> list[int]:
    """States by descending bang-per-buck, ties kept in index order."""
    keys = bang_per_buck(inst)
    return sorted(range(inst.m), key=lambda i: -keys[i])


def _retained_mask(m: int, retained: Collection[int] | None) -> NDArray[np.bool_]:
    mask = np.ones(m, dtype=bool)
    if retained is not None:
        mask[:] = False
        mask[list(retained)] = True
    return mask


def solve_threshold(inst: Instance, retained: Collection[int] | None = None) -> HindsightSolution:
    """Greedy fractional-knapsack solution of the hindsight program.

    Args:
        inst: Problem instance.
        retained: Optional subset of states allowed a non-zero entry; the others are
            pinned to zero.
    """
    w = omega(inst)
    weight = inst.value_weight
    allowed = _retained_mask(inst.m, retained)
    p = np.zeros(inst.m)
    slack = 0.0
    threshold = -1
    last_taken = -1

    for state in bang_per_buck_order(inst):
        if not allowed[state]:
            continue
        if w[state] < 0.0 and weight[state] <= 0.0:
            # Costs IC budget and adds nothing.
            continue
        if slack + w[state] >= 0.0:
            p[state] = 1.0
            slack += w[state]
            last_taken = state
            continue
        p[state] = min(max(slack / -w[state], 0.0), 1.0)
        threshold = state
        break

    if threshold < 0:
        threshold = last_taken if last_taken >= 0 else 0
    value = float(np.dot(weight, p))
    logger.debug("Threshold solution: state=%d value=%.12g", threshold, value)
    return HindsightSolution(scheme=DirectScheme(p), threshold_state=threshold, value=value)


def _binary_rows(n: int) -> NDArray[np.float64]:
    if n == 0:
        return np.zeros((1, 0))
    return np.array(list(itertools.product((0.0, 1.0), repeat=n)))


def solve_bruteforce(inst: Instance, retained: Collection[int] | None = None) -> HindsightSolution:
    """Vertex enumeration of ``{p in [0,1]^m : sum(omega * p) >= 0}``.

    Every vertex has at most one fractional coordinate ``k``; for each ``k`` (and for
    "none") all binary assignments of the remaining coordinates are tried and ``p[k]``
    is solved from ``sum(omega * p) = 0``.

    Raises:
        TooManyStates: more than ``BRUTEFORCE_MAX_STATES`` free states.
    """
    allowed = np.flatnonzero(_retained_mask(inst.m, retained))
    n = allowed.size
    if n > BRUTEFORCE_MAX_STATES:
        raise TooManyStates(
            f"brute force enumerates 2^m vertices; m={n} exceeds {BRUTEFORCE_MAX_STATES}."
        )
    w = omega(inst)[allowed]
    weight = inst.value_weight[allowed]

    best_value = -np.inf
    best_p = np.zeros(n)
    best_k = -1

    rows = _binary_rows(n)
    feasible = rows @ w >= -IC_TOL
    if np.any(feasible):
        values = rows @ weight
        values[~feasible] = -np.inf
        idx = int(np.argmax(values))
        best_value, best_p = float(values[idx]), rows[idx].copy()

    others = _binary_rows(n - 1)
    for k in range(n):
        if w[k] == 0.0:
            continue
        rest = np.delete(np.arange(n), k)
        pk = -(others @ w[rest]) / w[k]
        ok = (pk >= 0.0) & (pk <= 1.0)
        if not np.any(ok):
            continue
        values = others @ weight[rest] + pk * weight[k]
        values[~ok] = -np.inf
        idx = int(np.argmax(values))
        if values[idx] > best_value + 1e-15:
            best_value = float(values[idx])
            best_p = np.zeros(n)
            best_p[rest] = others[idx]
            best_p[k] = pk[idx]
            best_k = k

    p = np.zeros(inst.m)
    if n:
        p[allowed] = best_p
    if best_k >= 0:
        threshold = int(allowed[best_k])
    else:
        taken = [int(s) for s in allowed[best_p > 0.5]]
        keys = bang_per_buck(inst)
        threshold = min(taken, key=lambda s: keys[s]) if taken else 0
    value = float(np.dot(inst.value_weight, p))
    return HindsightSolution(scheme=DirectScheme(p), threshold_state=threshold, value=value)
