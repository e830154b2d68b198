"""Scheme families the online policies query.

All constructions weight states by ``prior * platform_value`` so that the value of a
persuasive scheme is exactly the target they are built for.
"""

from __future__ import annotations

from typing import Collection, Sequence

import numpy as np

from .errors import UnattainableTarget
from .instance import Instance
from .schemes import DirectScheme

TARGET_TOL = 1e-12


def _weight(inst: Instance, state: int) -> float:
    return float(inst.value_weight[state])


def make_rank_scheme(inst: Instance, rank: Sequence[int], u: float) -> DirectScheme:
    """Threshold scheme along ``rank`` whose recommended value is ``u``.

    ``rank`` lists the states from highest to lowest. States before the threshold
    are always recommended, states after it never; the threshold state takes the
    fractional remainder.

    Raises:
        UnattainableTarget: ``u`` is negative or exceeds the total value weight.
    """
    m = inst.m
    if sorted(rank) != list(range(m)):
        raise ValueError(f"rank must be a permutation of 0..{m - 1}, got {list(rank)}.")
    weight = inst.value_weight
    total = float(weight.sum())
    if u < -TARGET_TOL or u > total + TARGET_TOL:
        raise UnattainableTarget(f"target {u!r} outside [0, {total!r}].")

    p = np.zeros(m)
    prefix = 0.0
    for state in rank:
        remaining = u - prefix
        w = float(weight[state])
        if remaining <= w:
            p[state] = min(max(remaining / w, 0.0), 1.0) if w > 0.0 else 0.0
            return DirectScheme(p)
        p[state] = 1.0
        prefix += w
    # u equals the total weight up to rounding: every state is recommended.
    return DirectScheme(p)


def make_phase1_scheme(inst: Instance, i: int, j: int, lb_u: float) -> DirectScheme:
    """Pair scheme: always recommend in ``i``, recommend in ``j`` with value ``lb_u``."""
    p = np.zeros(inst.m)
    p[i] = 1.0
    if i == j:
        if lb_u > _weight(inst, i) + TARGET_TOL:
            raise UnattainableTarget(f"lower bound {lb_u!r} exceeds the weight of state {i}.")
        return DirectScheme(p)
    w = _weight(inst, j)
    if w <= 0.0 or lb_u > w + TARGET_TOL:
        raise UnattainableTarget(f"lower bound {lb_u!r} exceeds the weight {w!r} of state {j}.")
    p[j] = min(lb_u / w, 1.0)
    return DirectScheme(p)


def make_phase2_scheme(
    inst: Instance, i: int, j: int, lb_u: float, k: int, horizon: int
) -> DirectScheme:
    """Pair scheme at half value plus a small probe ``3 / (2 m T)`` on state ``k``."""
    if k in (i, j):
        raise ValueError(f"probe state {k} must differ from the pair ({i}, {j}).")
    p = np.zeros(inst.m)
    p[i] = 1.0
    target = lb_u / 2.0
    if i == j:
        if target > _weight(inst, i) + TARGET_TOL:
            raise UnattainableTarget(f"half lower bound {target!r} exceeds state {i}'s weight.")
    else:
        w = _weight(inst, j)
        if w <= 0.0 or target > w + TARGET_TOL:
            raise UnattainableTarget(f"half lower bound {target!r} exceeds state {j}'s weight.")
        p[j] = min(target / w, 1.0)
    p[k] = min(3.0 / (2.0 * inst.m * horizon), 1.0)
    return DirectScheme(p)


def make_interior_candidate(
    inst: Instance,
    i: int,
    j: int,
    lb_u: float,
    retained: Collection[int],
    horizon: int,
) -> DirectScheme:
    """Interior-point candidate for the restricted program over ``retained`` states."""
    if i not in retained or j not in retained:
        raise ValueError(f"pair ({i}, {j}) must lie in the retained states {sorted(retained)}.")
    m = inst.m
    scale = m * m * horizon
    p = np.zeros(m)
    for state in retained:
        p[state] = 1.0 / (8.0 * scale)
    p[i] = 0.5 + 1.0 / (16.0 * scale)
    if j != i:
        w = _weight(inst, j)
        target = lb_u / 8.0
        if w <= 0.0 or target > w + TARGET_TOL:
            raise UnattainableTarget(f"lower bound / 8 = {target!r} exceeds state {j}'s weight.")
        p[j] = min(target / w, 1.0)
    return DirectScheme(p)
