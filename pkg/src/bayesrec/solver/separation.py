"""Separating halfspaces synthesised from membership queries.

Given an interior point ``x0`` and a rejected point ``y``, bisection on ``[x0, y]``
brackets the region's boundary to within ``tol``. The plain cut goes through the
outer bracket end with normal ``y - b``. When a probe radius ``h`` is given, ``d - 1``
further rays aimed at ``y +- h u_k`` (``u_k`` orthonormal to ``y - x0``) are bisected
as well, and the normal is the null vector of the bracketed boundary points. For a
halfspace region one of ``y + h u_k`` and ``y - h u_k`` is always rejected, since
their midpoint ``y`` is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from logging import getLogger

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import null_space

from .query import MembershipOracle

logger = getLogger(__name__)

FLOAT_TOL_FLOOR = 1e-15


@dataclass(frozen=True)
class Separation:
    """Answer of :func:`separation_from_membership`.

    When ``inside`` is false the cut keeps ``{x : normal . x <= offset}`` and removes
    the queried point.

    Attributes:
        inside: The queried point is a member.
        normal: Unit normal of the cut, ``None`` when inside.
        offset: Right-hand side of the cut.
        boundary: Outer bracket end on ``[x0, y]``.
        queries: Membership queries spent.
    """

    inside: bool
    normal: NDArray[np.float64] | None = None
    offset: float = float("nan")
    boundary: NDArray[np.float64] | None = None
    queries: int = 0


def bisection_steps(distance: float, tol: float) -> int:
    """``ceil(log2(distance / tol))`` halvings, zero when already within ``tol``."""
    if distance <= tol:
        return 0
    return math.ceil(math.log2(distance / tol))


def bisect_boundary(
    oracle: MembershipOracle,
    inside: NDArray[np.float64],
    outside: NDArray[np.float64],
    tol: float,
) -> tuple[NDArray[np.float64], NDArray[np.float64], int]:
    """Shrink ``[inside, outside]`` around the boundary to length ``<= tol``.

    Returns the inner end, the outer end and the number of queries spent.
    """
    lo, hi = inside.copy(), outside.copy()
    steps = bisection_steps(float(np.linalg.norm(outside - inside)), tol)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if oracle(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi, steps


def _fit_normal(
    oracle: MembershipOracle,
    x0: NDArray[np.float64],
    y: NDArray[np.float64],
    lo: NDArray[np.float64],
    hi: NDArray[np.float64],
    tol: float,
    probe_radius: float,
) -> tuple[NDArray[np.float64] | None, list[NDArray[np.float64]], int]:
    d = y.shape[0]
    queries = 0
    lows, highs = [lo], [hi]
    basis = null_space((y - x0)[None, :])
    for k in range(basis.shape[1]):
        for sign in (1.0, -1.0):
            z = y + sign * probe_radius * basis[:, k]
            queries += 1
            if oracle(z):
                continue
            zl, zh, spent = bisect_boundary(oracle, x0, z, tol)
            queries += spent
            lows.append(zl)
            highs.append(zh)
            break
    if len(highs) != d:
        return None, highs, queries
    mids = 0.5 * (np.array(lows) + np.array(highs))
    normals = null_space(mids[1:] - mids[0])
    if normals.shape[1] != 1:
        return None, highs, queries
    normal = normals[:, 0]
    lean = float(normal @ (y - mids[0]))
    if abs(lean) <= tol:
        return None, highs, queries
    return (normal if lean > 0.0 else -normal), highs, queries


def separation_from_membership(
    oracle: MembershipOracle,
    x0: NDArray[np.float64],
    y: NDArray[np.float64],
    tol: float,
    *,
    probe_radius: float = 0.0,
) -> Separation:
    """Decide whether ``y`` is a member and, if not, return a cut removing it.

    ``x0`` must be a member. Without a probe radius this costs
    ``1 + ceil(log2(|y - x0| / tol))`` queries.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if oracle(y):
        return Separation(inside=True, queries=1)
    lo, hi, queries = bisect_boundary(oracle, x0, y, tol)
    queries += 1

    normal: NDArray[np.float64] | None = None
    highs = [hi]
    if probe_radius > 0.0 and y.shape[0] >= 2:
        fit_tol = max(tol * min(1.0, probe_radius) / y.shape[0], FLOAT_TOL_FLOOR)
        if fit_tol < tol:
            lo, hi, spent = bisect_boundary(oracle, lo, hi, fit_tol)
            queries += spent
        normal, highs, spent = _fit_normal(oracle, x0, y, lo, hi, fit_tol, probe_radius)
        queries += spent
        if normal is None:
            logger.debug("normal fit degenerate; falling back to the segment direction")

    if normal is None:
        direction = y - hi
        if not np.any(direction):
            direction = y - x0
        normal = direction / np.linalg.norm(direction)
        offset = float(normal @ hi)
    else:
        offset = min(max(float(normal @ h) for h in highs) + tol, float(normal @ y))
    return Separation(inside=False, normal=normal, offset=offset, boundary=hi, queries=queries)
