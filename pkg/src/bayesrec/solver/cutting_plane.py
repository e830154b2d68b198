"""Cutting-plane maximisation of a linear objective over a membership-oracle region.

The solver works in the free coordinates and keeps a localization polytope ``P``:
the known region plus every cut so far. Each iteration

1. bounds the optimum from above by maximising the objective over ``P``,
2. stops once that bound is within ``eps`` of the best member found,
3. queries the Chebyshev centre ``y`` of ``P``: a member raises the best value and
   adds the objective cut ``c . x >= c . y``; a non-member adds a separating cut built
   by :func:`~bayesrec.solver.separation.separation_from_membership`,
4. optionally tests the point ``eps / 2`` below the upper bound on the segment from
   the bounding vertex to the interior point.

The bisection tolerance is ``r eps / (4 R)``: a boundary located to that accuracy
moves any cut by at most an ``eps / 4`` fraction of the objective range over the
outer ball.
"""

from __future__ import annotations

from logging import getLogger

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import linprog

from bayesrec.model.errors import BudgetExceeded

from .oracles import OracleAborted
from .query import LPQuery, LPResult, SolverConfig
from .separation import separation_from_membership

logger = getLogger(__name__)

MIN_CHEBYSHEV_RADIUS = 1e-13


class _Counted:
    """Embeds free coordinates into the full vector and counts queries."""

    def __init__(self, query: LPQuery, free: NDArray[np.int64]) -> None:
        self._query = query
        self._free = free
        self.queries = 0

    def full(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        out = np.zeros(self._query.dimension)
        out[self._free] = x
        return out

    def __call__(self, x: NDArray[np.float64]) -> bool:
        self.queries += 1
        return bool(self._query.oracle(self.full(x)))


class _Polytope:
    """``{x in [0, 1]^d : A x <= b}`` with helpers for the two LPs the solver needs."""

    def __init__(self, A: NDArray[np.float64], b: NDArray[np.float64]) -> None:
        d = A.shape[1]
        self.d = d
        self.rows = [row for row in A]
        self.bounds = [float(v) for v in b]
        for k in range(d):
            e = np.zeros(d)
            e[k] = 1.0
            self.rows.extend([e, -e])
            self.bounds.extend([1.0, 0.0])

    def add(self, row: NDArray[np.float64], bound: float) -> None:
        norm = float(np.linalg.norm(row))
        if norm == 0.0:
            return
        self.rows.append(row / norm)
        self.bounds.append(bound / norm)

    def maximize(self, c: NDArray[np.float64]) -> tuple[NDArray[np.float64], float] | None:
        res = linprog(
            -c,
            A_ub=np.array(self.rows),
            b_ub=np.array(self.bounds),
            bounds=[(None, None)] * self.d,
            method="highs",
        )
        if res.status != 0:
            return None
        return res.x, float(c @ res.x)

    def chebyshev_center(self) -> tuple[NDArray[np.float64], float] | None:
        A = np.array(self.rows)
        norms = np.linalg.norm(A, axis=1)
        objective = np.zeros(self.d + 1)
        objective[-1] = -1.0
        res = linprog(
            objective,
            A_ub=np.column_stack([A, norms]),
            b_ub=np.array(self.bounds),
            bounds=[(None, None)] * self.d + [(0.0, None)],
            method="highs",
        )
        if res.status != 0:
            return None
        return res.x[:-1], float(res.x[-1])


def _result(
    counted: _Counted,
    c: NDArray[np.float64],
    best: NDArray[np.float64],
    *,
    succeeded: bool,
    upper: float,
    iterations: int,
    eps: float,
) -> LPResult:
    value = float(c @ best)
    return LPResult(
        point=counted.full(best),
        oracle_queries=counted.queries,
        succeeded=succeeded,
        value=value,
        upper_bound=upper,
        iterations=iterations,
        converged=upper - value <= eps,
    )


def maximize(q: LPQuery, config: SolverConfig | None = None) -> LPResult:
    """Find an ``eps``-optimal member of the query's region.

    Returns ``succeeded=False`` when the interior point is rejected or the oracle
    aborts; the returned point is then the best member certified so far (or the
    interior point).

    Raises:
        BudgetExceeded: the iteration cap or the query budget was hit. The partial
            result is attached to the exception.
    """
    cfg = config or SolverConfig()
    free = q.free
    counted = _Counted(q, free)
    c = q.objective[free]
    x0 = q.interior_point[free]
    eps = q.precision
    tol = q.inner_radius * eps / (4.0 * q.outer_radius)
    budget = q.budget(cfg)
    assert q.A_ub is not None and q.b_ub is not None
    poly = _Polytope(q.A_ub[:, free], q.b_ub)

    best = x0.copy()
    upper = float("inf")
    iterations = 0
    try:
        if free.size == 0 or not counted(x0):
            logger.warning("interior point rejected by the membership oracle")
            return _result(
                counted, c, best, succeeded=False, upper=upper, iterations=0, eps=eps
            )
        best_value = float(c @ best)

        while True:
            bound = poly.maximize(c)
            if bound is None:
                logger.debug("localization polytope became empty; stopping")
                break
            vertex, upper = bound
            if upper - best_value <= eps:
                break
            if iterations >= cfg.max_iterations or counted.queries >= budget:
                partial = _result(
                    counted,
                    c,
                    best,
                    succeeded=False,
                    upper=upper,
                    iterations=iterations,
                    eps=eps,
                )
                raise BudgetExceeded(
                    f"solver stopped after {iterations} iterations and {counted.queries} "
                    f"queries (budget {budget}) with gap {upper - best_value:.3g}.",
                    partial,
                )
            iterations += 1

            center = poly.chebyshev_center()
            if center is None or center[1] < MIN_CHEBYSHEV_RADIUS:
                logger.debug("localization polytope is flat; stopping")
                break
            y, radius = center
            sep = separation_from_membership(
                counted, x0, y, tol, probe_radius=radius if cfg.fit_normals else 0.0
            )
            if sep.inside:
                if float(c @ y) > best_value:
                    best, best_value = y, float(c @ y)
                poly.add(-c, -best_value)
                continue
            assert sep.normal is not None
            poly.add(sep.normal, sep.offset)

            if cfg.pull_step:
                gap = upper - float(c @ x0)
                if gap > 0.0:
                    theta = min(max((eps / 2.0) / gap, 0.0), 1.0)
                    trial = vertex + theta * (x0 - vertex)
                    if float(c @ trial) > best_value and counted(trial):
                        best, best_value = trial, float(c @ trial)
                        poly.add(-c, -best_value)

        # Final certification of the returned point.
        succeeded = counted(best)
    except OracleAborted as exc:
        logger.warning("membership oracle aborted: %s", exc)
        return _result(
            counted, c, best, succeeded=False, upper=upper, iterations=iterations, eps=eps
        )

    logger.info(
        "solver finished: value=%.6g upper=%.6g iterations=%d queries=%d",
        float(c @ best),
        upper,
        iterations,
        counted.queries,
    )
    return _result(
        counted, c, best, succeeded=succeeded, upper=upper, iterations=iterations, eps=eps
    )
