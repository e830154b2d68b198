"""Interface records of the membership-oracle linear-program solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from logging import getLogger
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

logger = getLogger(__name__)

MembershipOracle = Callable[[NDArray[np.float64]], bool]

KNOWN_TOL = 1e-12


@dataclass
class SolverConfig:
    """Configuration for :func:`bayesrec.solver.cutting_plane.maximize`.

    Attributes:
        budget_constant: Constant ``C`` of the query budget ``C * m^2 * log2(...)^k``.
        polylog_exponent: Exponent ``k`` of the query budget.
        max_iterations: Cap on cutting-plane iterations.
        fit_normals: Fit each cut's normal through several boundary points instead of
            using the direction from the boundary point to the rejected point.
        pull_step: After every cut, test the point that trails the current upper
            bound by ``eps / 2`` on the segment towards the interior point.
    """

    budget_constant: float = 1.0
    polylog_exponent: int = 3
    max_iterations: int = 2000
    fit_normals: bool = True
    pull_step: bool = True


def query_budget(
    m: int,
    outer_radius: float,
    precision: float,
    confidence: float,
    inner_radius: float,
    *,
    constant: float = 1.0,
    exponent: int = 3,
) -> int:
    """``ceil(C * m^2 * log2(m R / (eps delta r))^k)``, with the logarithm floored at 1."""
    log_term = math.log2(m * outer_radius / (precision * confidence * inner_radius))
    return math.ceil(constant * m * m * max(log_term, 1.0) ** exponent)


def _vector(values: ArrayLike, *, name: str) -> NDArray[np.float64]:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be a finite 1-D vector, got {arr!r}.")
    return arr


@dataclass
class LPQuery:
    """Maximise ``objective . x`` over an unknown convex region inside a known polytope.

    The known region is the box ``[0, 1]^m`` intersected with ``A_ub x <= b_ub`` and
    ``x[i] = 0`` for ``i`` in ``fixed_zero``. The oracle answers membership of the
    unknown region and is only asked about points of the known region.

    Attributes:
        objective: (m,) objective vector.
        oracle: Membership predicate.
        interior_point: (m,) point whose ``inner_radius`` ball (in the free
            coordinates) lies in the feasible region.
        inner_radius: r.
        outer_radius: R, radius of a ball around the interior point containing the
            feasible region.
        precision: eps in (0, 1).
        confidence: delta in (0, 1).
        A_ub: (k, m) known inequality rows.
        b_ub: (k,) known inequality bounds.
        fixed_zero: Coordinates pinned to zero.
    """

    objective: NDArray[np.float64]
    oracle: MembershipOracle
    interior_point: NDArray[np.float64]
    inner_radius: float
    outer_radius: float
    precision: float
    confidence: float
    A_ub: NDArray[np.float64] | None = None
    b_ub: NDArray[np.float64] | None = None
    fixed_zero: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        self.objective = _vector(self.objective, name="objective")
        self.interior_point = _vector(self.interior_point, name="interior_point")
        m = self.objective.shape[0]
        if self.interior_point.shape[0] != m:
            raise ValueError(f"interior_point has length {self.interior_point.shape[0]}, m={m}.")
        if not 0.0 < self.inner_radius <= self.outer_radius:
            raise ValueError(
                f"radii must satisfy 0 < r <= R, got r={self.inner_radius}, R={self.outer_radius}."
            )
        for name, value in (("precision", self.precision), ("confidence", self.confidence)):
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value}.")
        if self.A_ub is None:
            self.A_ub = np.zeros((0, m))
            self.b_ub = np.zeros(0)
        self.A_ub = np.atleast_2d(np.array(self.A_ub, dtype=np.float64))
        self.b_ub = _vector(self.b_ub if self.b_ub is not None else [], name="b_ub")
        if self.A_ub.shape != (self.b_ub.shape[0], m):
            expected = (self.b_ub.shape[0], m)
            raise ValueError(f"A_ub has shape {self.A_ub.shape}, expected {expected}.")
        self.fixed_zero = frozenset(int(i) for i in self.fixed_zero)
        if any(not 0 <= i < m for i in self.fixed_zero):
            raise ValueError(
                f"fixed_zero {sorted(self.fixed_zero)} has indices outside 0..{m - 1}."
            )
        self._check_interior()

    @property
    def dimension(self) -> int:
        return int(self.objective.shape[0])

    @property
    def free(self) -> NDArray[np.int64]:
        kept = [i for i in range(self.dimension) if i not in self.fixed_zero]
        return np.array(kept, dtype=np.int64)

    def known_margin(self, x: NDArray[np.float64]) -> float:
        """Euclidean distance from ``x`` to the boundary of the known region (free coordinates)."""
        free = self.free
        xf = x[free]
        margins = [float(np.min(xf)), float(np.min(1.0 - xf))] if free.size else [np.inf]
        assert self.A_ub is not None and self.b_ub is not None
        for row, bound in zip(self.A_ub, self.b_ub):
            norm = float(np.linalg.norm(row[free]))
            if norm > 0.0:
                margins.append((bound - float(row @ x)) / norm)
            elif bound < -KNOWN_TOL:
                margins.append(-np.inf)
        return min(margins)

    def in_known_region(self, x: NDArray[np.float64], tol: float = KNOWN_TOL) -> bool:
        fixed = list(self.fixed_zero)
        if fixed and np.any(np.abs(x[fixed]) > tol):
            return False
        return self.known_margin(x) >= -tol

    def _check_interior(self) -> None:
        fixed = list(self.fixed_zero)
        if fixed and np.any(self.interior_point[fixed] != 0.0):
            raise ValueError("interior_point must be zero on the fixed coordinates.")
        margin = self.known_margin(self.interior_point)
        if margin < self.inner_radius * (1.0 - 1e-9):
            raise ValueError(
                f"interior_point is {margin:.3g} from the known boundary, "
                f"less than the inner radius {self.inner_radius:.3g}."
            )

    def budget(self, config: SolverConfig) -> int:
        return query_budget(
            self.dimension,
            self.outer_radius,
            self.precision,
            self.confidence,
            self.inner_radius,
            constant=config.budget_constant,
            exponent=config.polylog_exponent,
        )


@dataclass
class LPResult:
    """Outcome of a solver run.

    Attributes:
        point: (m,) best point found; always inside the known region.
        oracle_queries: Membership queries issued.
        succeeded: The point passed a final membership query.
        value: ``objective . point``.
        upper_bound: Largest objective over the final localization polytope.
        iterations: Cutting-plane iterations.
        converged: ``upper_bound - value <= precision`` at termination.
    """

    point: NDArray[np.float64]
    oracle_queries: int
    succeeded: bool
    value: float = float("nan")
    upper_bound: float = float("nan")
    iterations: int = 0
    converged: bool = False
