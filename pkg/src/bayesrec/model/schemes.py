"""Signaling scheme and posterior value types."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

SCHEME_TOL = 1e-12


def _readonly(arr: NDArray[np.float64]) -> NDArray[np.float64]:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DirectScheme:
    """Binary-signal scheme: ``p[i]`` is the probability of recommending action 1 in state i.

    Entries within ``SCHEME_TOL`` outside [0, 1] are clipped; anything further out is
    rejected.
    """

    p: NDArray[np.float64]

    def __post_init__(self) -> None:
        arr = np.array(self.p, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"A direct scheme is a 1-D vector, got shape {arr.shape}.")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"Scheme entries must be finite, got {arr.tolist()}.")
        if np.any(arr < -SCHEME_TOL) or np.any(arr > 1.0 + SCHEME_TOL):
            raise ValueError(f"Scheme entries must lie in [0, 1], got {arr.tolist()}.")
        object.__setattr__(self, "p", _readonly(np.clip(arr, 0.0, 1.0)))

    @classmethod
    def of(cls, values: ArrayLike) -> "DirectScheme":
        return cls(np.asarray(values, dtype=np.float64))

    @classmethod
    def zeros(cls, m: int) -> "DirectScheme":
        """The no-information scheme: never recommends action 1."""
        return cls(np.zeros(m))

    @property
    def m(self) -> int:
        return int(self.p.shape[0])

    def key(self) -> tuple[float, ...]:
        """Hashable identity used to deduplicate identical schemes."""
        return tuple(float(x) for x in self.p)

    def __repr__(self) -> str:
        return f"DirectScheme({np.array2string(self.p, precision=6, separator=', ')})"


@dataclass(frozen=True, eq=False)
class GeneralScheme:
    """Scheme over an arbitrary finite signal space: ``table[i, s]`` = P(signal s | state i)."""

    table: NDArray[np.float64]

    def __post_init__(self) -> None:
        arr = np.array(self.table, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise ValueError(f"A scheme table must be (m, signals), got shape {arr.shape}.")
        if np.any(arr < -SCHEME_TOL):
            raise ValueError("Scheme table has negative entries.")
        rows = arr.sum(axis=1)
        if np.any(np.abs(rows - 1.0) > SCHEME_TOL):
            raise ValueError(f"Scheme rows must sum to 1, got {rows.tolist()}.")
        object.__setattr__(self, "table", _readonly(np.clip(arr, 0.0, None)))

    @property
    def m(self) -> int:
        return int(self.table.shape[0])

    @property
    def signal_count(self) -> int:
        return int(self.table.shape[1])


@dataclass(frozen=True, eq=False)
class Posterior:
    """User posterior over states after a signal."""

    belief: NDArray[np.float64]

    def __post_init__(self) -> None:
        arr = np.array(self.belief, dtype=np.float64)
        if arr.ndim != 1 or np.any(arr < 0.0):
            raise ValueError(f"A posterior is a non-negative vector, got {arr.tolist()}.")
        if abs(float(arr.sum()) - 1.0) > SCHEME_TOL:
            raise ValueError(f"A posterior must sum to 1, got {float(arr.sum())!r}.")
        object.__setattr__(self, "belief", _readonly(arr))


def to_general(scheme: DirectScheme) -> GeneralScheme:
    """View a direct scheme as a two-signal table; column 1 is "recommend action 1"."""
    return GeneralScheme(np.column_stack([1.0 - scheme.p, scheme.p]))


def is_threshold_scheme(scheme: DirectScheme, tol: float = 1e-12) -> bool:
    """True when at most one entry lies strictly inside (0, 1)."""
    p = scheme.p
    fractional = (p > tol) & (p < 1.0 - tol)
    return int(np.count_nonzero(fractional)) <= 1
