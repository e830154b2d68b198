"""Membership oracles: exact debug regions and the round-consuming persuasiveness probe."""

from __future__ import annotations

from dataclasses import dataclass, field
from logging import getLogger

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bayesrec.config.types import Verdict
from bayesrec.env.environment import Environment
from bayesrec.model.schemes import DirectScheme

logger = getLogger(__name__)

ORACLE_TOL = 1e-12


class OracleAborted(RuntimeError):
    """The oracle can no longer answer (its round budget is gone)."""


@dataclass
class HalfspaceOracle:
    """Exact region ``{x : normal . x >= offset}``."""

    normal: NDArray[np.float64]
    offset: float = 0.0
    queries: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        self.normal = np.asarray(self.normal, dtype=np.float64)

    @classmethod
    def of(cls, normal: ArrayLike, offset: float = 0.0) -> "HalfspaceOracle":
        return cls(np.asarray(normal, dtype=np.float64), offset)

    def __call__(self, x: NDArray[np.float64]) -> bool:
        self.queries += 1
        return float(self.normal @ x) >= self.offset - ORACLE_TOL


@dataclass
class BallOracle:
    """Exact region ``{x : |x - center| <= radius}``."""

    center: NDArray[np.float64]
    radius: float
    queries: int = field(default=0, init=False)

    def __call__(self, x: NDArray[np.float64]) -> bool:
        self.queries += 1
        return float(np.linalg.norm(x - self.center)) <= self.radius + ORACLE_TOL


@dataclass
class AlwaysInsideOracle:
    """The unknown constraint never binds."""

    queries: int = field(default=0, init=False)

    def __call__(self, x: NDArray[np.float64]) -> bool:
        self.queries += 1
        return True


class PersuasionOracle:
    """Answers membership of ``{p : scheme p is persuasive}`` by probing real rounds.

    Raises:
        OracleAborted: the environment ran out of rounds during a probe.
    """

    def __init__(self, env: Environment) -> None:
        self.env = env
        self.queries = 0
        self.accepted = 0

    def __call__(self, x: NDArray[np.float64]) -> bool:
        self.queries += 1
        scheme = DirectScheme(np.clip(x, 0.0, 1.0))
        result = self.env.check_persu(scheme)
        if result.verdict is Verdict.ROUND_EXHAUSTED:
            raise OracleAborted(f"rounds exhausted after {self.queries} membership queries.")
        if result.verdict is Verdict.PERSUASIVE:
            self.accepted += 1
            return True
        return False
