"""Search whose exploration cost is polynomial in ``m log T``.

Three exploring phases precede exploitation:

* phase I halves a value lower bound until some pair scheme (always recommend in one
  state, reach the bound through another) is certified persuasive;
* phase II keeps the states whose small probe on top of a certified pair scheme still
  persuades, which drops states that would cost too much persuasiveness;
* phase III maximises the platform value over the kept states with the
  membership-oracle solver, starting from an interior scheme built for each pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from logging import getLogger

import numpy as np

from bayesrec.env.environment import Environment
from bayesrec.model.constructions import (
    make_interior_candidate,
    make_phase1_scheme,
    make_phase2_scheme,
)
from bayesrec.model.errors import BudgetExceeded, UnattainableTarget
from bayesrec.model.schemes import DirectScheme
from bayesrec.solver.cutting_plane import maximize
from bayesrec.solver.oracles import PersuasionOracle
from bayesrec.solver.query import LPQuery, LPResult, SolverConfig

from .common import PolicyTrace, ProbingPolicy, RoundsExhausted

logger = getLogger(__name__)

Pair = tuple[int, int]


@dataclass
class PolySearchConfig:
    """Configuration for :class:`PolySearch`.

    Attributes:
        solver: Membership-oracle solver settings used in phase III.
    """

    solver: SolverConfig = field(default_factory=SolverConfig)


def solver_parameters(m: int, horizon: int) -> dict[str, float]:
    """Inner/outer radius, precision and confidence for the phase-III programs."""
    return {
        "inner_radius": 1.0 / (16.0 * m * m * horizon),
        "outer_radius": float(np.sqrt(m)),
        "precision": 1.0 / horizon,
        "confidence": 1.0 / horizon,
    }


class PolySearch(ProbingPolicy):
    name = "poly"

    def __init__(self, env: Environment, config: PolySearchConfig | None = None) -> None:
        super().__init__(env)
        self.config = config or PolySearchConfig()
        self._pair_best: DirectScheme | None = None
        self._pair_best_value = -1.0

    def _value(self, scheme: DirectScheme) -> float:
        return float(np.dot(self.env.inst.value_weight, scheme.p))

    def certify_pairs(self, lower: float) -> list[Pair]:
        """Probe the pair scheme of every ordered pair at ``lower``; return the certified."""
        m = self.env.inst.m
        schemes: dict[tuple[float, ...], tuple[DirectScheme, list[Pair]]] = {}
        for pair in itertools.product(range(m), repeat=2):
            try:
                scheme = make_phase1_scheme(self.env.inst, pair[0], pair[1], lower)
            except UnattainableTarget:
                continue
            key = scheme.key()
            if key in schemes:
                schemes[key][1].append(pair)
            else:
                schemes[key] = (scheme, [pair])

        certified: list[Pair] = []
        for scheme, pairs in schemes.values():
            if self.probe(scheme):
                certified.extend(pairs)
                value = self._value(scheme)
                if value > self._pair_best_value:
                    self._pair_best, self._pair_best_value = scheme, value
        return sorted(certified)

    def retain_states(self, pairs: list[Pair], lower: float) -> frozenset[int]:
        m, horizon = self.env.inst.m, self.env.horizon
        retained: set[int] = set()
        for i, j in pairs:
            retained.update((i, j))
            for k in range(m):
                if k in (i, j) or k in retained:
                    continue
                scheme = make_phase2_scheme(self.env.inst, i, j, lower, k, horizon)
                if self.probe(scheme):
                    retained.add(k)
        return frozenset(retained)

    def solve_pair(self, pair: Pair, lower: float, retained: frozenset[int]) -> LPResult | None:
        """Run the membership-oracle solver from the pair's interior scheme."""
        inst, horizon = self.env.inst, self.env.horizon
        try:
            start = make_interior_candidate(inst, pair[0], pair[1], lower, retained, horizon)
            query = LPQuery(
                objective=inst.value_weight.copy(),
                oracle=PersuasionOracle(self.env),
                interior_point=start.p.copy(),
                A_ub=-inst.value_weight[None, :],
                b_ub=np.array([-lower / 16.0]),
                fixed_zero=frozenset(range(inst.m)) - retained,
                **solver_parameters(inst.m, horizon),
            )
        except ValueError as exc:
            logger.warning("pair %s skipped: %s", pair, exc)
            return None
        try:
            result = maximize(query, self.config.solver)
        except BudgetExceeded as exc:
            logger.warning("pair %s: %s", pair, exc)
            result = exc.result
        self.trace.oracle_queries += result.oracle_queries
        return result

    def explore(self) -> DirectScheme:
        inst, horizon = self.env.inst, self.env.horizon
        m = inst.m
        lower = 0.5
        pairs: list[Pair] = []
        while lower >= 1.0 / (m * m * horizon):
            pairs = self.certify_pairs(lower)
            if pairs:
                break
            lower /= 2.0
        if not pairs:
            logger.info("no pair scheme persuades; committing no information")
            return DirectScheme.zeros(m)
        self.trace.lower_bound = lower
        self.trace.pair_set = pairs

        self.enter_phase(2)
        retained = self.retain_states(pairs, lower)
        self.trace.retained_states = retained
        logger.debug("retained states %s", sorted(retained))

        self.enter_phase(3)
        best: DirectScheme | None = None
        best_value = -1.0
        for pair in pairs:
            result = self.solve_pair(pair, lower, retained)
            if result is None:
                continue
            self.trace.solver_succeeded[pair] = result.succeeded
            candidate = DirectScheme(np.clip(result.point, 0.0, 1.0))
            self.trace.candidates[pair] = candidate
            if self.env.remaining == 0:
                raise RoundsExhausted
            if not self.probe(candidate):
                logger.debug("pair %s: candidate failed its final check", pair)
                continue
            value = self._value(candidate)
            if value > best_value:
                best, best_value = candidate, value

        if best is None:
            logger.warning("no solver candidate survived; exploiting the best pair scheme")
            assert self._pair_best is not None
            return self._pair_best
        return best


def run_poly_search(env: Environment, config: PolySearchConfig | None = None) -> PolicyTrace:
    """Run :class:`PolySearch` to the end of the horizon."""
    return PolySearch(env, config).run()
