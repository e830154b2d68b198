"""Shared policy plumbing: the trace every run returns and the exploit step."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from logging import getLogger

from bayesrec.config.types import Verdict
from bayesrec.env.environment import Environment
from bayesrec.model.schemes import DirectScheme

logger = getLogger(__name__)


@dataclass
class PolicyTrace:
    """What a policy did over one horizon.

    Attributes:
        policy: Policy identifier.
        horizon: Round budget of the run.
        rounds_phase1: Rounds consumed by the first exploring phase.
        rounds_phase2: Rounds consumed by the second exploring phase.
        rounds_phase3: Rounds consumed by the third exploring phase (poly search only).
        oracle_queries: Number of persuasiveness probes issued.
        exploration_completed: Exploration finished before the horizon ran out.
        exhausted: A probe returned round-exhausted.
        final_scheme: Scheme committed for the exploiting phase.
        lower_bound: Value lower bound found by the first exploring phase.
        expected_regret: Expected Stackelberg regret over the whole horizon.
        realized_payoff: Sum of realized platform payoffs.
        intervals: (L, R, eps) at the start of every refinement iteration.
        surviving_orders: Live orders after every filter (only when recorded).
        pair_set: Pairs certified by the first exploring phase.
        retained_states: States kept by the second exploring phase.
        solver_succeeded: Per-pair solver outcome.
        candidates: Per-pair candidate schemes from the solver.
    """

    policy: str
    horizon: int
    rounds_phase1: int = 0
    rounds_phase2: int = 0
    rounds_phase3: int = 0
    oracle_queries: int = 0
    exploration_completed: bool = False
    exhausted: bool = False
    final_scheme: DirectScheme | None = None
    lower_bound: float | None = None
    expected_regret: float = 0.0
    realized_payoff: float = 0.0
    intervals: list[tuple[float, float, float]] = field(default_factory=list)
    surviving_orders: list[list[tuple[int, ...]]] = field(default_factory=list)
    pair_set: list[tuple[int, int]] = field(default_factory=list)
    retained_states: frozenset[int] = frozenset()
    solver_succeeded: dict[tuple[int, int], bool] = field(default_factory=dict)
    candidates: dict[tuple[int, int], DirectScheme] = field(default_factory=dict)


class RoundsExhausted(Exception):
    """Internal signal: a probe ran out of rounds mid-exploration."""


class ProbingPolicy(ABC):
    """Base for policies that probe with persuasiveness checks, then exploit.

    Subclasses implement :meth:`explore`, which returns the scheme to exploit. Probes
    go through :meth:`probe`, which counts queries, remembers the latest scheme
    certified persuasive and turns round exhaustion into :class:`RoundsExhausted`.
    """

    name = "policy"

    def __init__(self, env: Environment) -> None:
        self.env = env
        self.trace = PolicyTrace(policy=self.name, horizon=env.horizon)
        self.fallback = DirectScheme.zeros(env.inst.m)
        self._phase = 1
        self._phase_start = env.consumed

    def _close_phase(self) -> None:
        used = self.env.consumed - self._phase_start
        name = f"rounds_phase{self._phase}"
        setattr(self.trace, name, getattr(self.trace, name) + used)
        self._phase_start = self.env.consumed

    def enter_phase(self, phase: int) -> None:
        self._close_phase()
        self._phase = phase
        logger.info(
            "%s: entering exploring phase %d at round %d", self.name, phase, self.env.round
        )

    def probe(self, scheme: DirectScheme) -> bool:
        result = self.env.check_persu(scheme)
        self.trace.oracle_queries += 1
        if result.verdict is Verdict.ROUND_EXHAUSTED:
            raise RoundsExhausted
        if result.verdict is Verdict.PERSUASIVE:
            self.fallback = scheme
            return True
        return False

    @abstractmethod
    def explore(self) -> DirectScheme: ...

    def run(self) -> PolicyTrace:
        try:
            scheme = self.explore()
            self.trace.exploration_completed = True
        except RoundsExhausted:
            logger.warning(
                "%s: rounds exhausted during exploration at round %d; committing fallback",
                self.name,
                self.env.round,
            )
            self.trace.exhausted = True
            scheme = self.fallback
        self._close_phase()
        return exploit(self.env, scheme, self.trace)


def exploit(env: Environment, scheme: DirectScheme, trace: PolicyTrace) -> PolicyTrace:
    """Commit ``scheme`` for every remaining round and close the trace."""
    if env.remaining > 0:
        env.play_rounds(scheme, env.remaining)
    trace.final_scheme = scheme
    trace.expected_regret = env.expected_regret
    trace.realized_payoff = env.realized_payoff
    return trace
