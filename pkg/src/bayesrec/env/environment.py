"""Round-consuming simulator of the repeated recommendation game.

Each round draws two uniforms from the environment's generator, one for the state and
one for the signal. Blocks of rounds draw them as an ``(n, 2)`` array, which yields
exactly the same stream as ``n`` single rounds, so block and single-round play are
interchangeable without changing any outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger

import numpy as np
from numpy.typing import NDArray

from bayesrec.config.types import Verdict
from bayesrec.model.errors import HorizonExhausted
from bayesrec.model.instance import Instance, validate_instance
from bayesrec.model.response import (
    general_platform_utility,
    is_persuasive,
    recommend_probability,
    signal_responses,
)
from bayesrec.model.schemes import DirectScheme, GeneralScheme, to_general
from bayesrec.oracle.hindsight import HindsightSolution, solve_threshold

from .commit_log import CommitLog
from .seeding import make_rng

logger = getLogger(__name__)

Scheme = DirectScheme | GeneralScheme

_CHECK_FIRST_CHUNK = 64
_CHECK_MAX_CHUNK = 1 << 16
_CACHE_SIZE = 256


@dataclass(frozen=True)
class RoundOutcome:
    """What happened in one round.

    Attributes:
        state: Sampled state (0-based).
        signal: Realized signal.
        action: User's best response to the signal.
        payoff: Realized platform gain ``platform_value[state] * action``.
    """

    state: int
    signal: int
    action: int
    payoff: float


@dataclass(frozen=True)
class RoundBlock:
    """Outcomes of consecutive rounds under one scheme, as parallel arrays."""

    start_round: int
    states: NDArray[np.int64]
    signals: NDArray[np.int64]
    actions: NDArray[np.int64]
    payoffs: NDArray[np.float64]

    def __len__(self) -> int:
        return int(self.states.shape[0])

    def outcomes(self) -> list[RoundOutcome]:
        return [
            RoundOutcome(int(s), int(g), int(a), float(v))
            for s, g, a, v in zip(self.states, self.signals, self.actions, self.payoffs)
        ]


@dataclass(frozen=True)
class PersuCheckResult:
    """Verdict of one persuasiveness probe and the rounds it consumed."""

    verdict: Verdict
    rounds_used: int


@dataclass(frozen=True)
class _Evaluated:
    cum: NDArray[np.float64]  # (m, signals) row-wise cumulative signal probabilities
    last_signal: NDArray[np.int64]  # (m,) last signal with positive mass per state
    actions: NDArray[np.int64]  # (signals,) best response, 0 for unreachable signals
    utility: float
    p: NDArray[np.float64] | None


class Environment:
    """Simulator with a round budget and an expected-regret ledger.

    Policies interact only through :meth:`play_round`, :meth:`play_rounds`,
    :meth:`check_persu` and :attr:`remaining`. The hindsight optimum is computed once
    at construction and used only for regret accounting.
    """

    def __init__(
        self,
        inst: Instance,
        horizon: int,
        seed: int | np.random.Generator | None = None,
        *,
        log_commits: bool = False,
    ) -> None:
        if horizon < 1:
            raise ValueError(f"horizon must be a positive integer, got {horizon}.")
        validate_instance(inst)
        self.inst = inst
        self.horizon = int(horizon)
        self.round = 1
        self.realized_payoff = 0.0
        self.expected_regret = 0.0
        self.persu_checks = 0
        self._rng = make_rng(seed)
        self._optimum = solve_threshold(inst)
        self._state_cum = np.cumsum(inst.prior)
        self._last_state = int(np.flatnonzero(inst.prior > 0.0)[-1])
        self._cache: dict[bytes, _Evaluated] = {}
        self.commit_log: CommitLog | None = CommitLog(inst) if log_commits else None

    @property
    def remaining(self) -> int:
        return self.horizon - self.round + 1

    @property
    def consumed(self) -> int:
        return self.round - 1

    @property
    def optimum(self) -> HindsightSolution:
        """Hindsight optimum. For regret accounting and diagnostics only."""
        return self._optimum

    def _evaluate(self, scheme: Scheme) -> _Evaluated:
        general = to_general(scheme) if isinstance(scheme, DirectScheme) else scheme
        if general.m != self.inst.m:
            raise ValueError(f"scheme has {general.m} states, instance has {self.inst.m}.")
        key = general.table.tobytes()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        responses = signal_responses(self.inst, general)
        table = general.table
        last_signal = np.array(
            [int(np.flatnonzero(row > 0.0)[-1]) for row in table], dtype=np.int64
        )
        evaluated = _Evaluated(
            cum=np.cumsum(table, axis=1),
            last_signal=last_signal,
            actions=np.array([r or 0 for r in responses], dtype=np.int64),
            utility=general_platform_utility(self.inst, general),
            p=scheme.p if isinstance(scheme, DirectScheme) else None,
        )
        if len(self._cache) >= _CACHE_SIZE:
            self._cache.clear()
        self._cache[key] = evaluated
        return evaluated

    def scheme_utility(self, scheme: Scheme) -> float:
        """Expected platform utility of a scheme. For accounting only."""
        return self._evaluate(scheme).utility

    def _simulate(self, ev: _Evaluated, n: int) -> RoundBlock:
        draws = self._rng.random((n, 2))
        states = np.searchsorted(self._state_cum, draws[:, 0], side="right")
        states = np.minimum(states, self._last_state).astype(np.int64)
        rows = ev.cum[states]
        signals = np.sum(draws[:, 1:2] >= rows, axis=1).astype(np.int64)
        signals = np.minimum(signals, ev.last_signal[states])
        actions = ev.actions[signals]
        payoffs = self.inst.platform_value[states] * actions
        return RoundBlock(self.round, states, signals, actions, payoffs)

    def _commit(self, ev: _Evaluated, block: RoundBlock) -> None:
        n = len(block)
        if n == 0:
            return
        per_round = self._optimum.value - ev.utility
        self.expected_regret += n * per_round
        self.realized_payoff += float(block.payoffs.sum())
        if self.commit_log is not None:
            self.commit_log.record(
                block.start_round,
                ev.p,
                block.states,
                block.signals,
                block.actions,
                block.payoffs,
                per_round,
            )
        self.round += n

    def play_rounds(self, scheme: Scheme, n: int) -> RoundBlock:
        """Commit ``scheme`` for ``n`` consecutive rounds.

        Raises:
            HorizonExhausted: fewer than ``n`` rounds remain.
        """
        if n < 0:
            raise ValueError(f"round count must be non-negative, got {n}.")
        if n > self.remaining:
            raise HorizonExhausted(
                f"requested {n} rounds at round {self.round}, only {self.remaining} remain."
            )
        ev = self._evaluate(scheme)
        block = self._simulate(ev, n)
        self._commit(ev, block)
        return block

    def play_round(self, scheme: Scheme) -> RoundOutcome:
        """Commit ``scheme`` for one round.

        Raises:
            HorizonExhausted: the horizon has been consumed.
        """
        if self.remaining < 1:
            raise HorizonExhausted(f"horizon of {self.horizon} rounds is consumed.")
        return self.play_rounds(scheme, 1).outcomes()[0]

    def check_persu(self, scheme: DirectScheme) -> PersuCheckResult:
        """Probe ``scheme`` with real rounds until the user reveals whether it persuades.

        A recommendation that is followed certifies persuasiveness; a recommendation
        that is ignored, or action 1 after a "do not recommend" signal, certifies the
        opposite. Rounds on which neither happens are consumed and counted.
        """
        self.persu_checks += 1
        ev = self._evaluate(scheme)
        used = 0
        chunk = _CHECK_FIRST_CHUNK
        while self.remaining > 0:
            n = min(chunk, self.remaining)
            snapshot = self._rng.bit_generator.state
            block = self._simulate(ev, n)
            informative = (block.signals == 1) | (block.actions == 1)
            hits = np.flatnonzero(informative)
            if hits.size == 0:
                self._commit(ev, block)
                used += n
                chunk = min(chunk * 2, _CHECK_MAX_CHUNK)
                continue
            # Rewind and redraw only the rounds up to the informative one.
            first = int(hits[0])
            self._rng.bit_generator.state = snapshot
            block = self._simulate(ev, first + 1)
            self._commit(ev, block)
            used += first + 1
            follows = block.signals[-1] == 1 and block.actions[-1] == 1
            verdict = Verdict.PERSUASIVE if follows else Verdict.NOT_PERSUASIVE
            logger.debug("check_persu %s -> %s after %d rounds", scheme, verdict.value, used)
            return PersuCheckResult(verdict, used)
        logger.debug("check_persu %s ran out of rounds after %d", scheme, used)
        return PersuCheckResult(Verdict.ROUND_EXHAUSTED, used)

    def realized_regret(self) -> float:
        """Diagnostic counterpart of the ledger: consumed rounds times U* minus payoff."""
        return self.consumed * self._optimum.value - self.realized_payoff


def stackelberg_regret(env: Environment) -> float:
    """Expected Stackelberg regret accumulated so far."""
    return env.expected_regret


def check_persu_regret_bound(inst: Instance, scheme: DirectScheme) -> float:
    """Bound on the expected regret of one persuasiveness probe.

    ``U* / q - 1{persuasive} * U(p) / q`` with ``q = sum(prior * p)``. With unit
    platform values ``U(p) = q`` and this is ``U* / q - 1{persuasive}``. Infinite when
    the scheme never recommends.
    """
    mass = recommend_probability(inst, scheme)
    if mass <= 0.0:
        return float("inf")
    optimum = solve_threshold(inst).value
    if not is_persuasive(inst, scheme):
        return optimum / mass
    return (optimum - float(np.dot(inst.value_weight, scheme.p))) / mass
