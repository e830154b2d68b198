"""Per-round record of what the platform committed and what the user did."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from bayesrec.model.instance import Instance
from bayesrec.model.response import expected_platform_utility
from bayesrec.model.schemes import DirectScheme
from bayesrec.oracle.hindsight import solve_threshold


@dataclass
class _Block:
    start_round: int
    p: NDArray[np.float64]  # (m,) or all-NaN for non-direct schemes
    states: NDArray[np.int64]
    signals: NDArray[np.int64]
    actions: NDArray[np.int64]
    payoffs: NDArray[np.float64]
    regret: float


@dataclass
class CommitLog:
    """Blocks of consecutive rounds played under one scheme.

    Attributes:
        inst: Instance the rounds were played on.
        blocks: Recorded blocks in round order.
    """

    inst: Instance
    blocks: list[_Block] = field(default_factory=list)

    def record(
        self,
        start_round: int,
        p: NDArray[np.float64] | None,
        states: NDArray[np.int64],
        signals: NDArray[np.int64],
        actions: NDArray[np.int64],
        payoffs: NDArray[np.float64],
        per_round_regret: float,
    ) -> None:
        vec = np.full(self.inst.m, np.nan) if p is None else np.array(p, dtype=np.float64)
        self.blocks.append(
            _Block(
                start_round=start_round,
                p=vec,
                states=states.copy(),
                signals=signals.copy(),
                actions=actions.copy(),
                payoffs=payoffs.copy(),
                regret=per_round_regret,
            )
        )

    def __len__(self) -> int:
        return sum(len(b.states) for b in self.blocks)

    def to_frame(self) -> pd.DataFrame:
        """One row per round: round, p_1..p_m, state, signal, action, payoff, regret."""
        columns = ["round", *[f"p_{i + 1}" for i in range(self.inst.m)]]
        columns += ["state", "signal", "action", "payoff", "per_round_expected_regret"]
        if not self.blocks:
            return pd.DataFrame(columns=columns)
        frames = []
        for b in self.blocks:
            n = len(b.states)
            data: dict[str, object] = {"round": np.arange(b.start_round, b.start_round + n)}
            for i in range(self.inst.m):
                data[f"p_{i + 1}"] = np.full(n, b.p[i])
            # States are reported 1-based to match the instance file convention.
            data["state"] = b.states + 1
            data["signal"] = b.signals
            data["action"] = b.actions
            data["payoff"] = b.payoffs
            data["per_round_expected_regret"] = np.full(n, b.regret)
            frames.append(pd.DataFrame(data, columns=columns))
        return pd.concat(frames, ignore_index=True)


def replay_regret(log: CommitLog) -> float:
    """Recompute the expected regret of a log from its committed schemes.

    Direct schemes are re-evaluated from scratch against the hindsight optimum; blocks
    played under other schemes fall back to their recorded per-round regret.
    """
    optimum = solve_threshold(log.inst).value
    total = 0.0
    for b in log.blocks:
        n = len(b.states)
        if np.all(np.isfinite(b.p)):
            total += n * (optimum - expected_platform_utility(log.inst, DirectScheme(b.p)))
        else:
            total += n * b.regret
    return total
