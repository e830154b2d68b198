"""Seed fan-out, per-seed regret table and aggregate statistics.

Run ``(horizon_index, seed_index)`` uses the seed
``derive_seed(master_seed, horizon_index, seed_index)``, so every table is a pure
function of the configuration. Seeds run concurrently on a thread pool, one
environment per run. Rows are sorted before aggregation, so the output does not depend
on completion order.
"""

from __future__ import annotations

from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path

import numpy as np
import pandas as pd
from rich.progress import Progress

from bayesrec.config.experiment_config import ExperimentConfig
from bayesrec.config.files import load_instance, save_instance
from bayesrec.config.types import PolicyKind
from bayesrec.env.commit_log import CommitLog
from bayesrec.env.environment import Environment
from bayesrec.env.seeding import derive_seed
from bayesrec.model.instance import Instance
from bayesrec.oracle.hindsight import solve_threshold
from bayesrec.policies.baselines import run_baseline
from bayesrec.policies.common import PolicyTrace
from bayesrec.policies.loglog_search import LogLogConfig, run_loglog_search
from bayesrec.policies.poly_search import PolySearchConfig, run_poly_search
from bayesrec.reductions.pricing import (
    PricingInstance,
    build_pricing_instance,
    transcript_pricing_regret,
)
from bayesrec.utils.csv_handler import CsvHandler

from .random_instances import instance_for

logger = getLogger(__name__)

PER_SEED_COLUMNS = [
    "horizon",
    "seed_index",
    "seed",
    "expected_regret",
    "realized_payoff",
    "optimum_value",
    "rounds_phase1",
    "rounds_phase2",
    "rounds_phase3",
    "oracle_queries",
    "exploration_completed",
]
AGGREGATE_COLUMNS = ["horizon", "runs", "mean", "std", "q05", "q50", "q95", "optimum_value"]
PRICING_COLUMNS = ["seed_index", "seed", "expected_regret", "pricing_regret", "within_bound"]


@dataclass
class RegretReport:
    """Result of :func:`run_experiment`.

    Attributes:
        policy: Policy that was run.
        instance: Instance every run was played on.
        optimum_value: Hindsight value ``U(pi*)`` of the instance.
        per_seed: One row per ``(horizon, seed)`` run, columns ``PER_SEED_COLUMNS``.
        aggregate: One row per horizon, columns ``AGGREGATE_COLUMNS``.
        traces: Policy traces in the row order of ``per_seed``.
        files: CSV files written, by table name.
    """

    policy: PolicyKind
    instance: Instance
    optimum_value: float
    per_seed: pd.DataFrame
    aggregate: pd.DataFrame
    traces: list[PolicyTrace] = field(default_factory=list)
    files: dict[str, Path] = field(default_factory=dict)


def run_policy(
    kind: PolicyKind,
    env: Environment,
    *,
    loglog: LogLogConfig | None = None,
    poly: PolySearchConfig | None = None,
) -> PolicyTrace:
    """Drive ``env`` to its horizon with the policy ``kind``."""
    if kind is PolicyKind.LOGLOG:
        return run_loglog_search(env, loglog)
    if kind is PolicyKind.POLY:
        return run_poly_search(env, poly)
    return run_baseline(env, kind)


@dataclass
class _Run:
    horizon_index: int
    seed_index: int
    horizon: int
    seed: int
    trace: PolicyTrace | None = None
    commit_log: CommitLog | None = None

    def row(self, optimum_value: float) -> dict[str, object]:
        assert self.trace is not None
        t = self.trace
        return {
            "horizon": self.horizon,
            "seed_index": self.seed_index,
            "seed": self.seed,
            "expected_regret": t.expected_regret,
            "realized_payoff": t.realized_payoff,
            "optimum_value": optimum_value,
            "rounds_phase1": t.rounds_phase1,
            "rounds_phase2": t.rounds_phase2,
            "rounds_phase3": t.rounds_phase3,
            "oracle_queries": t.oracle_queries,
            "exploration_completed": t.exploration_completed,
        }


def _execute(run: _Run, inst: Instance, cfg: ExperimentConfig) -> _Run:
    env = Environment(inst, run.horizon, run.seed, log_commits=cfg.log_commits)
    run.trace = run_policy(cfg.policy, env, loglog=cfg.loglog, poly=cfg.poly)
    run.commit_log = env.commit_log
    logger.debug(
        "T=%d seed #%d: regret %.6g", run.horizon, run.seed_index, run.trace.expected_regret
    )
    return run


def aggregate_regret(per_seed: pd.DataFrame) -> pd.DataFrame:
    """Mean, sample std and 5/50/95% quantiles of the expected regret per horizon."""
    rows = []
    for horizon, group in per_seed.groupby("horizon", sort=True):
        values = group["expected_regret"].to_numpy(dtype=np.float64)
        rows.append(
            {
                "horizon": int(horizon),  # type: ignore[call-overload]
                "runs": int(values.size),
                "mean": float(np.mean(values)),
                "std": float(np.std(values, ddof=1)) if values.size > 1 else 0.0,
                "q05": float(np.quantile(values, 0.05)),
                "q50": float(np.quantile(values, 0.50)),
                "q95": float(np.quantile(values, 0.95)),
                "optimum_value": float(group["optimum_value"].iloc[0]),
            }
        )
    return pd.DataFrame(rows, columns=AGGREGATE_COLUMNS)


def resolve_instance(cfg: ExperimentConfig) -> Instance:
    if cfg.instance_path is not None:
        return load_instance(cfg.instance_path)
    assert cfg.generator is not None
    return instance_for(cfg.generator)


def run_experiment(
    cfg: ExperimentConfig, *, write: bool = True, show_progress: bool = False
) -> RegretReport:
    """Run every ``(horizon, seed)`` pair of ``cfg`` and tabulate the regret.

    With ``write`` set, ``per_seed.csv``, ``aggregate.csv`` and ``instance.yaml`` (plus one
    commit log per run when ``cfg.log_commits``) are written to ``cfg.output_dir``.

    Raises:
        ConfigError: the instance file is malformed.
        OSError: an input or output file cannot be accessed.
    """
    inst = resolve_instance(cfg)
    runs = [
        _Run(h_idx, s_idx, horizon, derive_seed(cfg.master_seed, h_idx, s_idx))
        for h_idx, horizon in enumerate(cfg.horizons)
        for s_idx in range(cfg.seeds)
    ]
    logger.info(
        "Running %s on m=%d: %d horizons x %d seeds with %d worker(s)",
        cfg.policy.value,
        inst.m,
        len(cfg.horizons),
        cfg.seeds,
        cfg.workers,
    )

    with Progress(disable=not show_progress) as progress:
        task = progress.add_task(f"[green]{cfg.policy.value}", total=len(runs))
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            futures: list[Future[_Run]] = [
                executor.submit(_execute, run, inst, cfg) for run in runs
            ]
            for future in as_completed(futures):
                future.result()
                progress.advance(task)

    optimum_value = solve_threshold(inst).value
    runs.sort(key=lambda r: (r.horizon_index, r.seed_index))
    per_seed = pd.DataFrame([r.row(optimum_value) for r in runs], columns=PER_SEED_COLUMNS)
    report = RegretReport(
        policy=cfg.policy,
        instance=inst,
        optimum_value=optimum_value,
        per_seed=per_seed,
        aggregate=aggregate_regret(per_seed),
        traces=[r.trace for r in runs if r.trace is not None],
    )
    if write:
        out = cfg.output_dir
        report.files["per_seed"] = CsvHandler.save_table(
            per_seed, out / "per_seed.csv", "per-seed"
        )
        report.files["aggregate"] = CsvHandler.save_table(
            report.aggregate, out / "aggregate.csv", "aggregate"
        )
        report.files["instance"] = save_instance(
            inst, out / "instance.yaml", comment=f"instance of the {cfg.policy.value} experiment"
        )
        for r in runs:
            if r.commit_log is not None:
                name = f"commits_T{r.horizon}_s{r.seed_index}"
                report.files[name] = CsvHandler.save_table(
                    r.commit_log.to_frame(), out / "commits" / f"{name}.csv", "commit-log"
                )
    return report


def run_pricing_demo(
    value: float,
    horizon: int,
    policy: PolicyKind,
    *,
    seeds: int = 1,
    master_seed: int = 0,
    loglog: LogLogConfig | None = None,
    poly: PolySearchConfig | None = None,
) -> pd.DataFrame:
    """Run ``policy`` on the pricing instance of a buyer with private ``value``.

    Each row compares the recommendation regret of a run with the regret of the prices
    its transcript posts; ``within_bound`` is ``pricing_regret <= expected_regret + 1``.
    """
    pricing = PricingInstance(horizon=horizon, value=value)
    inst = build_pricing_instance(pricing)
    rows = []
    for s_idx in range(seeds):
        seed = derive_seed(master_seed, 0, s_idx)
        env = Environment(inst, horizon, seed, log_commits=True)
        trace = run_policy(policy, env, loglog=loglog, poly=poly)
        assert env.commit_log is not None
        regret = transcript_pricing_regret(pricing, env.commit_log)
        rows.append(
            {
                "seed_index": s_idx,
                "seed": seed,
                "expected_regret": trace.expected_regret,
                "pricing_regret": regret,
                "within_bound": regret <= trace.expected_regret + 1.0,
            }
        )
    return pd.DataFrame(rows, columns=PRICING_COLUMNS)


@dataclass(frozen=True)
class ScalingCheck:
    """Growth of the mean regret from the first to the last horizon of a curve.

    Attributes:
        first_horizon: Smallest horizon of the curve.
        last_horizon: Largest horizon of the curve.
        ratio: Mean regret at ``last_horizon`` over mean regret at ``first_horizon``.
        final_mean: Mean regret at ``last_horizon``.
        ratio_cap: Largest accepted ``ratio``.
        regret_cap: Largest accepted ``final_mean``.
    """

    first_horizon: int
    last_horizon: int
    ratio: float
    final_mean: float
    ratio_cap: float
    regret_cap: float

    @property
    def passed(self) -> bool:
        return self.ratio <= self.ratio_cap and self.final_mean <= self.regret_cap


def check_regret_scaling(
    aggregate: pd.DataFrame, *, ratio_cap: float = 3.0, regret_cap: float = 100.0
) -> ScalingCheck:
    """Compare the mean regret at the largest and smallest horizons of ``aggregate``.

    Raises:
        ValueError: ``aggregate`` holds fewer than two horizons.
    """
    if len(aggregate) < 2:
        raise ValueError("a scaling check needs at least two horizons.")
    rows = aggregate.sort_values("horizon")
    first, last = rows.iloc[0], rows.iloc[-1]
    first_mean = float(first["mean"])
    final_mean = float(last["mean"])
    if first_mean > 0.0:
        ratio = final_mean / first_mean
    else:
        ratio = 1.0 if final_mean <= 0.0 else float("inf")
    return ScalingCheck(
        first_horizon=int(first["horizon"]),
        last_horizon=int(last["horizon"]),
        ratio=ratio,
        final_mean=final_mean,
        ratio_cap=ratio_cap,
        regret_cap=regret_cap,
    )
