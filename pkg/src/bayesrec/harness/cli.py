"""Command-line entry point ``bayesrec``.

Exit codes: 0 on success, 1 when a verify suite or a regret scaling check fails, 2 for
malformed inputs (configuration, instance validation, unreadable files).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from bayesrec.config.experiment_config import ExperimentConfig
from bayesrec.config.files import load_distribution, load_experiment, load_instance
from bayesrec.config.types import PolicyKind, VerifySuite
from bayesrec.model.errors import (
    AssumptionOneViolated,
    AssumptionTwoViolated,
    BudgetExceeded,
    ConfigError,
    EmptySide,
    NotADistribution,
    PermutationCapExceeded,
    PriorNotSimplex,
    TooManyStates,
)
from bayesrec.oracle.hindsight import bang_per_buck, solve_bruteforce, solve_threshold
from bayesrec.reductions.decomposition import (
    VERIFY_TOL,
    check_decomposition,
    decompose_binary_support,
)
from bayesrec.solver.cutting_plane import maximize
from bayesrec.solver.oracles import HalfspaceOracle
from bayesrec.solver.query import LPQuery

from .experiment import RegretReport, check_regret_scaling, run_experiment, run_pricing_demo
from .verify import verify

logger = logging.getLogger(__name__)

console = Console()

INPUT_ERRORS = (
    ConfigError,
    PriorNotSimplex,
    AssumptionOneViolated,
    AssumptionTwoViolated,
    NotADistribution,
    EmptySide,
    PermutationCapExceeded,
    OSError,
)


def _setup_logging(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)],
        force=True,
    )


def _frame_table(frame: pd.DataFrame, title: str) -> Table:
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for row in frame.itertuples(index=False):
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in row))
    return table


def _print_report(report: RegretReport) -> None:
    console.print(
        f"policy [bold]{report.policy.value}[/bold], m={report.instance.m}, "
        f"U(pi*)={report.optimum_value:.9g}"
    )
    console.print(_frame_table(report.aggregate, "Expected regret per horizon"))
    for name, path in report.files.items():
        if not name.startswith("commits_"):
            console.print(f"[cyan]{name}[/cyan]: {path}")


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    sol = solve_threshold(inst)
    keys = bang_per_buck(inst)
    table = Table(title=f"Hindsight optimum of {args.instance}")
    for name in ("state", "prior", "omega", "bang per buck", "p*"):
        table.add_column(name, justify="right")
    for i in range(inst.m):
        table.add_row(
            str(i + 1),
            f"{inst.prior[i]:.6g}",
            f"{inst.omega[i]:.6g}",
            f"{keys[i]:.6g}",
            f"{sol.scheme.p[i]:.9g}",
        )
    console.print(table)
    console.print(f"U(pi*) = {sol.value:.12g}, threshold state {sol.threshold_state + 1}")
    if args.bruteforce:
        try:
            brute = solve_bruteforce(inst)
        except TooManyStates as exc:
            logger.warning("%s", exc)
        else:
            console.print(f"vertex enumeration: {brute.value:.12g}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        policy=PolicyKind(args.policy),
        horizons=[args.horizon],
        seeds=args.seeds,
        master_seed=args.master_seed,
        output_dir=args.output,
        instance_path=args.instance,
        workers=args.workers,
        log_commits=args.log_commits,
    )
    _print_report(run_experiment(cfg, show_progress=not args.quiet))
    return 0


def cmd_regret_curve(args: argparse.Namespace) -> int:
    cfg = load_experiment(args.experiment)
    if args.workers is not None:
        cfg = replace(cfg, workers=args.workers)
    report = run_experiment(cfg, show_progress=not args.quiet)
    _print_report(report)
    if not args.check_scaling:
        return 0
    try:
        check = check_regret_scaling(
            report.aggregate, ratio_cap=args.ratio_cap, regret_cap=args.regret_cap
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    verdict = "[green]pass" if check.passed else "[red]FAIL"
    console.print(
        f"regret ratio T={check.last_horizon} / T={check.first_horizon}: "
        f"{check.ratio:.4g} (cap {check.ratio_cap:g}), "
        f"mean regret at T={check.last_horizon}: {check.final_mean:.4g} "
        f"(cap {check.regret_cap:g}) {verdict}"
    )
    return 0 if check.passed else 1


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify(VerifySuite(args.suite), scale=args.scale, seed=args.seed)
    table = Table(title=f"verify {report.suite.value} (seed {report.seed}, scale {report.scale})")
    table.add_column("property", style="cyan")
    table.add_column("checked", justify="right")
    table.add_column("result")
    for r in report.results:
        table.add_row(r.name, str(r.checked), "[green]pass" if r.passed else "[red]FAIL")
    console.print(table)
    for r in report.results:
        if r.counterexample is not None:
            console.print(f"[red]{r.name}[/red]: {escape(r.counterexample)}")
    console.print(f"elapsed {report.elapsed:.2f}s")
    return 0 if report.passed else 1


def cmd_decompose(args: argparse.Namespace) -> int:
    support, probs = load_distribution(args.dist)
    dec = decompose_binary_support(support, probs)
    table = Table(title=f"Binary-support decomposition, mean {dec.mean:.9g}")
    table.add_column("weight", justify="right")
    table.add_column("support", justify="right")
    table.add_column("probabilities", justify="right")
    for comp, weight in zip(dec.components, dec.weights):
        table.add_row(
            f"{weight:.9g}",
            ", ".join(f"{x:.6g}" for x in comp.support),
            ", ".join(f"{p:.6g}" for p in comp.probabilities),
        )
    console.print(table)
    check = check_decomposition(dec, support, probs)
    report = Table(title="Verification")
    report.add_column("property", style="cyan")
    report.add_column("measured", justify="right")
    report.add_column("result")
    tol = VERIFY_TOL
    rows = [
        ("component means equal the mean", f"{check.mean_error:.3g}", check.mean_error <= tol),
        ("support size at most 2", str(check.max_support), check.max_support <= 2),
        ("mixture reproduces the source", f"{check.mass_error:.3g}", check.mass_error <= tol),
        ("pairing equations residual", f"{check.residual:.3g}", check.residual <= tol),
    ]
    for name, measured, ok in rows:
        report.add_row(name, measured, "[green]pass" if ok else "[red]FAIL")
    console.print(report)
    return 0


def cmd_pricing_demo(args: argparse.Namespace) -> int:
    try:
        frame = run_pricing_demo(
            args.value,
            args.horizon,
            PolicyKind(args.policy),
            seeds=args.seeds,
            master_seed=args.master_seed,
        )
    except PermutationCapExceeded:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    console.print(_frame_table(frame, f"Pricing with buyer value {args.value}"))
    return 0


def cmd_lp_solve(args: argparse.Namespace) -> int:
    w = np.array(args.halfspace, dtype=np.float64)
    c = np.array(args.objective, dtype=np.float64)
    x0 = np.array(args.interior, dtype=np.float64)
    if not w.shape == c.shape == x0.shape:
        raise ConfigError(
            f"--halfspace, --objective and --interior need equal lengths, "
            f"got {w.size}, {c.size}, {x0.size}."
        )
    radius = args.radius
    if radius is None:
        norm = float(np.linalg.norm(w))
        slack = float(w @ x0) / norm if norm > 0.0 else np.inf
        radius = 0.5 * min(float(x0.min()), float((1.0 - x0).min()), slack)
    if not radius > 0.0:
        raise ConfigError(f"--interior {x0.tolist()} is not strictly inside the feasible region.")
    try:
        query = LPQuery(
            objective=c,
            oracle=HalfspaceOracle.of(w, 0.0),
            interior_point=x0,
            inner_radius=radius,
            outer_radius=float(np.sqrt(c.size)),
            precision=args.epsilon,
            confidence=args.epsilon,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        result = maximize(query)
    except BudgetExceeded as exc:
        logger.warning("%s", exc)
        result = exc.result
    console.print(f"point        {np.round(result.point, 9).tolist()}")
    console.print(f"value        {result.value:.9g} (upper bound {result.upper_bound:.9g})")
    console.print(f"queries      {result.oracle_queries} in {result.iterations} iterations")
    console.print(f"converged    {result.converged}, feasible {result.succeeded}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bayesrec", description="Online Bayesian recommendation experiments."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    sub = parser.add_subparsers(dest="command", required=True)
    policies = [k.value for k in PolicyKind]

    p = sub.add_parser("solve", help="hindsight optimum of an instance file")
    p.add_argument("instance", type=Path)
    p.add_argument("--bruteforce", action="store_true", help="cross-check by vertex enumeration")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="run one policy on one instance and horizon")
    p.add_argument("--policy", choices=policies, required=True)
    p.add_argument("--instance", type=Path, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", type=Path, default=Path("runs/simulate"))
    p.add_argument("--log-commits", action="store_true", help="write per-round commit logs")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("regret-curve", help="run an experiment file over several horizons")
    p.add_argument("experiment", type=Path)
    p.add_argument("--workers", type=int, default=None, help="override the file's workers")
    p.add_argument(
        "--check-scaling",
        action="store_true",
        help="compare mean regret at the largest and smallest horizons",
    )
    p.add_argument("--ratio-cap", type=float, default=3.0)
    p.add_argument("--regret-cap", type=float, default=100.0)
    p.set_defaults(func=cmd_regret_curve)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=[s.value for s in VerifySuite])
    p.add_argument("--scale", type=float, default=1.0, help="multiplier on the case counts")
    p.add_argument("--seed", type=int, default=20240607)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="split a distribution into binary-support parts")
    p.add_argument("--dist", type=Path, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("pricing-demo", help="run a policy on a dynamic-pricing instance")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--policy", choices=policies, default=PolicyKind.LOGLOG.value)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--master-seed", type=int, default=0)
    p.set_defaults(func=cmd_pricing_demo)

    p = sub.add_parser("lp-solve", help="maximize over a hidden halfspace via membership queries")
    p.add_argument("--halfspace", type=float, nargs="+", required=True, help="w in w.x >= 0")
    p.add_argument("--objective", type=float, nargs="+", required=True)
    p.add_argument("--interior", type=float, nargs="+", required=True)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.set_defaults(func=cmd_lp_solve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose, args.quiet)
    try:
        return int(args.func(args))
    except INPUT_ERRORS as exc:
        console.print(f"[bold red]error:[/bold red] {escape(str(exc))}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
