"""Property batteries behind ``bayesrec verify``.

Each suite runs with a fixed seed and reports, per property, how many cases were
checked and the first counterexample. ``scale`` multiplies the number of cases; at
1.0 the suites run the full acceptance-sized batteries.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from logging import getLogger
from typing import Callable

import numpy as np

from bayesrec.config.experiment_config import RandomInstanceSpec
from bayesrec.config.types import Verdict, VerifySuite
from bayesrec.env.environment import Environment, check_persu_regret_bound
from bayesrec.model.constructions import make_interior_candidate
from bayesrec.model.errors import BudgetExceeded
from bayesrec.model.instance import Instance
from bayesrec.model.response import (
    best_response,
    expected_platform_utility,
    is_persuasive,
    posterior,
    recommend_probability,
)
from bayesrec.model.schemes import DirectScheme, is_threshold_scheme
from bayesrec.oracle.hindsight import bang_per_buck_order, solve_bruteforce, solve_threshold
from bayesrec.policies.loglog_search import LogLogConfig, run_loglog_search
from bayesrec.policies.poly_search import run_poly_search, solver_parameters
from bayesrec.reductions.decomposition import decompose_binary_support, linear_system_residual
from bayesrec.solver.cutting_plane import maximize
from bayesrec.solver.oracles import HalfspaceOracle
from bayesrec.solver.query import LPQuery, SolverConfig

from .random_instances import random_instance

logger = getLogger(__name__)

VERIFY_SEED = 20240607
VALUE_TOL = 1e-9
MARGIN_SKIP = 1e-9


@dataclass
class PropertyResult:
    """Outcome of one property.

    Attributes:
        name: Property identifier.
        passed: No counterexample was found (or the success rate met its floor).
        checked: Number of cases checked.
        counterexample: Description of the first failing case.
    """

    name: str
    passed: bool
    checked: int
    counterexample: str | None = None


@dataclass
class VerifyReport:
    suite: VerifySuite
    seed: int
    scale: float
    results: list[PropertyResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


class _Property:
    def __init__(self, name: str) -> None:
        self.name = name
        self.checked = 0
        self.counterexample: str | None = None

    def check(self, ok: bool, detail: Callable[[], str]) -> bool:
        self.checked += 1
        if not ok and self.counterexample is None:
            self.counterexample = detail()
            logger.debug("%s failed: %s", self.name, self.counterexample)
        return ok

    def fail(self, detail: str) -> None:
        self.check(False, lambda: detail)

    def result(self) -> PropertyResult:
        return PropertyResult(
            self.name, self.counterexample is None, self.checked, self.counterexample
        )


def _count(base: int, scale: float) -> int:
    return max(1, round(base * scale))


def _draw(
    rng: np.random.Generator, m: int | None = None, *, unit_values: bool = False
) -> Instance:
    spec = RandomInstanceSpec(
        m=int(rng.integers(2, 7)) if m is None else m,
        distinct_belief=bool(rng.integers(2)),
        random_values=not unit_values and bool(rng.integers(2)),
    )
    return random_instance(spec, rng)


def _random_scheme(rng: np.random.Generator, m: int) -> DirectScheme:
    p = rng.uniform(size=m)
    u = rng.uniform(size=m)
    p[u < 0.2] = 0.0
    p[u > 0.8] = 1.0
    return DirectScheme(p)


def _fmt(inst: Instance, scheme: DirectScheme | None = None) -> str:
    text = f"omega={np.round(inst.omega, 9).tolist()} prior={np.round(inst.prior, 9).tolist()}"
    if scheme is not None:
        text += f" p={np.round(scheme.p, 9).tolist()}"
    return text


def suite_model(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    agree = _Property("persuasive-iff-recommendation-followed")
    value = _Property("persuasive-utility-is-recommended-value")
    threshold = _Property("hindsight-scheme-is-persuasive-threshold")
    for _ in range(_count(10_000, scale)):
        inst = _draw(rng)
        scheme = _random_scheme(rng, inst.m)
        if recommend_probability(inst, scheme) <= 0.0:
            continue
        if abs(float(inst.omega @ scheme.p)) <= MARGIN_SKIP:
            continue
        persuasive = is_persuasive(inst, scheme)
        follows = best_response(inst, posterior(inst, scheme, 1)) == 1
        agree.check(persuasive == follows, lambda: _fmt(inst, scheme))
        if persuasive:
            recommended = float(inst.value_weight @ scheme.p)
            utility = expected_platform_utility(inst, scheme)
            value.check(
                abs(utility - recommended) <= 1e-12,
                lambda: f"{_fmt(inst, scheme)} U={utility!r} recommended={recommended!r}",
            )
    for _ in range(_count(1000, scale)):
        inst = _draw(rng)
        sol = solve_threshold(inst)
        threshold.check(
            is_threshold_scheme(sol.scheme) and is_persuasive(inst, sol.scheme),
            lambda: f"{_fmt(inst, sol.scheme)}",
        )
    return [agree.result(), value.result(), threshold.result()]


def suite_oracle(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    agree = _Property("threshold-matches-bruteforce")
    restricted = _Property("threshold-matches-bruteforce-on-subsets")
    for m in range(2, 7):
        for _ in range(_count(1000, scale)):
            inst = _draw(rng, m)
            t = solve_threshold(inst).value
            b = solve_bruteforce(inst).value
            agree.check(abs(t - b) <= VALUE_TOL, lambda: f"{_fmt(inst)} greedy={t!r} brute={b!r}")
            keep = frozenset(int(k) for k in np.flatnonzero(rng.random(m) < 0.6))
            if not keep:
                continue
            t = solve_threshold(inst, keep).value
            b = solve_bruteforce(inst, keep).value
            restricted.check(
                abs(t - b) <= VALUE_TOL,
                lambda: f"{_fmt(inst)} retained={sorted(keep)} greedy={t!r} brute={b!r}",
            )
    return [agree.result(), restricted.result()]


def suite_checkpersu(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    sound = _Property("verdict-matches-persuasiveness")
    cost = _Property("mean-rounds-within-inverse-recommend-probability")
    regret = _Property("mean-regret-within-probe-bound")
    silent = _Property("never-recommending-scheme-exhausts")
    horizon = 10**9
    for _ in range(_count(100, scale)):
        inst = _draw(rng)
        env = Environment(inst, horizon, int(rng.integers(2**62)))
        for _ in range(100):
            scheme = _random_scheme(rng, inst.m)
            if recommend_probability(inst, scheme) <= 0.0:
                continue
            if abs(float(inst.omega @ scheme.p)) <= MARGIN_SKIP:
                continue
            verdict = env.check_persu(scheme).verdict
            expected = Verdict.PERSUASIVE if is_persuasive(inst, scheme) else Verdict.NOT_PERSUASIVE
            sound.check(verdict is expected, lambda: f"{_fmt(inst, scheme)} got {verdict.value}")

    trials = 500
    for _ in range(_count(20, scale)):
        inst = _draw(rng, unit_values=True)
        scheme = _random_scheme(rng, inst.m)
        while recommend_probability(inst, scheme) < 0.05:
            scheme = _random_scheme(rng, inst.m)
        env = Environment(inst, horizon, int(rng.integers(2**62)))
        used = np.empty(trials)
        spent = np.empty(trials)
        for t in range(trials):
            before = env.expected_regret
            used[t] = env.check_persu(scheme).rounds_used
            spent[t] = env.expected_regret - before
        q = recommend_probability(inst, scheme)
        se_used = float(np.std(used, ddof=1)) / math.sqrt(trials)
        cost.check(
            float(used.mean()) <= 1.0 / q + 3.0 * se_used + 1e-12,
            lambda: f"{_fmt(inst, scheme)} mean rounds {used.mean():.4f} vs 1/q={1.0 / q:.4f}",
        )
        bound = check_persu_regret_bound(inst, scheme)
        se_spent = float(np.std(spent, ddof=1)) / math.sqrt(trials)
        regret.check(
            float(spent.mean()) <= bound + 3.0 * se_spent + 1e-9,
            lambda: f"{_fmt(inst, scheme)} mean regret {spent.mean():.4f} vs bound {bound:.4f}",
        )

    inst = _draw(rng)
    env = Environment(inst, 1000, int(rng.integers(2**62)))
    result = env.check_persu(DirectScheme.zeros(inst.m))
    silent.check(
        result.verdict is Verdict.ROUND_EXHAUSTED and result.rounds_used == 1000,
        lambda: f"got {result.verdict.value} after {result.rounds_used} rounds",
    )
    return [sound.result(), cost.result(), regret.result(), silent.result()]


def suite_decompose(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    example = _Property("worked-example-weights")
    valid = _Property("random-decompositions-verify")
    dec = decompose_binary_support([0.1, 0.6, 0.9], [0.5, 0.3, 0.2])
    found = {comp.support: float(w) for comp, w in zip(dec.components, dec.weights)}
    want = {(0.1, 0.9): 0.16 / 0.31, (0.1, 0.6): 0.15 / 0.31}
    for support, weight in want.items():
        got = found.get(support)
        example.check(
            got is not None and abs(got - weight) <= 1e-12,
            lambda: f"component {support}: weight {got!r}, expected {weight!r}",
        )
    for _ in range(_count(100, scale)):
        k = int(rng.integers(2, 9))
        support = np.sort(rng.choice(np.linspace(0.0, 1.0, 1001), size=k, replace=False))
        probs = rng.dirichlet(np.ones(k))
        try:
            dec = decompose_binary_support(support, probs)
        except ValueError as exc:
            valid.fail(f"support={support.tolist()} probs={probs.tolist()}: {exc}")
            continue
        residual = linear_system_residual(dec, support, probs)
        valid.check(
            residual <= VALUE_TOL and all(len(c.support) <= 2 for c in dec.components),
            lambda: f"support={support.tolist()} probs={probs.tolist()} residual={residual!r}",
        )
    return [example.result(), valid.result()]


def suite_solver(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    value = _Property("value-within-precision-of-restricted-optimum")
    budget = _Property("queries-within-budget")
    config = SolverConfig()
    eps = 1e-3
    for _ in range(_count(100, scale)):
        m = int(rng.integers(2, 6))
        inst = _draw(rng, m)
        w = inst.omega
        top = int(np.argmax(w))
        retained = frozenset([top, *(k for k in range(m) if k != top and rng.random() < 0.7)])
        free = sorted(retained)
        x0 = np.zeros(m)
        free_sum = float(w[free].sum())
        c = 0.25 if free_sum >= 0.0 else min(0.25, float(w[top]) / (4.0 * -free_sum))
        x0[free] = c
        x0[top] += 0.5
        radius = 0.5 * min(c, float(w @ x0) / float(np.linalg.norm(w[free])))
        query = LPQuery(
            objective=inst.value_weight.copy(),
            oracle=HalfspaceOracle.of(w, 0.0),
            interior_point=x0,
            inner_radius=radius,
            outer_radius=float(np.sqrt(m)),
            precision=eps,
            confidence=eps,
            fixed_zero=frozenset(range(m)) - retained,
        )
        target = solve_bruteforce(inst, retained).value
        try:
            result = maximize(query, config)
        except BudgetExceeded as exc:
            value.fail(f"{_fmt(inst)} retained={free}: {exc}")
            continue
        value.check(
            result.succeeded and target - eps - VALUE_TOL <= result.value <= target + VALUE_TOL,
            lambda: f"{_fmt(inst)} retained={free} value={result.value!r} optimum={target!r}",
        )
        cap = query.budget(config)
        budget.check(
            result.oracle_queries <= cap,
            lambda: f"{_fmt(inst)} used {result.oracle_queries} queries, budget {cap}",
        )
    return [value.result(), budget.result()]


def _ball_inside(
    inst: Instance,
    center: DirectScheme,
    free: list[int],
    radius: float,
    lower: float,
    rng: np.random.Generator,
    samples: int = 1000,
) -> bool:
    d = len(free)
    directions = rng.standard_normal((samples, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.random(samples) ** (1.0 / d)
    points = np.tile(center.p, (samples, 1))
    points[:, free] += directions * radii[:, None]
    in_box = np.all((points >= -1e-12) & (points <= 1.0 + 1e-12), axis=1)
    persuasive = points @ inst.omega >= -1e-12
    valuable = points @ inst.value_weight >= lower / 16.0 - 1e-12
    return bool(np.all(in_box & persuasive & valuable))


def _dichotomy_instance(horizon: int) -> Instance:
    # One state is so costly that the second exploring phase must drop it.
    m = 3
    return Instance.from_lists(
        prior=[1 / 3, 1 / 3, 1 / 3], utility_gap=[3.0, -6.0, -3.0 * m * horizon]
    )


def suite_lemmas(rng: np.random.Generator, scale: float) -> list[PropertyResult]:
    bracket = _Property("loglog-phase1-brackets-optimum")
    interval = _Property("loglog-interval-within-sqrt-2eps")
    survive = _Property("loglog-true-order-survives")
    near = _Property("loglog-commits-within-1-over-T")
    within = _Property("policies-stay-within-horizon")
    horizon = 10_000
    for k in range(_count(50, scale)):
        m = 2 + k % 2
        inst = _draw(rng, m)
        env = Environment(inst, horizon, int(rng.integers(2**62)))
        trace = run_loglog_search(env, LogLogConfig(record_orders=True))
        within.check(env.consumed == horizon, lambda: f"loglog consumed {env.consumed}")
        optimum = env.optimum.value
        if not trace.exploration_completed or trace.lower_bound is None:
            continue
        lb = trace.lower_bound
        bracket.check(
            lb <= optimum + 1e-12 and optimum <= 2.0 * lb + 1e-12,
            lambda: f"{_fmt(inst)} lower bound {lb!r}, optimum {optimum!r}",
        )
        for left, right, eps in trace.intervals:
            interval.check(
                right - left <= math.sqrt(2.0 * eps) * left * (1.0 + 1e-9),
                lambda: f"{_fmt(inst)} interval ({left!r}, {right!r}) at eps={eps!r}",
            )
        truth = tuple(bang_per_buck_order(inst))
        survive.check(
            all(truth in orders for orders in trace.surviving_orders),
            lambda: f"{_fmt(inst)} order {truth} was filtered out",
        )
        assert trace.final_scheme is not None
        final = expected_platform_utility(inst, trace.final_scheme)
        near.check(
            final >= optimum - 1.0 / horizon - 1e-12,
            lambda: f"{_fmt(inst)} committed value {final!r}, optimum {optimum!r}",
        )

    lower_bound = _Property("poly-phase1-lower-bound-within-m-squared")
    dichotomy = _Property("poly-retained-states-dichotomy")
    ball = _Property("poly-interior-ball-feasible")
    budget = _Property("poly-mean-regret-within-budget")
    near_count = 0
    near_ok = 0
    poly_horizon = 100_000
    poly_seeds = _count(20, scale)
    instances = [_dichotomy_instance(poly_horizon)]
    instances += [_draw(rng, 3 + k % 3) for k in range(_count(20, scale))]
    for inst in instances:
        m = inst.m
        regrets: list[float] = []
        for _ in range(poly_seeds):
            env = Environment(inst, poly_horizon, int(rng.integers(2**62)))
            trace = run_poly_search(env)
            regrets.append(trace.expected_regret)
            within.check(env.consumed == poly_horizon, lambda: f"poly consumed {env.consumed}")
            optimum = env.optimum.value
            if trace.lower_bound is None:
                continue
            lb = trace.lower_bound
            if optimum >= 1.0 / poly_horizon:
                lower_bound.check(
                    lb >= optimum / m**2 - 1e-12,
                    lambda: f"{_fmt(inst)} lower bound {lb!r}, optimum {optimum!r}",
                )
            retained = trace.retained_states
            if not retained:
                continue
            w = inst.omega
            top = float(w.max())
            paired = {s for pair in trace.pair_set for s in pair}
            for s in range(m):
                if s in paired:
                    continue
                if s in retained:
                    ok = w[s] >= -m * poly_horizon * top
                else:
                    ok = w[s] < -(m * poly_horizon / 3.0) * top
                dichotomy.check(
                    bool(ok),
                    lambda: f"{_fmt(inst)} state {s} retained={s in retained} omega={w[s]!r}",
                )

            best = int(np.argmax(w))
            radius = solver_parameters(m, poly_horizon)["inner_radius"]
            free = sorted(retained)
            witness = False
            for i, j in trace.pair_set:
                if i != best:
                    continue
                try:
                    center = make_interior_candidate(inst, i, j, lb, retained, poly_horizon)
                except ValueError:
                    continue
                if _ball_inside(inst, center, free, radius, lb, rng):
                    witness = True
                    break
            ball.check(witness, lambda: f"{_fmt(inst)} pairs={trace.pair_set} retained={free}")

            if trace.exploration_completed and trace.solver_succeeded and all(
                trace.solver_succeeded.values()
            ):
                assert trace.final_scheme is not None
                near_count += 1
                final = expected_platform_utility(inst, trace.final_scheme)
                near_ok += final >= optimum - 10.0 / poly_horizon

        cap = 10.0 * m**6 * math.log(m * poly_horizon) ** 3
        mean_regret = float(np.mean(regrets))
        budget.check(
            mean_regret <= cap,
            lambda: f"{_fmt(inst)} mean regret {mean_regret:.6g} over budget {cap:.6g}",
        )

    rate = near_ok / near_count if near_count else 1.0
    near_poly = PropertyResult(
        "poly-commits-within-10-over-T",
        rate >= 0.95,
        near_count,
        None if rate >= 0.95 else f"{near_ok}/{near_count} runs within 10/T",
    )
    return [
        bracket.result(),
        interval.result(),
        survive.result(),
        near.result(),
        lower_bound.result(),
        dichotomy.result(),
        ball.result(),
        budget.result(),
        near_poly,
        within.result(),
    ]


SUITES: dict[VerifySuite, Callable[[np.random.Generator, float], list[PropertyResult]]] = {
    VerifySuite.MODEL: suite_model,
    VerifySuite.ORACLE: suite_oracle,
    VerifySuite.CHECKPERSU: suite_checkpersu,
    VerifySuite.DECOMPOSE: suite_decompose,
    VerifySuite.SOLVER: suite_solver,
    VerifySuite.LEMMAS: suite_lemmas,
}


def verify(suite: VerifySuite, *, scale: float = 1.0, seed: int = VERIFY_SEED) -> VerifyReport:
    """Run one property suite. Failures are report content, never exceptions."""
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}.")
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    results = SUITES[suite](rng, scale)
    report = VerifyReport(suite, seed, scale, results, time.perf_counter() - start)
    logger.info(
        "verify %s: %s in %.2fs",
        suite.value,
        "pass" if report.passed else "FAIL",
        report.elapsed,
    )
    return report
