"""Search over total orders of the states with a doubly-exponentially refined value grid.

The policy never learns the user's utilities. It keeps every total order of the
states whose rank scheme at the current value target is certified persuasive. The
first phase halves a value target from 1/2 until some order persuades, which brackets
the hindsight value within a factor of two. The second phase walks a grid of targets
inside the bracket, shrinking the grid step to ``eps**2 / 2`` after every pass, until
the bracket is narrower than ``1 / T``. The best certified target is then exploited.

A pass whose grid is empty (the bracket is already narrower than one step) counts as
clean: the bracket is kept, the step is refined and the loop goes on until the
``1 / T`` width is reached, rather than stopping at the first empty grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from logging import getLogger

from bayesrec.env.environment import Environment
from bayesrec.model.constructions import make_rank_scheme
from bayesrec.model.errors import PermutationCapExceeded, UnattainableTarget
from bayesrec.model.schemes import DirectScheme

from .common import PolicyTrace, ProbingPolicy

logger = getLogger(__name__)

Order = tuple[int, ...]


@dataclass
class LogLogConfig:
    """Configuration for :class:`LogLogSearch`.

    Attributes:
        permutation_cap: Largest state count whose ``m!`` orders are enumerated.
        record_orders: Store the live orders after every filter in the trace.
    """

    permutation_cap: int = 7
    record_orders: bool = False


class LogLogSearch(ProbingPolicy):
    name = "loglog"

    def __init__(self, env: Environment, config: LogLogConfig | None = None) -> None:
        super().__init__(env)
        self.config = config or LogLogConfig()
        m = env.inst.m
        if m > self.config.permutation_cap:
            raise PermutationCapExceeded(
                f"m={m} needs {math.factorial(m)} orders; the cap is "
                f"m={self.config.permutation_cap}."
            )
        self.orders: list[Order] = list(itertools.permutations(range(m)))

    def filter_orders(self, target: float) -> bool:
        """Probe every live order at ``target`` and keep the certified ones.

        Orders inducing the same scheme share one probe. Returns ``False`` (and keeps
        every order) when no order is certified or the target is out of reach.
        """
        groups: dict[tuple[float, ...], tuple[DirectScheme, list[Order]]] = {}
        for order in self.orders:
            try:
                scheme = make_rank_scheme(self.env.inst, order, target)
            except UnattainableTarget:
                return False
            key = scheme.key()
            if key in groups:
                groups[key][1].append(order)
            else:
                groups[key] = (scheme, [order])

        certified: set[Order] = set()
        for scheme, members in groups.values():
            if self.probe(scheme):
                certified.update(members)
        if not certified:
            return False
        self.orders = [order for order in self.orders if order in certified]
        if self.config.record_orders:
            self.trace.surviving_orders.append(list(self.orders))
        logger.debug("target %.12g: %d orders survive", target, len(self.orders))
        return True

    def explore(self) -> DirectScheme:
        horizon = self.env.horizon
        lower = 0.5
        floor = 1.0 / horizon**2
        while not self.filter_orders(lower):
            lower /= 2.0
            if lower < floor:
                logger.warning("no persuasive target above %.3g; committing no information", floor)
                return DirectScheme.zeros(self.env.inst.m)
        self.trace.lower_bound = lower

        self.enter_phase(2)
        left, right, delta = lower, 2.0 * lower, 1.0
        while right - left >= 1.0 / horizon:
            eps = delta / 2.0
            steps = math.floor((right - left) / (eps * left))
            self.trace.intervals.append((left, right, eps))
            # An empty grid (steps == 0) counts as a clean pass and only refines eps.
            for level in range(1, steps + 1):
                target = left + level * eps * left
                if not self.filter_orders(target):
                    right = target
                    left = left + (level - 1) * eps * left
                    break
            else:
                left = left + steps * eps * left
            delta = eps * eps

        return make_rank_scheme(self.env.inst, self.orders[0], left)


def run_loglog_search(env: Environment, config: LogLogConfig | None = None) -> PolicyTrace:
    """Run :class:`LogLogSearch` to the end of the horizon."""
    return LogLogSearch(env, config).run()
