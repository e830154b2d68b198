"""Fixed-scheme comparison policies."""

from __future__ import annotations

import numpy as np

from bayesrec.config.types import PolicyKind
from bayesrec.env.environment import Environment
from bayesrec.model.instance import omega
from bayesrec.model.schemes import DirectScheme

from .common import PolicyTrace, exploit


def baseline_scheme(env: Environment, kind: PolicyKind) -> DirectScheme:
    """Scheme a baseline commits to.

    ``FULL_REVEAL`` recommends exactly in the states the user likes, which is always
    persuasive. ``HINDSIGHT`` reads the hidden optimum and exists for debugging.
    """
    if kind is PolicyKind.NO_INFO:
        return DirectScheme.zeros(env.inst.m)
    if kind is PolicyKind.FULL_REVEAL:
        return DirectScheme((omega(env.inst) >= 0.0).astype(np.float64))
    if kind is PolicyKind.HINDSIGHT:
        return env.optimum.scheme
    raise ValueError(f"{kind.value!r} is not a baseline policy.")


def run_baseline(env: Environment, kind: PolicyKind) -> PolicyTrace:
    trace = PolicyTrace(policy=kind.value, horizon=env.horizon, exploration_completed=True)
    return exploit(env, baseline_scheme(env, kind), trace)
