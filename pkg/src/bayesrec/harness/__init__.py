"""Experiment harness: random instances, seed fan-out, property suites and the CLI."""

from .experiment import (
    RegretReport,
    ScalingCheck,
    aggregate_regret,
    check_regret_scaling,
    run_experiment,
    run_policy,
    run_pricing_demo,
)
from .random_instances import instance_for, random_instance, random_omega
from .verify import PropertyResult, VerifyReport, verify

__all__ = [
    "PropertyResult",
    "RegretReport",
    "ScalingCheck",
    "VerifyReport",
    "aggregate_regret",
    "check_regret_scaling",
    "instance_for",
    "random_instance",
    "random_omega",
    "run_experiment",
    "run_policy",
    "run_pricing_demo",
    "verify",
]
