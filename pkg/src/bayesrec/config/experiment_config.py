from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from bayesrec.model.errors import ConfigError
from bayesrec.policies.loglog_search import LogLogConfig
from bayesrec.policies.poly_search import PolySearchConfig

from .types import PolicyKind


@dataclass
class RandomInstanceSpec:
    """Random-instance family used when an experiment has no instance file.

    Attributes:
        m: Number of states (at least 2).
        omega_low: Smallest magnitude of a prior-weighted utility gap before rescaling.
        omega_high: Largest magnitude of a prior-weighted utility gap before rescaling.
        seed: Seed of the instance draw (independent of the run seeds).
        distinct_belief: Draw the user's belief independently of the platform prior.
        random_values: Draw platform values uniformly from [0.1, 1] instead of all ones.
    """

    m: int
    omega_low: float = 0.1
    omega_high: float = 1.0
    seed: int = 0
    distinct_belief: bool = False
    random_values: bool = False

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ConfigError(f"generator.m must be at least 2, got {self.m}.")
        if not 0.0 < self.omega_low <= self.omega_high:
            raise ConfigError(
                "generator.omega_low/omega_high must satisfy 0 < low <= high, "
                f"got ({self.omega_low}, {self.omega_high})."
            )
        if self.seed < 0:
            raise ConfigError(f"generator.seed must be non-negative, got {self.seed}.")


@dataclass
class ExperimentConfig:
    """One regret experiment: a policy run on one instance over several horizons.

    Exactly one of ``instance_path`` and ``generator`` is set.

    Attributes:
        policy: Policy to run.
        horizons: Horizons ``T``, strictly ascending.
        seeds: Independent runs per horizon.
        master_seed: Root of every run seed.
        output_dir: Directory receiving the CSV tables.
        instance_path: YAML instance file.
        generator: Random-instance family.
        workers: Threads running seeds concurrently.
        log_commits: Write the per-round commit log of every run.
        loglog: Settings of the order-search policy.
        poly: Settings of the polynomial search policy.
    """

    policy: PolicyKind
    horizons: list[int]
    seeds: int = 1
    master_seed: int = 0
    output_dir: Path = Path("runs")
    instance_path: Path | None = None
    generator: RandomInstanceSpec | None = None
    workers: int = 1
    log_commits: bool = False
    loglog: LogLogConfig = field(default_factory=LogLogConfig)
    poly: PolySearchConfig = field(default_factory=PolySearchConfig)

    def __post_init__(self) -> None:
        if (self.instance_path is None) == (self.generator is None):
            raise ConfigError("exactly one of 'instance' and 'generator' must be given.")
        if not self.horizons:
            raise ConfigError("horizons must not be empty.")
        if any(h < 1 for h in self.horizons):
            raise ConfigError(f"horizons must be positive, got {self.horizons}.")
        if any(b <= a for a, b in zip(self.horizons, self.horizons[1:])):
            raise ConfigError(f"horizons must be strictly ascending, got {self.horizons}.")
        if self.seeds < 1:
            raise ConfigError(f"seeds must be at least 1, got {self.seeds}.")
        if self.master_seed < 0:
            raise ConfigError(f"master_seed must be non-negative, got {self.master_seed}.")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}.")
