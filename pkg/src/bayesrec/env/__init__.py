"""Round-consuming simulator, persuasiveness probe and regret ledger."""

from .commit_log import CommitLog, replay_regret
from .environment import (
    Environment,
    PersuCheckResult,
    RoundBlock,
    RoundOutcome,
    check_persu_regret_bound,
    stackelberg_regret,
)
from .seeding import derive_seed, make_rng

__all__ = [
    "CommitLog",
    "Environment",
    "PersuCheckResult",
    "RoundBlock",
    "RoundOutcome",
    "check_persu_regret_bound",
    "derive_seed",
    "make_rng",
    "replay_regret",
    "stackelberg_regret",
]
