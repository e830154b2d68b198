"""Enumerations shared by the environment, the policies and the harness."""

from enum import Enum


class Verdict(Enum):
    """Outcome of one persuasiveness probe."""

    PERSUASIVE = "true"
    NOT_PERSUASIVE = "false"
    ROUND_EXHAUSTED = "round-exhausted"


class PolicyKind(Enum):
    """Policies the harness can run."""

    LOGLOG = "loglog"
    POLY = "poly"
    NO_INFO = "no-info"
    FULL_REVEAL = "full-reveal"
    HINDSIGHT = "hindsight"

    @property
    def is_baseline(self) -> bool:
        return self in (PolicyKind.NO_INFO, PolicyKind.FULL_REVEAL, PolicyKind.HINDSIGHT)


class VerifySuite(Enum):
    """Property batteries reachable from ``bayesrec verify``."""

    MODEL = "model"
    ORACLE = "oracle"
    CHECKPERSU = "checkpersu"
    DECOMPOSE = "decompose"
    SOLVER = "solver"
    LEMMAS = "lemmas"
