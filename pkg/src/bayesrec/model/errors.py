"""Exception types raised across bayesrec.

Validation problems derive from ``ValueError``; failures that happen while a run is
in progress (horizon used up, solver budget hit) derive from ``RuntimeError``.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from bayesrec.solver.query import LPResult


class PriorNotSimplex(ValueError):
    """A prior or belief vector is not a probability vector."""


class AssumptionOneViolated(ValueError):
    """No state has a positive prior-weighted utility gap."""


class AssumptionTwoViolated(ValueError):
    """The prior-weighted utility gaps do not sum to a negative number."""


class ZeroProbabilitySignal(ValueError):
    """The queried signal is never realized under the user's prior."""


class UnattainableTarget(ValueError):
    """A scheme construction cannot hit the requested value target."""


class TooManyStates(ValueError):
    """The instance is too large for exhaustive enumeration."""


class PermutationCapExceeded(ValueError):
    """The instance has more states than the permutation search supports."""


class DegenerateScheme(ValueError):
    """A scheme cannot be normalized (it never recommends in state 1)."""


class NotADistribution(ValueError):
    """Probabilities are negative or do not sum to one."""


class EmptySide(ValueError):
    """All probability mass lies on one side of the mean."""


class ConfigError(ValueError):
    """A configuration or input file is malformed."""


class HorizonExhausted(RuntimeError):
    """A round was requested after the horizon was consumed."""


class BudgetExceeded(RuntimeError):
    """The membership solver hit its iteration or query cap.

    The best point found so far is kept on :attr:`result`.
    """

    def __init__(self, message: str, result: LPResult) -> None:
        super().__init__(message)
        self.result = result
