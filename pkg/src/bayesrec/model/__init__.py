"""Problem primitives: instances, schemes, the Bayesian user and scheme constructions."""

from .constructions import (
    make_interior_candidate,
    make_phase1_scheme,
    make_phase2_scheme,
    make_rank_scheme,
)
from .instance import Instance, omega, validate_instance
from .response import (
    best_response,
    expected_platform_utility,
    general_platform_utility,
    is_persuasive,
    posterior,
    recommend_probability,
    signal_responses,
)
from .schemes import DirectScheme, GeneralScheme, Posterior, is_threshold_scheme, to_general

__all__ = [
    "DirectScheme",
    "GeneralScheme",
    "Instance",
    "Posterior",
    "best_response",
    "expected_platform_utility",
    "general_platform_utility",
    "is_persuasive",
    "is_threshold_scheme",
    "make_interior_candidate",
    "make_phase1_scheme",
    "make_phase2_scheme",
    "make_rank_scheme",
    "omega",
    "posterior",
    "recommend_probability",
    "signal_responses",
    "to_general",
    "validate_instance",
]
