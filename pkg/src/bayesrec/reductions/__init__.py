"""Constructive reductions: dynamic pricing, binary-support decomposition, plausibility."""

from .decomposition import (
    Component,
    Decomposition,
    DecompositionCheck,
    check_decomposition,
    decompose_binary_support,
    linear_system_residual,
    verify_decomposition,
)
from .plausibility import check_bayes_plausible, scheme_from_posteriors
from .pricing import (
    PricingInstance,
    build_pricing_instance,
    prices_from_schemes,
    pricing_regret,
    scheme_price,
    transcript_pricing_regret,
)

__all__ = [
    "Component",
    "Decomposition",
    "DecompositionCheck",
    "PricingInstance",
    "build_pricing_instance",
    "check_bayes_plausible",
    "check_decomposition",
    "decompose_binary_support",
    "linear_system_residual",
    "prices_from_schemes",
    "pricing_regret",
    "scheme_from_posteriors",
    "scheme_price",
    "transcript_pricing_regret",
    "verify_decomposition",
]
