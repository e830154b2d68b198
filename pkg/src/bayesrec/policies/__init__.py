"""Online policies that learn to persuade without knowing the user's utilities."""

from .baselines import baseline_scheme, run_baseline
from .common import PolicyTrace, ProbingPolicy, exploit
from .loglog_search import LogLogConfig, LogLogSearch, run_loglog_search
from .poly_search import PolySearch, PolySearchConfig, run_poly_search, solver_parameters

__all__ = [
    "LogLogConfig",
    "LogLogSearch",
    "PolicyTrace",
    "PolySearch",
    "PolySearchConfig",
    "ProbingPolicy",
    "baseline_scheme",
    "exploit",
    "run_baseline",
    "run_loglog_search",
    "run_poly_search",
    "solver_parameters",
]
