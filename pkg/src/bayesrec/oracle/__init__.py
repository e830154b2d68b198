"""Hindsight-optimal signaling scheme, by threshold greedy and by vertex enumeration."""

from .hindsight import (
    HindsightSolution,
    bang_per_buck,
    bang_per_buck_order,
    solve_bruteforce,
    solve_threshold,
)

__all__ = [
    "HindsightSolution",
    "bang_per_buck",
    "bang_per_buck_order",
    "solve_bruteforce",
    "solve_threshold",
]
