"""Maximisation of a linear objective over a region known only through a membership oracle."""

from .cutting_plane import maximize
from .oracles import (
    AlwaysInsideOracle,
    BallOracle,
    HalfspaceOracle,
    OracleAborted,
    PersuasionOracle,
)
from .query import LPQuery, LPResult, MembershipOracle, SolverConfig, query_budget
from .separation import Separation, bisect_boundary, separation_from_membership

__all__ = [
    "AlwaysInsideOracle",
    "BallOracle",
    "HalfspaceOracle",
    "LPQuery",
    "LPResult",
    "MembershipOracle",
    "OracleAborted",
    "PersuasionOracle",
    "Separation",
    "SolverConfig",
    "bisect_boundary",
    "maximize",
    "query_budget",
    "separation_from_membership",
]
