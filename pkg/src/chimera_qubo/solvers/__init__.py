"""Exact oracles (brute force, Chimera DP) and the local-search heuristic."""

from .brute import solve_brute_force
from .dp import solve_chimera_dp
from .local_search import run_restarts, solve_local_search
from .result import HeuristicParams, SolveResult

__all__ = [
    "HeuristicParams",
    "SolveResult",
    "run_restarts",
    "solve_brute_force",
    "solve_chimera_dp",
    "solve_local_search",
]
