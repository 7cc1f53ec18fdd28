"""QUBO and Ising instances on Chimera graphs: generation, MILP/MIQP
formulations, exact small-scale oracles and a local-search heuristic."""

from .chimera import Topology, build_chimera, induce_subgraph, neighbors, node_coord, node_index
from .formulations import MilpModel, MiqpModel, build_milp, build_miqp
from .generators import (GenSpec, gen_ising_fields, gen_ising_zero_field, gen_qubo_pm1,
                         gen_qubo_range, generate)
from .instances import (IsingInstance, QuboInstance, WeightedGraph, eval_ising, eval_qubo,
                        ising_to_qubo, qubo_to_ising, strip_fields)
from .lpformat import emit_lp, parse_lp
from .solvers import (HeuristicParams, SolveResult, run_restarts, solve_brute_force,
                      solve_chimera_dp, solve_local_search)

__version__ = "0.1.0"

__all__ = [
    "GenSpec", "HeuristicParams", "IsingInstance", "MilpModel", "MiqpModel", "QuboInstance",
    "SolveResult", "Topology", "WeightedGraph", "build_chimera", "build_milp", "build_miqp",
    "emit_lp", "eval_ising", "eval_qubo", "gen_ising_fields", "gen_ising_zero_field",
    "gen_qubo_pm1", "gen_qubo_range", "generate", "induce_subgraph", "ising_to_qubo",
    "neighbors", "node_coord", "node_index", "parse_lp", "qubo_to_ising", "run_restarts",
    "solve_brute_force", "solve_chimera_dp", "solve_local_search", "strip_fields",
]
