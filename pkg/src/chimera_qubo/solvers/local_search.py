"""Randomized steepest-descent local search with random perturbations.

Start from a uniformly random spin assignment.  While some single flip
strictly lowers the energy, flip the one that lowers it most (lowest node
position on ties).  At a local minimum flip a uniformly random subset of
``ceil(n * perturbation_fraction)`` distinct spins.  The best assignment seen
at any step is returned.

Per-node flip gains are kept up to date in O(degree) per flip.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from ..errors import InvalidParameterError
from ..instances import IsingInstance, Instance, QUBO_TO_ISING_SCALE, qubo_to_ising
from ..rng import MASK64, SplitMix64
from .result import HeuristicParams, SolveResult


def _local_search(ising: IsingInstance, params: HeuristicParams, target, observer):
    af = ising.arrays
    n = len(af.nodes)
    if n == 0:
        raise InvalidParameterError("instance has no nodes")
    adj = [[] for _ in range(n)]
    for a, b, w in zip(af.ei.tolist(), af.ej.tolist(), af.w.tolist()):
        if w:
            adj[a].append((b, w))
            adj[b].append((a, w))
    h = af.lin.tolist()
    rng = SplitMix64(params.seed)
    size = params.perturbation_size(n)
    deadline = None if params.time_limit is None else time.perf_counter() + params.time_limit
    max_iters = params.max_iters

    s = [rng.sign() for _ in range(n)]
    field = h[:]
    for i in range(n):
        for j, w in adj[i]:
            field[i] += w * s[j]
    energy = sum(h[i] * s[i] for i in range(n))
    energy += sum(w * s[a] * s[b] for a, b, w in zip(af.ei.tolist(), af.ej.tolist(), af.w.tolist()))
    gain = [-2 * s[i] * field[i] for i in range(n)]  # energy change if i flips

    def flip(i):
        nonlocal energy
        energy += gain[i]
        si = -s[i]
        s[i] = si
        gain[i] = -gain[i]
        for j, w in adj[i]:
            field[j] += 2 * w * si
            gain[j] = -2 * s[j] * field[j]

    best = energy
    best_s = s[:]
    iters = 0
    if observer:
        observer("start", s, energy, best)
    while True:
        if target is not None and best <= target:
            break
        if max_iters is not None and iters >= max_iters:
            break
        if deadline is not None and time.perf_counter() >= deadline:
            break
        m = min(gain)
        if m < 0:
            flip(gain.index(m))
            kind = "descent"
        else:
            if observer:
                observer("perturb", s, energy, best)
            for i in rng.sample(n, size):
                flip(i)
            kind = "perturbed"
        iters += 1
        if energy < best:
            best = energy
            best_s = s[:]
        if observer:
            observer(kind, s, energy, best)
    return best, dict(zip(af.nodes, best_s)), iters


def solve_local_search(inst: Instance, params: HeuristicParams, observer=None) -> SolveResult:
    """One seeded run of the heuristic (``params.restarts`` is ignored).

    QUBO instances are solved in spin space through
    :func:`~chimera_qubo.instances.qubo_to_ising`; the result is mapped back.
    ``observer(event, spins, energy, best)`` is called with ``event`` one of
    ``"start"``, ``"descent"``, ``"perturb"`` (before the random flips, at a
    local minimum) and ``"perturbed"``; ``spins`` is the live position-ordered
    list and energies are in spin space.
    """
    start = time.perf_counter()
    if isinstance(inst, IsingInstance):
        best, assignment, iters = _local_search(inst, params, params.target, observer)
        value = best
    else:
        ising, offset = qubo_to_ising(inst)
        target = None if params.target is None else QUBO_TO_ISING_SCALE * params.target - offset
        best, spins, iters = _local_search(ising, params, target, observer)
        value = (best + offset) // QUBO_TO_ISING_SCALE
        assignment = {v: (x + 1) // 2 for v, x in spins.items()}
    return SolveResult(value, assignment, False, iters, time.perf_counter() - start, "heur")


def _restart(args):
    inst, params = args
    return solve_local_search(inst, params)


def run_restarts(inst: Instance, params: HeuristicParams, workers: int = 1) -> SolveResult:
    """``params.restarts`` independent runs with seeds ``seed, seed + 1, ...``.

    The lowest value wins; among equal values the lowest seed offset wins, so
    the result does not depend on ``workers``.  ``time_limit`` applies to each
    run separately, as if every run had a core of its own.
    """
    start = time.perf_counter()
    runs = [HeuristicParams(1, params.perturbation_fraction, params.max_iters,
                            params.time_limit, (params.seed + i) & MASK64, params.target)
            for i in range(params.restarts)]
    if workers > 1 and len(runs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart, [(inst, p) for p in runs]))
    else:
        results = [solve_local_search(inst, p) for p in runs]
    winner = min(range(len(results)), key=lambda i: (results[i].best_value, i))
    best = results[winner]
    return SolveResult(best.best_value, best.best_assignment, False,
                       sum(r.iterations for r in results), time.perf_counter() - start,
                       "heur", {"winner": winner, "values": [r.best_value for r in results]})
