import hashlib

import pytest

from chimera_qubo.chimera import build_chimera, make_topology
from chimera_qubo.errors import InvalidParameterError, KTooLargeError, TooLargeError
from chimera_qubo.generators import (gen_ising_fields, gen_ising_zero_field, gen_qubo_pm1,
                                     gen_qubo_range)
from chimera_qubo.instances import (IsingInstance, QuboInstance, WeightedGraph, eval_ising,
                                    evaluate, ising_to_qubo, restrict)
from chimera_qubo.solvers import (HeuristicParams, run_restarts, solve_brute_force,
                                  solve_chimera_dp, solve_local_search)

from conftest import naive_ising, naive_min, naive_qubo, random_subgraph_ising, random_subgraph_qubo

PAIR = make_topology(1, [0, 4], [(0, 4)])


def test_brute_pair_tiebreak():
    inst = IsingInstance(WeightedGraph(PAIR, {}, {(0, 4): 1}))
    res = solve_brute_force(inst)
    assert res.best_value == -1
    assert res.best_assignment == {0: -1, 4: 1}
    assert res.proven_optimal


def test_brute_zero_instance():
    t = build_chimera(1)
    res = solve_brute_force(IsingInstance(WeightedGraph(t)))
    assert res.best_value == 0 and set(res.best_assignment.values()) == {-1}
    q = QuboInstance(WeightedGraph(t), 5)
    res = solve_brute_force(q)
    assert res.best_value == 5 and set(res.best_assignment.values()) == {0}


@pytest.mark.parametrize("seed", range(8))
def test_brute_matches_naive_with_tiebreak(seed):
    inst = random_subgraph_ising(seed, n=9, lo=-1, hi=1)
    ref = naive_min(inst.nodes, lambda s: naive_ising(inst.J, inst.h, s), (-1, 1))
    res = solve_brute_force(inst)
    assert (res.best_value, res.best_assignment) == ref
    q = random_subgraph_qubo(seed, n=9, lo=-2, hi=2, offset=1)
    ref = naive_min(q.nodes, lambda x: naive_qubo(q.quadratic, q.linear, 1, x), (0, 1))
    res = solve_brute_force(q)
    assert (res.best_value, res.best_assignment) == ref


@pytest.mark.parametrize("seed", range(3))
def test_brute_gray_walk_with_many_high_bits(seed):
    # 20 nodes: 4 Gray-walked variables over a 16-variable block, checked every step
    inst = random_subgraph_ising(40 + seed, n=20, lo=-1, hi=1)
    res = solve_brute_force(inst, check_every=1)
    assert evaluate(inst, res.best_assignment) == res.best_value
    assert res.best_value == solve_chimera_dp(inst).best_value


def test_brute_lexicographic_across_gray_blocks():
    # zero instance on 18 nodes: every assignment ties, smallest is all -1
    t = make_topology(3, range(18), [])
    res = solve_brute_force(IsingInstance(WeightedGraph(t)))
    assert set(res.best_assignment.values()) == {-1}
    # single negative field on the first node: optimum sets it to +1, rest -1
    res = solve_brute_force(IsingInstance(WeightedGraph(t, {0: -1})))
    assert res.best_assignment[0] == 1
    assert all(res.best_assignment[v] == -1 for v in range(1, 18))


def test_brute_cap():
    with pytest.raises(TooLargeError):
        solve_brute_force(gen_ising_fields(2, 0), cap=26)


@pytest.mark.parametrize("seed", range(10))
def test_dp_matches_brute_on_c2_subgraphs(seed):
    inst = random_subgraph_ising(700 + seed, n=16)
    assert solve_chimera_dp(inst).best_value == solve_brute_force(inst).best_value
    q = ising_to_qubo(inst)
    assert solve_chimera_dp(q).best_value == solve_brute_force(q).best_value


def test_dp_zero_instance_c3():
    res = solve_chimera_dp(IsingInstance(WeightedGraph(build_chimera(3))))
    assert res.best_value == 0


def test_dp_k_limit():
    with pytest.raises(KTooLargeError):
        solve_chimera_dp(gen_ising_fields(5, 0))


def test_dp_assignment_evaluates():
    for k in (1, 2, 3):
        for inst in (gen_ising_fields(k, k), gen_qubo_range(k, -100, 100, k)):
            res = solve_chimera_dp(inst)
            assert evaluate(inst, res.best_assignment) == res.best_value


def test_dp_regression_values():
    # values confirmed by 32-node brute force
    assert solve_chimera_dp(gen_qubo_pm1(2, 0)).best_value == -29
    assert solve_chimera_dp(gen_ising_fields(2, 0)).best_value == -68


def test_spin_symmetry_zero_field():
    inst = gen_ising_zero_field(2, 3)
    res = solve_chimera_dp(inst)
    flipped = {v: -s for v, s in res.best_assignment.items()}
    assert eval_ising(inst, flipped) == res.best_value
    small = restrict(inst, range(14))
    b = solve_brute_force(small)
    assert eval_ising(small, {v: -s for v, s in b.best_assignment.items()}) == b.best_value


# -- heuristic ---------------------------------------------------------------

def test_heuristic_fields_only():
    t = make_topology(2, range(20), [])
    inst = IsingInstance(WeightedGraph(t, dict.fromkeys(range(20), -1)))
    for seed in range(5):
        res = solve_local_search(inst, HeuristicParams(max_iters=20, seed=seed))
        assert res.best_value == -20
        assert set(res.best_assignment.values()) == {1}
        assert res.iterations <= 20
        assert not res.proven_optimal


def test_heuristic_soundness_and_local_minimum():
    inst = gen_ising_fields(3, 17)
    n = len(inst.nodes)
    J, h = inst.J, inst.h
    events = []

    def observer(event, spins, energy, best):
        s = dict(zip(inst.nodes, spins))
        assert naive_ising(J, h, s) == energy
        if event == "perturb":
            for i in range(n):
                flipped = dict(s)
                flipped[inst.nodes[i]] *= -1
                assert naive_ising(J, h, flipped) >= energy
        events.append((event, best))

    res = solve_local_search(inst, HeuristicParams(max_iters=3000, seed=1), observer)
    bests = [b for _, b in events]
    assert all(a >= b for a, b in zip(bests, bests[1:]))
    assert bests[-1] == res.best_value == eval_ising(inst, res.best_assignment)
    assert any(e == "perturb" for e, _ in events)


def test_perturbation_size():
    p = HeuristicParams(max_iters=1)
    assert p.perturbation_size(1) == 1
    assert p.perturbation_size(30) == 1
    assert p.perturbation_size(31) == 2
    assert p.perturbation_size(439) == 15
    with pytest.raises(InvalidParameterError):
        HeuristicParams()
    with pytest.raises(InvalidParameterError):
        HeuristicParams(max_iters=1, perturbation_fraction=0)


def _trajectory_hash(inst, seed):
    digest = hashlib.sha256()

    def observer(event, spins, energy, best):
        digest.update(f"{event}:{energy}:{best}:{''.join('+' if x > 0 else '-' for x in spins)}\n".encode())

    solve_local_search(inst, HeuristicParams(max_iters=2000, seed=seed), observer)
    return digest.hexdigest()


def test_heuristic_deterministic():
    inst = gen_ising_fields(3, 5)
    assert _trajectory_hash(inst, 9) == _trajectory_hash(inst, 9)
    assert _trajectory_hash(inst, 9) != _trajectory_hash(inst, 10)


def test_heuristic_on_qubo():
    q = gen_qubo_range(2, -10, 10, 4)
    exact = solve_chimera_dp(q).best_value
    res = run_restarts(q, HeuristicParams(restarts=4, max_iters=5000, seed=3))
    assert evaluate(q, res.best_assignment) == res.best_value
    assert res.best_value == exact
    hit = solve_local_search(q, HeuristicParams(max_iters=10**6, seed=0, target=exact))
    assert hit.best_value == exact and hit.iterations < 10**6


def test_restarts_single_equals_local_search():
    inst = gen_ising_fields(2, 8)
    p = HeuristicParams(restarts=1, max_iters=500, seed=12)
    a = run_restarts(inst, p)
    b = solve_local_search(inst, p)
    assert (a.best_value, a.best_assignment) == (b.best_value, b.best_assignment)


def test_restarts_parallel_equals_sequential():
    inst = gen_ising_zero_field(3, 8)
    p = HeuristicParams(restarts=4, max_iters=300, seed=100)
    seq = run_restarts(inst, p, workers=1)
    par = run_restarts(inst, p, workers=2)
    assert (seq.best_value, seq.best_assignment) == (par.best_value, par.best_assignment)
    assert seq.extra == par.extra


def test_restarts_monotone_success():
    single = eight = 0
    for seed in range(50):
        inst = gen_ising_fields(2, 1000 + seed)
        exact = solve_chimera_dp(inst).best_value
        p1 = HeuristicParams(restarts=1, max_iters=30, seed=seed)
        p8 = HeuristicParams(restarts=8, max_iters=30, seed=seed)
        single += run_restarts(inst, p1).best_value == exact
        eight += run_restarts(inst, p8).best_value == exact
    assert eight >= single


def test_dp_warns_above_default_cap(monkeypatch):
    from chimera_qubo.solvers import dp
    monkeypatch.setattr(dp, "DEFAULT_MAX_K", 1)
    inst = gen_ising_fields(2, 0)
    with pytest.warns(ResourceWarning):
        assert dp.solve_chimera_dp(inst, max_k=2).best_value == -68
