import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chimera_qubo.chimera import build_chimera, make_topology
from chimera_qubo.errors import IncompleteAssignmentError, InvalidParameterError
from chimera_qubo.generators import gen_ising_fields
from chimera_qubo.instances import (
    IsingInstance, QuboInstance, WeightedGraph, binary_to_spins, eval_ising, eval_qubo,
    ising_to_qubo, qubo_to_ising, restrict, spins_to_binary, strip_fields)

from conftest import naive_ising, naive_qubo, random_subgraph_ising, random_subgraph_qubo

PAIR = make_topology(1, [0, 4], [(0, 4)])


def pair_ising(J=1, h0=0, h4=0):
    return IsingInstance(WeightedGraph(PAIR, {0: h0, 4: h4}, {(0, 4): J}))


def all_spins(nodes):
    for vals in itertools.product((-1, 1), repeat=len(nodes)):
        yield dict(zip(nodes, vals))


def test_eval_ising_pair():
    assert eval_ising(pair_ising(), {0: 1, 4: -1}) == -1


def test_eval_ising_incomplete():
    with pytest.raises(IncompleteAssignmentError):
        eval_ising(pair_ising(), {0: 1})
    with pytest.raises(IncompleteAssignmentError):
        eval_ising(pair_ising(), {0: 1, 4: 0})


def test_spin_flip_symmetry_zero_field():
    inst = strip_fields(random_subgraph_ising(3, n=10))
    for s in itertools.islice(all_spins(inst.nodes), 64):
        neg = {v: -x for v, x in s.items()}
        assert eval_ising(inst, s) == eval_ising(inst, neg)


@pytest.mark.parametrize("seed", range(5))
def test_eval_matches_naive(seed):
    inst = random_subgraph_ising(seed, n=10)
    q = random_subgraph_qubo(seed, n=10, offset=7)
    for s in itertools.islice(all_spins(inst.nodes), 100):
        assert eval_ising(inst, s) == naive_ising(inst.J, inst.h, s)
    for s in itertools.islice(all_spins(q.nodes), 100):
        x = spins_to_binary(s)
        assert eval_qubo(q, x) == naive_qubo(q.quadratic, q.linear, 7, x)


def test_eval_qubo_extremes():
    q = random_subgraph_qubo(11, n=10, offset=-3)
    zeros = dict.fromkeys(q.nodes, 0)
    ones = dict.fromkeys(q.nodes, 1)
    assert eval_qubo(q, zeros) == -3
    assert eval_qubo(q, ones) == sum(q.quadratic.values()) + sum(q.linear.values()) - 3


def test_ising_to_qubo_pair_by_hand():
    # (2x0 - 1)(2x4 - 1) = 4 x0 x4 - 2 x0 - 2 x4 + 1
    q = ising_to_qubo(pair_ising())
    assert q.quadratic == {(0, 4): 4}
    assert q.linear == {0: -2, 4: -2}
    assert q.offset == 1
    assert eval_qubo(q, {0: 1, 4: 0}) == -1


def test_ising_to_qubo_zero():
    q = ising_to_qubo(IsingInstance(WeightedGraph(build_chimera(1))))
    assert set(q.quadratic.values()) == {0} and set(q.linear.values()) == {0}
    assert q.offset == 0


@pytest.mark.parametrize("seed", range(4))
def test_full_table_identity_8_nodes(seed):
    inst = random_subgraph_ising(100 + seed, n=8)
    q = ising_to_qubo(inst)
    assert q.topology == inst.topology
    for s in all_spins(inst.nodes):
        assert eval_ising(inst, s) == eval_qubo(q, spins_to_binary(s))


@pytest.mark.parametrize("seed", range(4))
def test_qubo_to_ising_roundtrip(seed):
    q = random_subgraph_qubo(200 + seed, n=10, offset=seed - 2)
    ising, off = qubo_to_ising(q)
    back = ising_to_qubo(ising)
    for s in all_spins(q.nodes):
        x = spins_to_binary(s)
        assert 4 * eval_qubo(q, x) == eval_ising(ising, s) + off
        assert eval_qubo(back, x) == 4 * eval_qubo(q, x) - off


def test_qubo_to_ising_small_cases():
    zero = QuboInstance(WeightedGraph(build_chimera(1)))
    ising, off = qubo_to_ising(zero)
    assert off == 0 and set(ising.J.values()) == {0} and set(ising.h.values()) == {0}
    single = QuboInstance(WeightedGraph(make_topology(1, [3], []), {3: 1}))
    ising, off = qubo_to_ising(single)
    for b in (0, 1):
        assert 4 * eval_qubo(single, {3: b}) == eval_ising(ising, {3: 2 * b - 1}) + off


def test_strip_fields():
    inst = pair_ising(J=-1)
    assert strip_fields(inst) == inst
    single = IsingInstance(WeightedGraph(make_topology(1, [2], []), {2: 1}))
    stripped = strip_fields(single)
    assert eval_ising(stripped, {2: 1}) == eval_ising(stripped, {2: -1}) == 0
    g = gen_ising_fields(2, 9)
    q = ising_to_qubo(strip_fields(g))
    inc = g.graph.incident_sum()
    assert q.linear == {v: -2 * inc[v] for v in g.nodes}


def test_strip_commutes_with_restrict():
    inst = gen_ising_fields(2, 4)
    keep = list(range(0, 32, 3))
    assert strip_fields(restrict(inst, keep)) == restrict(strip_fields(inst), keep)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12))
def test_optimum_preserved(seed, n):
    inst = random_subgraph_ising(seed, n=n)
    q = ising_to_qubo(inst)
    spins_min = min(eval_ising(inst, s) for s in all_spins(inst.nodes))
    bin_min = min(eval_qubo(q, spins_to_binary(s)) for s in all_spins(inst.nodes))
    assert spins_min == bin_min


def test_weights_must_be_integers():
    with pytest.raises(InvalidParameterError):
        WeightedGraph(PAIR, {0: 0.5})
    with pytest.raises(InvalidParameterError):
        WeightedGraph(PAIR, {}, {(0, 1): 1})


def test_large_weights_stay_exact():
    big = 10**15
    inst = IsingInstance(WeightedGraph(PAIR, {0: big, 4: big}, {(0, 4): big}))
    q = ising_to_qubo(inst)
    for s in all_spins(inst.nodes):
        assert eval_ising(inst, s) == eval_qubo(q, spins_to_binary(s))
    assert binary_to_spins({0: 1, 4: 0}) == {0: 1, 4: -1}
