"""Ising and QUBO instances with exact integer weights.

Both encodings share :class:`WeightedGraph`: one weight per node and one per
unordered edge.  For an Ising instance the edge weights are couplers ``J`` and
the node weights are fields ``h``::

    E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i,   s in {-1, +1}^n

For a QUBO instance they are the upper-triangular ``Q`` (node weight = ``Q_ii``)
plus a constant offset::

    f(x) = sum_{i<j} Q_ij x_i x_j + sum_i Q_ii x_i + offset,   x in {0, 1}^n

Assignments are plain mappings ``node -> value``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from numbers import Integral
from typing import Mapping, NamedTuple, Union

import numpy as np

from .chimera import Topology, induce_subgraph
from .errors import IncompleteAssignmentError, InvalidParameterError, UnknownNodeError

SpinAssignment = Mapping[int, int]
BinaryAssignment = Mapping[int, int]

#: ``4 * eval_qubo(q, x) == eval_ising(qubo_to_ising(q)[0], s) + offset``
QUBO_TO_ISING_SCALE = 4


def _as_int(value, what):
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidParameterError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class WeightedGraph:
    """Topology plus integer node and edge weights.

    Missing entries default to zero; after construction ``node_weight`` has a
    key for every node and ``edge_weight`` one for every topology edge, so two
    graphs compare equal exactly when their weights agree everywhere.
    """

    topology: Topology
    node_weight: dict = field(default_factory=dict)
    edge_weight: dict = field(default_factory=dict)

    def __post_init__(self):
        t = self.topology
        nw = {v: 0 for v in t.nodes}
        for v, w in self.node_weight.items():
            if v not in t.node_set:
                raise UnknownNodeError(f"weight given for node {v} outside the topology")
            nw[v] = _as_int(w, f"weight of node {v}")
        ew = {e: 0 for e in t.edges}
        for (u, v), w in self.edge_weight.items():
            key = (u, v) if u < v else (v, u)
            if key not in ew:
                raise InvalidParameterError(f"weight given for non-edge {key}")
            ew[key] = _as_int(w, f"weight of edge {key}")
        object.__setattr__(self, "node_weight", nw)
        object.__setattr__(self, "edge_weight", ew)

    def incident_sum(self) -> dict:
        """``node -> sum of weights of incident edges``."""
        acc = dict.fromkeys(self.topology.nodes, 0)
        for (u, v), w in self.edge_weight.items():
            acc[u] += w
            acc[v] += w
        return acc

    def with_weights(self, node_weight=None, edge_weight=None) -> "WeightedGraph":
        return WeightedGraph(
            self.topology,
            self.node_weight if node_weight is None else node_weight,
            self.edge_weight if edge_weight is None else edge_weight,
        )


class ArrayForm(NamedTuple):
    """Position-indexed view of an instance used by the solvers.

    ``values`` is the variable domain, ``(0, 1)`` or ``(-1, 1)``; the
    objective is ``offset + lin @ v + sum(w * v[ei] * v[ej])``.
    """

    nodes: tuple
    lin: np.ndarray
    ei: np.ndarray
    ej: np.ndarray
    w: np.ndarray
    offset: int
    values: tuple

    @property
    def spin(self) -> bool:
        return self.values == (-1, 1)


def _array_form(graph: WeightedGraph, offset: int, values: tuple) -> ArrayForm:
    nodes = graph.topology.nodes
    pos = {v: i for i, v in enumerate(nodes)}
    lin = np.array([graph.node_weight[v] for v in nodes], dtype=np.int64)
    edges = graph.topology.edges
    ei = np.array([pos[u] for u, _ in edges], dtype=np.int64)
    ej = np.array([pos[v] for _, v in edges], dtype=np.int64)
    w = np.array([graph.edge_weight[e] for e in edges], dtype=np.int64)
    return ArrayForm(nodes, lin, ei, ej, w, offset, values)


@dataclass(frozen=True)
class IsingInstance:
    graph: WeightedGraph

    @property
    def topology(self) -> Topology:
        return self.graph.topology

    @property
    def J(self) -> dict:
        return self.graph.edge_weight

    @property
    def h(self) -> dict:
        return self.graph.node_weight

    @property
    def nodes(self) -> tuple:
        return self.graph.topology.nodes

    @cached_property
    def arrays(self) -> ArrayForm:
        return _array_form(self.graph, 0, (-1, 1))


@dataclass(frozen=True)
class QuboInstance:
    graph: WeightedGraph
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "offset", _as_int(self.offset, "offset"))

    @property
    def topology(self) -> Topology:
        return self.graph.topology

    @property
    def quadratic(self) -> dict:
        return self.graph.edge_weight

    @property
    def linear(self) -> dict:
        return self.graph.node_weight

    @property
    def nodes(self) -> tuple:
        return self.graph.topology.nodes

    @cached_property
    def arrays(self) -> ArrayForm:
        return _array_form(self.graph, self.offset, (0, 1))


Instance = Union[IsingInstance, QuboInstance]


def ising_instance(topology: Topology, J=None, h=None) -> IsingInstance:
    return IsingInstance(WeightedGraph(topology, h or {}, J or {}))


def qubo_instance(topology: Topology, quadratic=None, linear=None, offset=0) -> QuboInstance:
    return QuboInstance(WeightedGraph(topology, linear or {}, quadratic or {}), offset)


def _check_assignment(nodes, values, allowed):
    for v in nodes:
        try:
            x = values[v]
        except KeyError:
            raise IncompleteAssignmentError(f"no value for node {v}") from None
        if x not in allowed:
            raise IncompleteAssignmentError(f"node {v} has value {x!r}, expected one of {allowed}")


def eval_ising(inst: IsingInstance, s: SpinAssignment) -> int:
    """Ising energy with each unordered coupler counted once."""
    g = inst.graph
    _check_assignment(g.topology.nodes, s, (-1, 1))
    total = 0
    for (u, v), w in g.edge_weight.items():
        total += w * s[u] * s[v]
    for v, w in g.node_weight.items():
        total += w * s[v]
    return int(total)


def eval_qubo(inst: QuboInstance, x: BinaryAssignment) -> int:
    g = inst.graph
    _check_assignment(g.topology.nodes, x, (0, 1))
    total = inst.offset
    for (u, v), w in g.edge_weight.items():
        if x[u] and x[v]:
            total += w
    for v, w in g.node_weight.items():
        if x[v]:
            total += w
    return int(total)


def evaluate(inst: Instance, assignment) -> int:
    if isinstance(inst, IsingInstance):
        return eval_ising(inst, assignment)
    return eval_qubo(inst, assignment)


def spins_to_binary(s: SpinAssignment) -> dict:
    return {v: (x + 1) // 2 for v, x in s.items()}


def binary_to_spins(x: BinaryAssignment) -> dict:
    return {v: 2 * b - 1 for v, b in x.items()}


def ising_to_qubo(inst: IsingInstance) -> QuboInstance:
    """Substitute ``s_i = 2 x_i - 1``.

    Couplers become ``4 J_ij``, node ``i`` gets ``2 h_i - 2 sum_j J_ij`` and the
    offset is ``sum J - sum h``, so the two objectives agree pointwise.
    """
    g = inst.graph
    inc = g.incident_sum()
    quadratic = {e: 4 * w for e, w in g.edge_weight.items()}
    linear = {v: 2 * g.node_weight[v] - 2 * inc[v] for v in g.topology.nodes}
    offset = sum(g.edge_weight.values()) - sum(g.node_weight.values())
    return QuboInstance(WeightedGraph(g.topology, linear, quadratic), offset)


def qubo_to_ising(inst: QuboInstance) -> tuple:
    """Inverse substitution ``x_i = (s_i + 1) / 2``, scaled by 4 to stay integral.

    Returns ``(ising, offset)`` with
    ``4 * eval_qubo(inst, x) == eval_ising(ising, s) + offset`` for every
    ``x`` and ``s = 2x - 1``.
    """
    g = inst.graph
    inc = g.incident_sum()
    J = dict(g.edge_weight)
    h = {v: 2 * g.node_weight[v] + inc[v] for v in g.topology.nodes}
    offset = (sum(g.edge_weight.values()) + 2 * sum(g.node_weight.values())
              + QUBO_TO_ISING_SCALE * inst.offset)
    return IsingInstance(WeightedGraph(g.topology, h, J)), offset


def strip_fields(inst: IsingInstance) -> IsingInstance:
    """Same couplers, all fields zero."""
    return IsingInstance(inst.graph.with_weights(node_weight={}))


def restrict(inst: Instance, keep) -> Instance:
    """Restrict an instance to the subgraph induced by ``keep``."""
    g = inst.graph
    t = induce_subgraph(g.topology, keep)
    graph = WeightedGraph(
        t,
        {v: g.node_weight[v] for v in t.nodes},
        {e: g.edge_weight[e] for e in t.edges},
    )
    if isinstance(inst, IsingInstance):
        return IsingInstance(graph)
    return QuboInstance(graph, inst.offset)
