"""Chimera graphs ``C_k`` and their node-induced subgraphs.

A Chimera graph is a ``k x k`` grid of ``K_{4,4}`` unit cells.  Right
partitions are coupled to the right partitions of the horizontally adjacent
cells, left partitions to the left partitions of the vertically adjacent cells.

Nodes are plain integers::

    index = 8 * (row * k + col) + 4 * partition + slot

with ``partition`` 0 for the left half and 1 for the right half and ``slot``
in ``0..3``.  Edges are ``(u, v)`` tuples with ``u < v``, sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import InvalidParameterError, UnknownNodeError

LEFT = 0
RIGHT = 1

# node indices are kept inside the signed 64-bit range
_INDEX_LIMIT = 2**63


class ChimeraCoord(NamedTuple):
    row: int
    col: int
    partition: int
    slot: int


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidParameterError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if 8 * k * k > _INDEX_LIMIT:
        raise InvalidParameterError(f"k={k} overflows the node index range")
    return k


def node_index(k: int, row: int, col: int, partition: int, slot: int) -> int:
    """Encode cell coordinates and position as a node index."""
    if not (0 <= row < k and 0 <= col < k and partition in (0, 1) and 0 <= slot < 4):
        raise InvalidParameterError(
            f"coordinates ({row}, {col}, {partition}, {slot}) out of range for k={k}")
    return 8 * (row * k + col) + 4 * partition + slot


def node_coord(k: int, index: int) -> ChimeraCoord:
    """Inverse of :func:`node_index`."""
    if not 0 <= index < 8 * k * k:
        raise UnknownNodeError(f"node {index} not in C_{k}")
    cell, rem = divmod(index, 8)
    row, col = divmod(cell, k)
    partition, slot = divmod(rem, 4)
    return ChimeraCoord(row, col, partition, slot)


def is_chimera_edge(k: int, u: int, v: int) -> bool:
    n = 8 * k * k
    if not (0 <= u < n and 0 <= v < n) or u == v:
        return False
    a, b = node_coord(k, u), node_coord(k, v)
    if (a.row, a.col) == (b.row, b.col):
        return a.partition != b.partition
    if a.partition != b.partition or a.slot != b.slot:
        return False
    if a.partition == RIGHT:
        return a.row == b.row and abs(a.col - b.col) == 1
    return a.col == b.col and abs(a.row - b.row) == 1


@dataclass(frozen=True)
class Topology:
    """An (edge-)subgraph of ``C_k``.

    ``nodes`` is sorted ascending and ``edges`` holds ``(u, v)`` pairs with
    ``u < v`` in lexicographic order.  Values are treated as immutable.
    """

    k: int
    nodes: tuple = ()
    edges: tuple = ()

    @cached_property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj.values():
            lst.sort()
        return adj

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __contains__(self, v) -> bool:
        return v in self.node_set


def make_topology(k: int, nodes: Iterable[int], edges: Iterable[tuple]) -> Topology:
    """Build a validated topology from arbitrary node and edge collections.

    Raises:
        UnknownNodeError: a node lies outside ``C_k`` or an edge endpoint is
            not among ``nodes``.
        InvalidParameterError: an edge is not a ``C_k`` edge, or repeats.
    """
    check_k(k)
    node_list = sorted(set(nodes))
    limit = 8 * k * k
    for v in node_list:
        if not (isinstance(v, int) and 0 <= v < limit):
            raise UnknownNodeError(f"node {v!r} not in C_{k}")
    present = set(node_list)
    canon = []
    for u, v in edges:
        u, v = (u, v) if u < v else (v, u)
        if u not in present or v not in present:
            raise UnknownNodeError(f"edge ({u}, {v}) has an endpoint outside the node set")
        if not is_chimera_edge(k, u, v):
            raise InvalidParameterError(f"({u}, {v}) is not an edge of C_{k}")
        canon.append((u, v))
    canon.sort()
    if any(a == b for a, b in zip(canon, canon[1:])):
        raise InvalidParameterError("duplicate edge")
    return Topology(k, tuple(node_list), tuple(canon))


def build_chimera(k: int) -> Topology:
    """Return the full ``C_k`` with ``8k^2`` nodes and ``24k^2 - 8k`` edges."""
    check_k(k)
    edges = []
    for row in range(k):
        for col in range(k):
            base = 8 * (row * k + col)
            for t in range(4):
                for t2 in range(4):
                    edges.append((base + t, base + 4 + t2))
                if col + 1 < k:
                    edges.append((base + 4 + t, base + 8 + 4 + t))
                if row + 1 < k:
                    edges.append((base + t, base + 8 * k + t))
    edges.sort()
    return Topology(k, tuple(range(8 * k * k)), tuple(edges))


def induce_subgraph(t: Topology, keep: Iterable[int]) -> Topology:
    """Restrict ``t`` to ``keep`` and the edges with both ends in it."""
    keep = set(keep)
    unknown = keep - t.node_set
    if unknown:
        raise UnknownNodeError(f"nodes not in topology: {sorted(unknown)[:5]}")
    nodes = tuple(v for v in t.nodes if v in keep)
    edges = tuple(e for e in t.edges if e[0] in keep and e[1] in keep)
    return Topology(t.k, nodes, edges)


def neighbors(t: Topology, v: int) -> list:
    """Sorted neighbours of ``v`` in ``t``."""
    try:
        return list(t.adjacency[v])
    except KeyError:
        raise UnknownNodeError(f"node {v} not in topology") from None


def cell_nodes(k: int, row: int, col: int) -> tuple:
    """The eight node indices of cell ``(row, col)``, left slots first."""
    base = 8 * (row * k + col)
    return tuple(range(base, base + 8))
