"""Plain-text instance files.

Layout::

    # any number of comment lines
    <form> <k> <n> <m> [offset]
    i j w
    ...

``form`` is ``qubo`` or ``ising``; ``offset`` (QUBO only) defaults to 0.
Each record line holds three integers.  ``i == j`` is the weight of node
``i`` (``h_i`` or ``Q_ii``), ``i < j`` the weight of edge ``{i, j}``.  There is
exactly one record per node (``n``) and per edge (``m``), records are in
strictly increasing ``(i, j)`` order, and every edge must be a ``C_k`` edge
between recorded nodes.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..chimera import Topology, check_k, is_chimera_edge
from ..errors import (DuplicateEntryError, InstanceParseError, InvalidParameterError,
                      NonChimeraEdgeError)
from ..instances import Instance, IsingInstance, QuboInstance, WeightedGraph

FORMS = ("qubo", "ising")
_INT = re.compile(r"-?[0-9]+\Z")


def serialize_instance(inst: Instance, comments=()) -> str:
    g = inst.graph
    t = g.topology
    form = "ising" if isinstance(inst, IsingInstance) else "qubo"
    lines = [f"# {c}" for c in comments]
    header = f"{form} {t.k} {t.num_nodes} {t.num_edges}"
    if form == "qubo" and inst.offset:
        header += f" {inst.offset}"
    lines.append(header)
    records = [(v, v, w) for v, w in g.node_weight.items()]
    records += [(u, v, w) for (u, v), w in g.edge_weight.items()]
    records.sort()
    lines.extend(f"{i} {j} {w}" for i, j, w in records)
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path, comments=()) -> None:
    Path(path).write_text(serialize_instance(inst, comments))


def _ints(tokens, lineno):
    for tok in tokens:
        if not _INT.match(tok):
            raise InstanceParseError(f"expected an integer, got {tok!r}", lineno)
    return [int(tok) for tok in tokens]


def parse_instance(text) -> Instance:
    """Parse instance text (``str`` or ``bytes``).

    Raises:
        InstanceParseError: any syntax or consistency problem, with the line
            number when it can be attributed to one line.
        NonChimeraEdgeError: an edge record that is not a ``C_k`` edge.
        DuplicateEntryError: the same ``(i, j)`` recorded twice.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceParseError(f"not UTF-8 text: {exc.reason}") from None
    header = None
    nodes = {}
    edges = {}
    prev = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if tokens[0] not in FORMS or len(tokens) not in (4, 5):
                raise InstanceParseError("expected header '<form> <k> <n> <m> [offset]'", lineno)
            k, n, m, *rest = _ints(tokens[1:], lineno)
            try:
                check_k(k)
            except InvalidParameterError as exc:
                raise InstanceParseError(str(exc), lineno) from None
            if n < 0 or m < 0:
                raise InstanceParseError("negative node or edge count", lineno)
            if rest and tokens[0] != "qubo":
                raise InstanceParseError("only qubo headers carry an offset", lineno)
            header = (tokens[0], k, n, m, rest[0] if rest else 0)
            limit = 8 * k * k
            continue
        if len(tokens) != 3:
            raise InstanceParseError("expected 'i j w'", lineno)
        i, j, w = _ints(tokens, lineno)
        if not (0 <= i < limit and 0 <= j < limit):
            raise InstanceParseError(f"node index outside C_{header[1]}", lineno)
        if i > j:
            raise InstanceParseError("record with i > j", lineno)
        if (i, j) in nodes or (i, j) in edges:
            raise DuplicateEntryError(f"duplicate record ({i}, {j})", lineno)
        if prev is not None and (i, j) <= prev:
            raise InstanceParseError("records not in increasing order", lineno)
        prev = (i, j)
        if i == j:
            nodes[i, j] = w
        else:
            if not is_chimera_edge(header[1], i, j):
                raise NonChimeraEdgeError(f"({i}, {j}) is not an edge of C_{header[1]}", lineno)
            edges[i, j] = w
    if header is None:
        raise InstanceParseError("missing header")
    form, k, n, m, offset = header
    if len(nodes) != n:
        raise InstanceParseError(f"header declares {n} nodes, found {len(nodes)}")
    if len(edges) != m:
        raise InstanceParseError(f"header declares {m} edges, found {len(edges)}")
    node_weight = {i: w for (i, _), w in nodes.items()}
    for u, v in edges:
        if u not in node_weight or v not in node_weight:
            raise InstanceParseError(f"edge ({u}, {v}) touches a node without a record")
    topology = Topology(k, tuple(sorted(node_weight)), tuple(sorted(edges)))
    graph = WeightedGraph(topology, node_weight, edges)
    if form == "ising":
        return IsingInstance(graph)
    return QuboInstance(graph, offset)


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_bytes())


def parse_edge_list(text: str, form: str, k: int, offset: int = 0) -> Instance:
    """Adapter for headerless ``i j w`` coordinate lists.

    Lines may come in any order and ``(j, i)`` is folded onto ``(i, j)`` by
    summing.  The node set is every index that appears.  ``#``, ``c`` and
    ``%`` lines are comments.
    """
    if form not in FORMS:
        raise InvalidParameterError(f"form must be one of {FORMS}")
    check_k(k)
    limit = 8 * k * k
    nodes = {}
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#c%":
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise InstanceParseError("expected 'i j w'", lineno)
        i, j, w = _ints(tokens, lineno)
        if not (0 <= i < limit and 0 <= j < limit):
            raise InstanceParseError(f"node index outside C_{k}", lineno)
        nodes.setdefault(i, 0)
        nodes.setdefault(j, 0)
        if i == j:
            nodes[i] += w
            continue
        key = (min(i, j), max(i, j))
        if not is_chimera_edge(k, *key):
            raise NonChimeraEdgeError(f"{key} is not an edge of C_{k}", lineno)
        edges[key] = edges.get(key, 0) + w
    topology = Topology(k, tuple(sorted(nodes)), tuple(sorted(edges)))
    graph = WeightedGraph(topology, nodes, edges)
    if form == "ising":
        return IsingInstance(graph)
    return QuboInstance(graph, offset)


def convert_external(path, fmt: str = "native", form: str = "ising", k: int = 8) -> Instance:
    """Load an instance from ``fmt`` (``native`` or ``coo``)."""
    if fmt == "native":
        return read_instance(path)
    if fmt == "coo":
        return parse_edge_list(Path(path).read_text(), form, k)
    raise InvalidParameterError(f"unknown format {fmt!r}")
