"""Exact minimization on Chimera subgraphs by a frontier sweep over unit cells.

Cells are visited in row-major order.  Horizontal couplers join right
partitions and vertical couplers join left partitions, so after cell
``(r, c)`` the only spins that still interact with unvisited cells are the
left partitions of the last cell in every column and the right partition of
``(r, c)`` itself.  The table therefore has ``k + 1`` axes of size 16: axis
``j < k`` is the left partition of the latest cell in column ``j`` and axis
``k`` the right partition of the latest cell.

Adding a cell replaces axis ``c`` (minimizing over the old left partition
against the vertical couplers) and then axis ``k`` (minimizing over the old
right partition against the horizontal couplers), and finally adds the cell's
internal energy.  Nodes absent from the instance are modelled with zero
weights.
"""

from __future__ import annotations

import time
import warnings

import numpy as np

from ..chimera import is_chimera_edge, node_coord
from ..errors import KTooLargeError, NonChimeraTopologyError
from ..instances import Instance, evaluate
from .result import SolveResult

DEFAULT_MAX_K = 4


def _configs(values) -> np.ndarray:
    """``S[a, t]``: value of slot ``t`` in the 4-bit partition configuration ``a``."""
    v0, v1 = values
    a = np.arange(16)[:, None]
    t = np.arange(4)[None, :]
    return np.where((a >> t) & 1, v1, v0).astype(np.int64)


def solve_chimera_dp(inst: Instance, max_k: int = DEFAULT_MAX_K) -> SolveResult:
    """Exact optimum of an instance whose topology lies in ``C_k``, ``k <= max_k``.

    Raises:
        KTooLargeError: ``k > max_k``.
        NonChimeraTopologyError: a node or edge is not part of ``C_k``.

    Raising ``max_k`` above the default works but the table holds
    ``16 ** (k + 1)`` int64 entries plus argmin tables of the same shape for
    every cell; a ``ResourceWarning`` states the estimate.
    """
    start = time.perf_counter()
    topo = inst.topology
    k = topo.k
    if k > max_k:
        raise KTooLargeError(f"C_{k} exceeds the DP limit k <= {max_k}")
    if k > DEFAULT_MAX_K:
        per_table = 16 ** (k + 1)
        estimate = per_table * 8 + 2 * k * k * per_table
        warnings.warn(f"DP on C_{k} needs roughly {estimate / 2**30:.1f} GiB",
                      ResourceWarning, stacklevel=2)
    limit = 8 * k * k
    if any(not 0 <= v < limit for v in topo.nodes):
        raise NonChimeraTopologyError(f"node outside C_{k}")
    af = inst.arrays
    S = _configs(af.values)

    lin = np.zeros(limit, dtype=np.int64)
    lin[list(af.nodes)] = af.lin
    intra = np.zeros((k, k, 4, 4), dtype=np.int64)   # [r, c, left slot, right slot]
    horiz = np.zeros((k, k, 4), dtype=np.int64)      # right(r, c) -- right(r, c + 1)
    vert = np.zeros((k, k, 4), dtype=np.int64)       # left(r, c) -- left(r + 1, c)
    for (u, v), w in zip(topo.edges, af.w.tolist()):
        if not is_chimera_edge(k, u, v):
            raise NonChimeraTopologyError(f"({u}, {v}) is not an edge of C_{k}")
        a, b = node_coord(k, u), node_coord(k, v)
        if (a.row, a.col) == (b.row, b.col):
            left, right = (a, b) if a.partition == 0 else (b, a)
            intra[a.row, a.col, left.slot, right.slot] += w
        elif a.partition == 1:
            horiz[a.row, min(a.col, b.col), a.slot] += w
        else:
            vert[min(a.row, b.row), a.col, a.slot] += w

    zero16 = np.zeros((16, 16), dtype=np.int64)
    table = np.zeros((16,) * (k + 1), dtype=np.int64)
    trace = []
    for r in range(k):
        for c in range(k):
            base = 8 * (r * k + c)
            Vm = (S * vert[r - 1, c]) @ S.T if r > 0 else zero16
            Hm = (S * horiz[r, c - 1]) @ S.T if c > 0 else zero16
            E = (S @ intra[r, c] @ S.T
                 + (S @ lin[base:base + 4])[:, None]
                 + (S @ lin[base + 4:base + 8])[None, :])

            moved = np.moveaxis(table, c, 0)
            step1 = np.empty_like(moved)
            arg1 = np.empty(moved.shape, dtype=np.uint8)
            bshape = (16,) + (1,) * k
            for new in range(16):
                cand = moved + Vm[:, new].reshape(bshape)
                idx = cand.argmin(axis=0)
                arg1[new] = idx
                step1[new] = np.take_along_axis(cand, idx[None], 0)[0]
            step1 = np.moveaxis(step1, 0, c)
            arg1 = np.moveaxis(arg1, 0, c)

            step2 = np.empty_like(step1)
            arg2 = np.empty(step1.shape, dtype=np.uint8)
            for new in range(16):
                cand = step1 + Hm[:, new]
                idx = cand.argmin(axis=-1)
                arg2[..., new] = idx
                step2[..., new] = np.take_along_axis(cand, idx[..., None], -1)[..., 0]
            eshape = [1] * (k + 1)
            eshape[c] = 16
            eshape[k] = 16
            step2 += E.reshape(eshape)
            trace.append((arg1, arg2))
            table = step2

    state = list(np.unravel_index(int(table.argmin()), table.shape))
    value = int(table[tuple(state)]) + af.offset
    cells = {}
    for pos in range(k * k - 1, -1, -1):
        r, c = divmod(pos, k)
        arg1, arg2 = trace[pos]
        cells[r, c] = (int(state[c]), int(state[k]))
        state[k] = arg2[tuple(state)]
        state[c] = arg1[tuple(state)]

    v0, v1 = af.values
    assignment = {}
    for v in af.nodes:
        co = node_coord(k, v)
        cfg = cells[co.row, co.col][co.partition]
        assignment[v] = v1 if (cfg >> co.slot) & 1 else v0
    check = evaluate(inst, assignment)
    if check != value:
        raise RuntimeError(f"DP reconstruction mismatch: {check} != {value}")
    return SolveResult(value, assignment, True, k * k, time.perf_counter() - start, "dp")
