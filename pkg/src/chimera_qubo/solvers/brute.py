"""Exhaustive minimization for small instances.

The last ``BLOCK`` variables form a block whose ``2**BLOCK`` energies are held
in one vector; the remaining leading variables are walked in reflected Gray
code order.  Flipping one leading variable changes the block vector by one
scaled column per incident edge and the leading-part energy by O(degree), so
every Gray step is an O(degree) update followed by a vectorized argmin.
"""

from __future__ import annotations

import time

import numpy as np

from ..errors import InvalidParameterError, TooLargeError
from ..instances import Instance
from .result import SolveResult

DEFAULT_CAP = 26
BLOCK = 16


def _block_columns(m: int, v0: int, v1: int) -> np.ndarray:
    """Row ``p`` holds the value of block variable ``p`` for every block index.

    Block index bits are laid out with variable 0 most significant, so
    ascending index order is lexicographic order of the block assignment.
    """
    idx = np.arange(1 << m, dtype=np.int64)
    bits = (idx[None, :] >> np.arange(m - 1, -1, -1, dtype=np.int64)[:, None]) & 1
    return v0 + (v1 - v0) * bits


def solve_brute_force(inst: Instance, cap: int = DEFAULT_CAP, check_every=None) -> SolveResult:
    """Exact global minimum of an Ising or QUBO instance.

    Ties go to the lexicographically smallest assignment in node order (``-1``
    before ``+1``, ``0`` before ``1``).  ``check_every``, when set, recomputes
    the incremental state from scratch every that many Gray steps and raises
    ``RuntimeError`` on any mismatch.

    Raises:
        TooLargeError: more than ``cap`` nodes.
    """
    start = time.perf_counter()
    af = inst.arrays
    n = len(af.nodes)
    if n > cap:
        raise TooLargeError(f"{n} nodes exceed the brute-force cap {cap}")
    scale = int(np.abs(af.w).sum() + np.abs(af.lin).sum()) + abs(af.offset)
    if scale >= 2**62:
        raise InvalidParameterError("weights too large for 64-bit enumeration")
    v0, v1 = af.values
    if n == 0:
        return SolveResult(af.offset, {}, True, 1, time.perf_counter() - start, "brute")

    m = min(n, BLOCK)
    h = n - m
    lin = af.lin.tolist()
    cols = _block_columns(m, v0, v1)

    # edges split by how they touch the leading (high) and block (low) parts
    high_adj = [[] for _ in range(h)]    # (other high, w)
    cross_adj = [[] for _ in range(h)]   # (block position, w)
    base = np.zeros(1 << m, dtype=np.int64)
    for p in range(h, n):
        base += lin[p] * cols[p - h]
    for a, b, w in zip(af.ei.tolist(), af.ej.tolist(), af.w.tolist()):
        a, b = min(a, b), max(a, b)
        if a >= h:
            base += w * cols[a - h] * cols[b - h]
        elif b >= h:
            cross_adj[a].append((b - h, w))
        else:
            high_adj[a].append((b, w))
            high_adj[b].append((a, w))

    hv = [v0] * h

    def fresh():
        vec = base.copy()
        e = 0
        for p in range(h):
            e += lin[p] * hv[p]
            for q, w in high_adj[p]:
                if q > p:
                    e += w * hv[p] * hv[q]
            for q, w in cross_adj[p]:
                vec += w * hv[p] * cols[q]
        return vec, e

    block, ehigh = fresh()
    idx = int(np.argmin(block))
    best = (int(block[idx]) + ehigh, 0, idx)
    steps = 1
    for t in range(1, 1 << h):
        bit = (t & -t).bit_length() - 1
        p = h - 1 - bit
        old = hv[p]
        new = v1 if old == v0 else v0
        d = new - old
        ehigh += lin[p] * d
        for q, w in high_adj[p]:
            ehigh += w * d * hv[q]
        for q, w in cross_adj[p]:
            block += (w * d) * cols[q]
        hv[p] = new
        gray = t ^ (t >> 1)
        if check_every and t % check_every == 0:
            ref_block, ref_e = fresh()
            if ref_e != ehigh or not np.array_equal(ref_block, block):
                raise RuntimeError(f"incremental state diverged at Gray step {t}")
        idx = int(np.argmin(block))
        val = int(block[idx]) + ehigh
        if val < best[0] or (val == best[0] and gray < best[1]):
            best = (val, gray, idx)
        steps += 1

    value, gray, idx = best
    assignment = {}
    for p in range(h):
        assignment[af.nodes[p]] = v1 if (gray >> (h - 1 - p)) & 1 else v0
    for p in range(m):
        assignment[af.nodes[h + p]] = v1 if (idx >> (m - 1 - p)) & 1 else v0
    return SolveResult(value + af.offset, assignment, True, steps,
                       time.perf_counter() - start, "brute")
