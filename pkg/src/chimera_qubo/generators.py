"""Seeded random instance families on Chimera graphs.

Every family draws from one :class:`~chimera_qubo.rng.SplitMix64` stream in a
fixed order: first one draw per edge in canonical edge order, then one draw
per node in index order.  Under a common seed the with-fields and zero-field
Ising siblings therefore share their couplers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chimera import Topology, build_chimera, check_k, induce_subgraph
from .errors import InvalidParameterError, UnknownNodeError
from .instances import IsingInstance, QuboInstance, WeightedGraph, strip_fields
from .rng import SplitMix64, check_seed

FAMILIES = ("uniform-pm1", "uniform-int-range", "ising-with-fields", "ising-zero-field")


@dataclass(frozen=True)
class GenSpec:
    family: str
    k: int
    seed: int
    node_subset: Optional[frozenset] = None
    range: Optional[tuple] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}")
        check_k(self.k)
        check_seed(self.seed)
        if (self.range is not None) != (self.family == "uniform-int-range"):
            raise InvalidParameterError("range is required for, and only for, uniform-int-range")
        if self.range is not None:
            lo, hi = self.range
            if lo > hi:
                raise InvalidParameterError(f"invalid range [{lo}, {hi}]")
        if self.node_subset is not None:
            object.__setattr__(self, "node_subset", frozenset(self.node_subset))


def _topology(k: int, subset) -> Topology:
    full = build_chimera(k)
    if subset is None:
        return full
    try:
        return induce_subgraph(full, subset)
    except UnknownNodeError as exc:
        raise InvalidParameterError(f"invalid subset for C_{k}: {exc}") from None


def _draw(topology: Topology, seed: int, draw) -> WeightedGraph:
    rng = SplitMix64(seed)
    edge_weight = {e: draw(rng) for e in topology.edges}
    node_weight = {v: draw(rng) for v in topology.nodes}
    return WeightedGraph(topology, node_weight, edge_weight)


def gen_qubo_pm1(k: int, seed: int, subset=None) -> QuboInstance:
    """QUBO with every node and edge weight uniform on ``{-1, +1}``."""
    check_seed(seed)
    return QuboInstance(_draw(_topology(k, subset), seed, SplitMix64.sign), 0)


def gen_qubo_range(k: int, lo: int, hi: int, seed: int, subset=None) -> QuboInstance:
    """QUBO with every weight uniform on the integers ``[lo, hi]``."""
    check_seed(seed)
    if lo > hi:
        raise InvalidParameterError(f"invalid range [{lo}, {hi}]")
    return QuboInstance(_draw(_topology(k, subset), seed, lambda r: r.randint(lo, hi)), 0)


def gen_ising_fields(k: int, seed: int, subset=None) -> IsingInstance:
    """Ising instance with couplers and fields uniform on ``{-1, +1}``.

    Its image under :func:`~chimera_qubo.instances.ising_to_qubo` is a weakly
    correlated QUBO.
    """
    check_seed(seed)
    return IsingInstance(_draw(_topology(k, subset), seed, SplitMix64.sign))


def gen_ising_zero_field(k: int, seed: int, subset=None) -> IsingInstance:
    """Couplers of :func:`gen_ising_fields` under the same seed, fields zero."""
    return strip_fields(gen_ising_fields(k, seed, subset))


def generate(spec: GenSpec):
    if spec.family == "uniform-pm1":
        return gen_qubo_pm1(spec.k, spec.seed, spec.node_subset)
    if spec.family == "uniform-int-range":
        lo, hi = spec.range
        return gen_qubo_range(spec.k, lo, hi, spec.seed, spec.node_subset)
    if spec.family == "ising-with-fields":
        return gen_ising_fields(spec.k, spec.seed, spec.node_subset)
    return gen_ising_zero_field(spec.k, spec.seed, spec.node_subset)
