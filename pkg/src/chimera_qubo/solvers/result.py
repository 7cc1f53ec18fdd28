from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import InvalidParameterError
from ..rng import check_seed


@dataclass(frozen=True)
class SolveResult:
    """Best assignment found by a solver.

    ``best_assignment`` maps nodes to spins for Ising instances and to bits
    for QUBO instances; evaluating it reproduces ``best_value`` exactly.
    """

    best_value: int
    best_assignment: dict
    proven_optimal: bool
    iterations: int = 0
    elapsed: float = 0.0
    method: str = ""
    extra: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class HeuristicParams:
    """Settings for the randomized local search.

    The run stops at whichever of ``max_iters`` (moves) or ``time_limit``
    (seconds per restart) comes first, or as soon as the best value reaches
    ``target``.  At least one of ``max_iters`` and ``time_limit`` is required.
    """

    restarts: int = 1
    perturbation_fraction: Fraction = Fraction(1, 30)
    max_iters: Optional[int] = None
    time_limit: Optional[float] = None
    seed: int = 0
    target: Optional[int] = None

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidParameterError("restarts must be >= 1")
        frac = Fraction(self.perturbation_fraction)
        if not 0 < frac <= 1:
            raise InvalidParameterError("perturbation_fraction must lie in (0, 1]")
        object.__setattr__(self, "perturbation_fraction", frac)
        if self.max_iters is None and self.time_limit is None:
            raise InvalidParameterError("set max_iters, time_limit or both")
        if self.max_iters is not None and self.max_iters < 0:
            raise InvalidParameterError("max_iters must be >= 0")
        if self.time_limit is not None and self.time_limit < 0:
            raise InvalidParameterError("time_limit must be >= 0")
        check_seed(self.seed)

    def perturbation_size(self, n: int) -> int:
        """``ceil(n * fraction)``, at least 1 and at most ``n``."""
        return min(n, max(1, math.ceil(n * self.perturbation_fraction)))
