from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Optional

from ..errors import EmptySampleError, NonPositiveSampleError


@dataclass(frozen=True)
class RunStats:
    """Summary columns used in the timing tables."""

    count: int
    arithmetic_mean: float
    geometric_mean: Optional[float]
    min: float
    max: float
    std_dev: float

    def as_row(self, digits=2) -> list:
        gm = "-" if self.geometric_mean is None else f"{self.geometric_mean:.{digits}f}"
        return [f"{self.arithmetic_mean:.{digits}f}", gm, f"{self.min:.{digits}f}",
                f"{self.max:.{digits}f}", f"{self.std_dev:.{digits}f}"]


def compute_stats(samples, geometric: bool = True) -> RunStats:
    """Mean, geometric mean, extremes and sample standard deviation.

    The arithmetic mean is computed exactly (``statistics.mean``) before the
    conversion to float.  Pass ``geometric=False`` for samples that may hold
    zeros; the geometric mean is then ``None``.

    Raises:
        EmptySampleError: no samples.
        NonPositiveSampleError: ``geometric`` and some sample is ``<= 0``.
    """
    samples = list(samples)
    if not samples:
        raise EmptySampleError("cannot summarize an empty sample")
    lo, hi = min(samples), max(samples)
    mean = statistics.mean(samples)
    gm = None
    if geometric:
        if lo <= 0:
            raise NonPositiveSampleError("geometric mean needs strictly positive samples")
        gm = math.exp(math.fsum(math.log(x) for x in samples) / len(samples))
        # rounding in exp/log must not break min <= gm <= mean
        gm = min(max(gm, float(lo)), float(mean))
    sd = statistics.stdev(samples) if len(samples) > 1 else 0
    return RunStats(len(samples), float(mean), gm, float(lo), float(hi), float(sd))
