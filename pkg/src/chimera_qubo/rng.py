"""SplitMix64, a 64-bit generator small enough to reimplement anywhere.

All arithmetic is modulo 2**64::

    state  <- state + 0x9E3779B97F4A7C15
    z      <- state
    z      <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
    z      <- (z XOR (z >> 27)) * 0x94D049BB133111EB
    output <- z XOR (z >> 31)

The initial state is the seed itself.  Derived draws:

* ``sign()``: one output, ``+1`` if its top bit is set, else ``-1``.
* ``randint(lo, hi)``: with ``span = hi - lo + 1``, draw outputs until one is
  below ``2**64 - (2**64 mod span)``, then return ``lo + output mod span``.
  A span of 1 still consumes one output.
* ``sample(n, m)``: ``m`` distinct values of ``range(n)`` by a partial
  Fisher-Yates shuffle, position ``i`` swapped with ``randint(i, n - 1)``.
"""

from __future__ import annotations

from .errors import InvalidParameterError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MASK64:
        raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = check_seed(seed)

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def sign(self) -> int:
        return 1 if self.next() >> 63 else -1

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` without modulo bias."""
        if lo > hi:
            raise InvalidParameterError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        if span > 1 << 64:
            raise InvalidParameterError("range wider than 2**64")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            z = self.next()
            if z < limit:
                return lo + z % span

    def random(self) -> float:
        """Float in ``[0, 1)`` from the top 53 bits."""
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def sample(self, n: int, m: int) -> list:
        if not 0 <= m <= n:
            raise InvalidParameterError(f"cannot sample {m} of {n}")
        pool = list(range(n))
        for i in range(m):
            j = self.randint(i, n - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:m]


def derive_seed(base: int, *keys: int) -> int:
    """Mix ``keys`` into ``base`` to get an independent child seed."""
    state = check_seed(base)
    for key in keys:
        state = SplitMix64((state ^ (key * GOLDEN_GAMMA)) & MASK64).next()
    return state
