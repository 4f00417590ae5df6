"""Counter-based pseudo-randomness.

Every random quantity in this package is a pure function of a 64-bit key and
a counter, computed with a splitmix64-style finalizer. There is no stateful
generator object: any (key, counter) pair can be re-evaluated at any time,
concurrent consumers cannot interfere, and results are independent of
evaluation order. Keys for substreams (per trial, per sample, per entry) are
derived by hashing the parent seed together with the substream index.

These scalar functions are the reference implementation; the array kernels in
``_kernels`` compute the same integer streams element by element.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_INV_2_53 = 2.0**-53
TWO_PI = 2.0 * math.pi


def finalize(z: int) -> int:
    """splitmix64 output permutation on a 64-bit word."""
    z &= MASK64
    z ^= z >> 30
    z = (z * _MIX1) & MASK64
    z ^= z >> 27
    z = (z * _MIX2) & MASK64
    return z ^ (z >> 31)


def hash2(a: int, b: int) -> int:
    """Derive a stream key from two 64-bit words (order-sensitive)."""
    return finalize((finalize(a + GOLDEN) + b + GOLDEN) & MASK64)


def hash3(a: int, b: int, c: int) -> int:
    return finalize((hash2(a, b) + c + GOLDEN) & MASK64)


def word(key: int, ctr: int) -> int:
    """Counter ``ctr`` of the 64-bit stream identified by ``key``."""
    return finalize((key + ((ctr + 1) * GOLDEN)) & MASK64)


def u01(key: int, ctr: int) -> float:
    """Uniform double in [0, 1) with 53 random bits."""
    return (word(key, ctr) >> 11) * _INV_2_53


def u01_open(key: int, ctr: int) -> float:
    """Uniform double in (0, 1]; safe as a log() argument."""
    return ((word(key, ctr) >> 11) + 1) * _INV_2_53


def uniform(key: int, ctr: int, lo: float, hi: float) -> float:
    return lo + (hi - lo) * u01(key, ctr)


def gaussian(key: int, i: int) -> float:
    """Standard normal draw for entry ``i``, via Box-Muller on counters (2i, 2i+1)."""
    u1 = u01_open(key, 2 * i)
    u2 = u01(key, 2 * i + 1)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(TWO_PI * u2)


def bernoulli(key: int, ctr: int, p: float) -> bool:
    return u01(key, ctr) < p


def geometric(key: int, ctr: int, p: float) -> int:
    """Number of Bernoulli(p) attempts up to and including the first success.

    Sampled by inversion, so a single counter is consumed regardless of how
    many attempts are simulated.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"success probability must be in (0, 1], got {p}")
    if p == 1.0:
        return 1
    u = u01_open(key, ctr)
    return int(math.log(u) / math.log1p(-p)) + 1
