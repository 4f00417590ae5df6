"""Classical squared-magnitude sampling by rejection from entry-wise RAM reads.

One sample: pick an index uniformly at random, read the entry (one RAM
query), draw a uniform real from (0, c^2), accept when the draw falls below
the squared entry, otherwise repeat. Element j is accepted with probability
x_j^2 / c^2, so accepted indices follow x_j^2 / ||x||^2 exactly and the
expected number of reads is D c^2 / ||x||^2.

The acceptance draw lives on (0, c^2), not (0, c): comparing a draw on (0, c)
against a squared entry is scale-inconsistent, and squaring the bound is the
reading that reproduces both the per-element acceptance probability and the
expected-read formula at c = 1.

Every read is counted, including rejected ones. Indices are reported 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _rng
from ._kernels import l2_rejection_batch
from .errors import QueryBudgetError, ZeroVectorError
from .vectors import DataVector

_TAG_SAMPLE = 0x73616D70

DEFAULT_MAX_QUERIES = 10**9


@dataclass(frozen=True)
class SamplerConfig:
    """Known entry bound c >= max|x_i|, stream seed, and a read-budget cutoff."""

    entry_bound: float = 1.0
    seed: int = 0
    max_queries: int = DEFAULT_MAX_QUERIES

    def __post_init__(self):
        if not self.entry_bound > 0.0:
            raise ValueError(f"entry bound must be positive, got {self.entry_bound}")
        if self.max_queries < 1:
            raise ValueError(f"max_queries must be at least 1, got {self.max_queries}")


@dataclass(frozen=True)
class SampleResult:
    """One accepted sample: 1-based index and the RAM reads it consumed."""

    index: int
    queries: int


def _check_input(x: DataVector, c: float) -> None:
    if x.norm2() == 0.0:
        raise ZeroVectorError("cannot sample from the zero vector")
    top = float(np.max(np.abs(x.entries)))
    if c < top:
        raise ValueError(f"entry bound {c} is below max|x_i| = {top}")


def l2_sample_many(x: DataVector, cfg: SamplerConfig, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw n independent samples; returns (1-based indices, read counts).

    Sample i consumes the substream (cfg.seed, i), so results are independent
    of batch splitting: sample i of a size-n batch equals sample 0 of a batch
    seeded at the same (seed, i) substream.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    _check_input(x, cfg.entry_bound)
    x2 = np.square(x.entries)
    key = _rng.hash2(cfg.seed, _TAG_SAMPLE)
    idx, queries = l2_rejection_batch(x2, cfg.entry_bound**2, key, n, cfg.max_queries)
    if np.any(queries < 0):
        bad = int(np.argmax(queries < 0))
        raise QueryBudgetError(
            f"sample {bad} exceeded the {cfg.max_queries}-read budget; "
            "input is pathological or the entry bound is miscalibrated"
        )
    return idx + 1, queries


def l2_sample(x: DataVector, cfg: SamplerConfig) -> SampleResult:
    """Draw one sample (the first substream of ``cfg.seed``)."""
    idx, queries = l2_sample_many(x, cfg, 1)
    return SampleResult(int(idx[0]), int(queries[0]))


def l2_distribution(x: DataVector) -> np.ndarray:
    """The exact target distribution: p_j = x_j^2 / ||x||^2."""
    norm2 = x.norm2()
    if norm2 == 0.0:
        raise ZeroVectorError("distribution undefined for the zero vector")
    return np.square(x.entries) / norm2


def expected_queries(x: DataVector, c: float = 1.0) -> float:
    """Expected RAM reads per accepted sample: D c^2 / ||x||^2."""
    _check_input(x, c)
    return x.dimension * c * c / x.norm2()
