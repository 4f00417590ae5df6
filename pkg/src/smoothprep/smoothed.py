"""Monte Carlo estimation of expected query cost under Gaussian input noise.

The estimator fixes a base vector (the zero vector is the worst case for
every strategy here), draws per-trial Gaussian perturbations, runs the chosen
preparation or sampling strategy on each perturbed vector, and aggregates
query counts. Per-trial randomness is keyed by (seed, trial) independently of
the strategy, so sweeps over different strategies with the same seed see the
same perturbed inputs and can be compared pairwise.

Both E[1/P] and 1/E[P] are reported for every estimate: the first is the
expected repeat-until-success runtime, the second is the inverted mean
success probability; they bracket the Jensen gap between the two readings of
"expected cost" and the sample versions always satisfy
mean_inverse_p >= inverse_mean_p.

Analytic reference: the Euclidean norm of D i.i.d. N(0, sigma^2) draws has
mean sqrt(2) * sigma * Gamma((D+1)/2) / Gamma(D/2), which approaches
sigma * sqrt(D).

Estimates for strategies whose runtime scales like 1 / ||g||^2 (naive
preparation, classical rejection) are refused at D <= 2, where that
expectation diverges.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _rng
from ._kernels import gaussian_block
from .errors import DivergentMeanError
from .prep import Strategy, run_fixed_point_aa, run_known_amplitude_aa, run_naive
from .sampler import DEFAULT_MAX_QUERIES, SamplerConfig, l2_sample
from .vectors import DataVector, GaussianPerturbation, perturb, zero

_TAG_TRIAL = 0x74726961
_TAG_RUN = 0x72756E73
_TAG_CHI = 0x63686931

CLIP_WARN_FRACTION = 0.01

_ALIASES = {
    "naive": Strategy.NAIVE,
    "aa": Strategy.KNOWN_AMPLITUDE_AA,
    "known-amplitude-aa": Strategy.KNOWN_AMPLITUDE_AA,
    "fpaa": Strategy.FIXED_POINT_AA,
    "fixed-point-aa": Strategy.FIXED_POINT_AA,
    "classical": Strategy.CLASSICAL_REJECTION,
    "classical-rejection": Strategy.CLASSICAL_REJECTION,
}


def resolve_strategy(strategy: Strategy | str) -> Strategy:
    if isinstance(strategy, Strategy):
        return strategy
    try:
        return _ALIASES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {sorted(_ALIASES)}") from None


@dataclass(frozen=True)
class SmoothedEstimate:
    """Aggregated query statistics for one (strategy, D, sigma) grid point."""

    strategy: Strategy
    dimension: int
    sigma: float
    trials: int
    mean_queries: float
    stderr_queries: float
    mean_inverse_p: float
    inverse_mean_p: float
    clip_fraction: float

    def __post_init__(self):
        if self.trials < 30:
            raise ValueError("estimates require at least 30 trials")
        if self.stderr_queries < 0.0:
            raise ValueError("standard error cannot be negative")
        if self.mean_inverse_p < self.inverse_mean_p * (1.0 - 1e-9):
            raise ValueError("sample Jensen inequality violated; aggregation bug")
        if not 0.0 <= self.clip_fraction <= 1.0:
            raise ValueError("clip fraction must lie in [0, 1]")


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of log(value) = log_prefactor + exponent * log(scale)."""

    exponent: float
    log_prefactor: float
    r_squared: float
    n_points: int


def chi_mean(d: int, sigma: float) -> float:
    """Exact mean of ||g||_2 for g with D i.i.d. N(0, sigma^2) entries.

    Computed through log-gamma, so it stays finite for large D, where the
    value approaches sigma * sqrt(D).
    """
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    if sigma < 0.0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    return math.sqrt(2.0) * sigma * math.exp(math.lgamma((d + 1) / 2.0) - math.lgamma(d / 2.0))


def chi_mean_mc(d: int, sigma: float, samples: int, seed: int = 0) -> float:
    """Monte Carlo mean of ||g||_2 over unclamped Gaussian draws."""
    norms = np.empty(samples)
    for t in range(samples):
        g = gaussian_block(_rng.hash3(seed, _TAG_CHI, t), d)
        norms[t] = math.sqrt(float(np.sum(np.square(g))))
    return float(np.mean(norms)) * sigma


def estimate_smoothed(
    strategy: Strategy | str,
    x: DataVector,
    sigma: float,
    trials: int,
    seed: int = 0,
    *,
    lambda_min: float | None = None,
    delta: float | None = None,
    entry_bound: float = 1.0,
    max_queries: int = DEFAULT_MAX_QUERIES,
) -> SmoothedEstimate:
    """Expected query cost of ``strategy`` at ``x`` under sigma-Gaussian noise.

    Trial t perturbs ``x`` with the substream (seed, t) and runs the strategy
    with an independent (seed, t) run stream. Deterministic: identical
    arguments yield a bit-identical estimate.
    """
    strategy = resolve_strategy(strategy)
    if trials < 30:
        raise ValueError(f"at least 30 trials required, got {trials}")
    if strategy in (Strategy.NAIVE, Strategy.CLASSICAL_REJECTION) and x.dimension < 3:
        raise DivergentMeanError(
            f"{strategy.value} has a divergent expected runtime at D = {x.dimension}; need D >= 3"
        )
    if strategy is Strategy.FIXED_POINT_AA and (lambda_min is None or delta is None):
        raise ValueError("fixed-point-aa needs lambda_min and delta")

    queries = np.empty(trials)
    inv_p = np.empty(trials)
    p_vals = np.empty(trials)
    clipped = 0
    d = x.dimension
    for t in range(trials):
        pseed = _rng.hash3(seed, _TAG_TRIAL, t)
        rseed = _rng.hash3(seed, _TAG_RUN, t)
        xt = perturbed = perturb_for_trial(x, sigma, pseed)
        clipped += perturbed.clamped
        if strategy is Strategy.CLASSICAL_REJECTION:
            res = l2_sample(xt, SamplerConfig(entry_bound, rseed, max_queries))
            q = res.queries
            p = xt.norm2() / (d * entry_bound * entry_bound)
        else:
            if strategy is Strategy.NAIVE:
                r = run_naive(xt, rseed)
            elif strategy is Strategy.KNOWN_AMPLITUDE_AA:
                r = run_known_amplitude_aa(xt, rseed)
            else:
                r = run_fixed_point_aa(xt, lambda_min, delta, rseed)
            q = r.oracle_queries
            p = r.success_probability_per_attempt
        queries[t] = q
        p_vals[t] = p
        inv_p[t] = 1.0 / p

    clip_fraction = clipped / (trials * d)
    if clip_fraction > CLIP_WARN_FRACTION:
        warnings.warn(
            f"clip fraction {clip_fraction:.3%} at sigma={sigma} exceeds "
            f"{CLIP_WARN_FRACTION:.0%}; the [-1, 1] input model is strained",
            stacklevel=2,
        )
    return SmoothedEstimate(
        strategy=strategy,
        dimension=d,
        sigma=sigma,
        trials=trials,
        mean_queries=float(np.mean(queries)),
        stderr_queries=float(np.std(queries, ddof=1) / math.sqrt(trials)),
        mean_inverse_p=float(np.mean(inv_p)),
        inverse_mean_p=1.0 / float(np.mean(p_vals)),
        clip_fraction=clip_fraction,
    )


def perturb_for_trial(x: DataVector, sigma: float, trial_seed: int) -> DataVector:
    """The perturbation a trial sees; exposed so tests can replay trials."""
    return perturb(x, GaussianPerturbation(sigma, trial_seed))


def sweep_sigma(
    strategy: Strategy | str,
    x: DataVector,
    sigmas: Sequence[float],
    trials: int,
    seed: int = 0,
    **kwargs,
) -> list[SmoothedEstimate]:
    """One estimate per sigma; grid point i uses the (seed, i) substream."""
    if len(sigmas) < 4:
        raise ValueError("sigma sweeps need at least 4 grid values")
    if any(s <= 0.0 for s in sigmas):
        raise ValueError("sigma grid must be strictly positive")
    if max(sigmas) / min(sigmas) < 10.0:
        raise ValueError("sigma grid should span at least one decade")
    return [
        estimate_smoothed(strategy, x, s, trials, _rng.hash2(seed, i), **kwargs)
        for i, s in enumerate(sigmas)
    ]


def sweep_dimension(
    strategy: Strategy | str,
    sigma: float,
    dims: Sequence[int],
    trials: int,
    seed: int = 0,
    x_factory: Callable[[int], DataVector] = zero,
    **kwargs,
) -> list[SmoothedEstimate]:
    """One estimate per dimension; the base vector comes from ``x_factory``."""
    if len(dims) < 4:
        raise ValueError("dimension sweeps need at least 4 grid values")
    if any(d < 1 for d in dims):
        raise ValueError("dimensions must be positive")
    return [
        estimate_smoothed(strategy, x_factory(d), sigma, trials, _rng.hash2(seed, i), **kwargs)
        for i, d in enumerate(dims)
    ]


def fit_power_law(points: Sequence[tuple[float, float]]) -> PowerLawFit:
    """Ordinary least squares of log(value) on log(scale).

    Natural logs; r_squared is 1 - SS_res/SS_tot, defined as 1 when the
    values are constant (the fit is then exact with exponent 0).
    """
    if len(points) < 4:
        raise ValueError("power-law fits need at least 4 points")
    scales = np.array([p[0] for p in points], dtype=np.float64)
    values = np.array([p[1] for p in points], dtype=np.float64)
    if np.any(scales <= 0.0) or np.any(values <= 0.0):
        raise ValueError("power-law fits need strictly positive points")
    lx = np.log(scales)
    ly = np.log(values)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_res = float(np.sum(np.square(resid)))
    ss_tot = float(np.sum(np.square(ly - np.mean(ly))))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return PowerLawFit(float(slope), float(intercept), r2, len(points))
