"""Exact simulation of oracle-driven amplitude encoding.

The two-query preparation (entry oracle on a uniform index superposition,
ancilla rotation, oracle uncompute) leaves the joint state

    D^{-1/2} * sum_i |i> ( sqrt(1 - x_i^2) |0> + x_i |1> )

which this module represents as D amplitude pairs (amp0_i, amp1_i). The
intermediate value register is uncomputed by the second oracle call and never
materialized; its cost is kept in the accounting. Post-selecting the ancilla
on |1> leaves amplitudes proportional to x, with success probability
||x||^2 / D.

Query accounting: one query is one application of the entry oracle or its
inverse. A preparation costs 2 (compute + uncompute); an amplification
iteration costs 4 (the preparation unitary and its inverse, 2 each).

Trial strategies:

* naive - repeat preparation + post-selection until the first success.
* known-amplitude amplification - the success amplitude is computable from x
  in simulation, so the standard phase-pi iteration count floor(pi/(4 theta))
  applies; per-attempt success is at least max(P, 1/2).
* fixed-point amplification - Chebyshev-scheduled phase pairs that push the
  success probability above 1 - delta^2 given only a lower bound lambda_min
  on P, without overshooting.

States up to ``STATEVECTOR_LIMIT`` entries are simulated explicitly; above
that, trials fall back to exact closed forms on the invariant two-dimensional
subspace (the two paths agree, see tests).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _rng
from ._kernels import grover_sweep
from .errors import AmplitudeBoundError, ZeroVectorError
from .vectors import DataVector

STATEVECTOR_LIMIT = 2**22

_TAG_NAIVE = 0x6E616976
_TAG_AA = 0x616D7031
_TAG_FPAA = 0x616D7032

_NORM_ATOL = 1e-9


class Strategy(str, enum.Enum):
    NAIVE = "naive"
    KNOWN_AMPLITUDE_AA = "known-amplitude-aa"
    FIXED_POINT_AA = "fixed-point-aa"
    CLASSICAL_REJECTION = "classical-rejection"


@dataclass(frozen=True, eq=False)
class PrepState:
    """Joint state as D amplitude pairs; amp1 is the ancilla-|1> branch.

    Stored as complex128: the preparation itself is real, but fixed-point
    phase iterations produce genuinely complex intermediate states.
    """

    amp0: np.ndarray
    amp1: np.ndarray

    def __post_init__(self):
        a0 = np.asarray(self.amp0, dtype=np.complex128)
        a1 = np.asarray(self.amp1, dtype=np.complex128)
        if a0.ndim != 1 or a0.shape != a1.shape or a0.size < 1:
            raise ValueError("amplitude pair arrays must be equal-length 1-d")
        total = float(np.sum(_abs2(a0)) + np.sum(_abs2(a1)))
        if abs(total - 1.0) > _NORM_ATOL:
            raise ValueError(f"state norm {total} deviates from 1")
        for arr in (a0, a1):
            arr.setflags(write=False)
        object.__setattr__(self, "amp0", a0)
        object.__setattr__(self, "amp1", a1)

    @property
    def dimension(self) -> int:
        return int(self.amp0.size)


@dataclass(frozen=True, eq=False)
class EncodedState:
    """Unit-norm real amplitudes proportional to the encoded vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=np.float64)
        if abs(float(np.sum(np.square(arr))) - 1.0) > _NORM_ATOL:
            raise ValueError("encoded amplitudes must have unit norm")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.size)


@dataclass(frozen=True)
class TrialResult:
    """One preparation run: query cost, outcome, and per-attempt statistics."""

    oracle_queries: int
    success: bool
    success_probability_per_attempt: float
    fidelity: float
    strategy: Strategy


def _abs2(a: np.ndarray) -> np.ndarray:
    return a.real * a.real + a.imag * a.imag


def _reference_amplitudes(x: DataVector) -> tuple[np.ndarray, np.ndarray]:
    inv_sqrt_d = 1.0 / math.sqrt(x.dimension)
    r1 = x.entries * inv_sqrt_d
    r0 = np.sqrt(np.clip(1.0 - np.square(x.entries), 0.0, None)) * inv_sqrt_d
    return r0, r1


def prepare_raw_state(x: DataVector) -> PrepState:
    """Simulate the two-query preparation; costs 2 oracle queries (callers account)."""
    r0, r1 = _reference_amplitudes(x)
    return PrepState(r0, r1)


def success_probability(s: PrepState) -> float:
    """Probability of the ancilla post-selection succeeding: sum |amp1|^2."""
    return float(np.sum(_abs2(s.amp1)))


def postselect(s: PrepState) -> EncodedState:
    """Condition on the ancilla-|1> branch and renormalize."""
    p = success_probability(s)
    if p <= 0.0:
        raise ZeroVectorError("post-selection probability is zero (all-zero input)")
    cond = s.amp1 / math.sqrt(p)
    # the conditional state is a global phase times a real vector; strip it
    k = int(np.argmax(_abs2(cond)))
    phase = cond[k] / abs(cond[k])
    real = (cond * phase.conjugate()).real
    assert float(np.max(np.abs((cond * phase.conjugate()).imag))) < 1e-9
    return EncodedState(real / math.sqrt(float(np.sum(np.square(real)))))


def fidelity(e: EncodedState, x: DataVector) -> float:
    """Overlap |<e|x>| / ||x|| between encoded amplitudes and the target."""
    nrm = x.norm()
    if nrm == 0.0:
        raise ZeroVectorError("fidelity undefined for the zero vector")
    return min(1.0, abs(float(np.sum(e.amplitudes * x.entries))) / nrm)


def grover_iterate(s: PrepState, x: DataVector, alpha: float, beta: float) -> PrepState:
    """One generalized amplification iteration; costs 4 oracle queries.

    Applies the ancilla-|1> phase beta, then the reflection about the
    preparation state of ``x`` with phase alpha. alpha = beta = pi is the
    standard iteration; alpha = beta = 0 is the identity.
    """
    r0, r1 = _reference_amplitudes(x)
    a0, a1 = grover_sweep(s.amp0, s.amp1, r0, r1, np.array([alpha]), np.array([beta]))
    return PrepState(a0, a1)


# ---------------------------------------------------------------------------
# Trial strategies
# ---------------------------------------------------------------------------

def _base_probability(x: DataVector) -> float:
    norm2 = x.norm2()
    if norm2 == 0.0:
        raise ZeroVectorError("cannot prepare the zero vector")
    return norm2 / x.dimension


def _clip01(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def run_naive(x: DataVector, seed: int = 0) -> TrialResult:
    """Repeat prepare + post-select until the first success (2 queries per attempt)."""
    p_exact = _base_probability(x)
    if x.dimension <= STATEVECTOR_LIMIT:
        s = prepare_raw_state(x)
        p = success_probability(s)
        fid = fidelity(postselect(s), x)
    else:
        p, fid = p_exact, 1.0
    attempts = _rng.geometric(_rng.hash2(seed, _TAG_NAIVE), 0, _clip01(p))
    return TrialResult(2 * attempts, True, p, fid, Strategy.NAIVE)


def run_known_amplitude_aa(x: DataVector, seed: int = 0) -> TrialResult:
    """Standard amplification with the iteration count chosen from the known amplitude.

    k = floor(pi / (4 arcsin sqrt(P))) phase-pi iterations lift the
    per-attempt success probability to sin^2((2k+1) theta) >= max(P, 1/2).
    """
    p_exact = _base_probability(x)
    statevector = x.dimension <= STATEVECTOR_LIMIT
    s = prepare_raw_state(x) if statevector else None
    p = success_probability(s) if statevector else p_exact
    theta = math.asin(min(1.0, math.sqrt(p)))
    k = int(math.pi / (4.0 * theta))
    if statevector:
        if k:
            r0, r1 = _reference_amplitudes(x)
            phases = np.full(k, math.pi)
            a0, a1 = grover_sweep(s.amp0, s.amp1, r0, r1, phases, phases)
            s = PrepState(a0, a1)
        p_att = success_probability(s)
        fid = fidelity(postselect(s), x)
    else:
        p_att = math.sin((2 * k + 1) * theta) ** 2
        fid = 1.0
    success = _rng.bernoulli(_rng.hash2(seed, _TAG_AA), 0, _clip01(p_att))
    return TrialResult(2 + 4 * k, success, p_att, fid, Strategy.KNOWN_AMPLITUDE_AA)


def fixed_point_schedule(lambda_min: float, delta: float) -> tuple[np.ndarray, np.ndarray, int]:
    """Phase schedule whose final success is >= 1 - delta^2 whenever P >= lambda_min.

    Returns (alphas, betas, L): L is the smallest odd integer at least
    ln(2/delta)/sqrt(lambda_min) and (L-1)/2 iterations are applied. The
    phases follow the Chebyshev recipe: with gamma^{-1} = cosh(arccosh(1/delta)/L),
    alpha_j = -beta_{l-j+1} = 2 arccot(tan(2 pi j / L) sqrt(1 - gamma^2)).
    """
    if not 0.0 < lambda_min <= 1.0:
        raise ValueError(f"lambda_min must lie in (0, 1], got {lambda_min}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    L = math.ceil(math.log(2.0 / delta) / math.sqrt(lambda_min))
    if L % 2 == 0:
        L += 1
    n_iter = (L - 1) // 2
    gamma_inv = math.cosh(math.acosh(1.0 / delta) / L)
    root = math.sqrt(1.0 - 1.0 / gamma_inv**2)
    alphas = np.array(
        [2.0 * math.atan2(1.0, math.tan(2.0 * math.pi * j / L) * root) for j in range(1, n_iter + 1)]
    )
    betas = -alphas[::-1]
    return alphas, betas, L


def _fixed_point_final_probability(p: float, alphas: np.ndarray, betas: np.ndarray) -> float:
    """Closed two-dimensional simulation of the schedule at success probability p."""
    sin_t = math.sqrt(_clip01(p))
    cos_t = math.sqrt(_clip01(1.0 - p))
    good = complex(sin_t)
    bad = complex(cos_t)
    for al, be in zip(alphas, betas):
        good *= cmath.exp(1j * be)
        ov = cos_t * bad + sin_t * good
        c = (1.0 - cmath.exp(-1j * al)) * ov
        bad -= c * cos_t
        good -= c * sin_t
    return abs(good) ** 2


def run_fixed_point_aa(
    x: DataVector, lambda_min: float, delta: float, seed: int = 0
) -> TrialResult:
    """Fixed-point amplification given a lower bound lambda_min on P.

    Raises AmplitudeBoundError when the final success probability lands below
    1 - delta^2: that certifies lambda_min was not a valid lower bound.
    """
    p_exact = _base_probability(x)
    alphas, betas, L = fixed_point_schedule(lambda_min, delta)
    n_iter = (L - 1) // 2
    if x.dimension <= STATEVECTOR_LIMIT:
        s = prepare_raw_state(x)
        if n_iter:
            r0, r1 = _reference_amplitudes(x)
            a0, a1 = grover_sweep(s.amp0, s.amp1, r0, r1, alphas, betas)
            s = PrepState(a0, a1)
        p_att = success_probability(s)
        fid = fidelity(postselect(s), x)
    else:
        p_att = _fixed_point_final_probability(p_exact, alphas, betas)
        fid = 1.0
    floor = 1.0 - delta * delta
    if p_att < floor - 1e-9:
        raise AmplitudeBoundError(
            f"final success probability {p_att:.6g} < {floor:.6g}: "
            f"lambda_min={lambda_min:.6g} is not a valid lower bound (P={p_exact:.6g})"
        )
    success = _rng.bernoulli(_rng.hash2(seed, _TAG_FPAA), 0, _clip01(p_att))
    return TrialResult(2 + 4 * n_iter, success, p_att, fid, Strategy.FIXED_POINT_AA)
