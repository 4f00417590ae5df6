"""Hot numeric kernels with numba and pure-numpy implementations.

Three inner loops dominate runtime: counter-based Gaussian/uniform block
generation, rejection-sampling attempt loops, and phased-reflection sweeps
over amplitude pairs. Each has a numba ``@njit`` implementation and a numpy
fallback computing the same function. The integer streams are identical in
both paths (pure 64-bit arithmetic); float results can differ only by libm
rounding in transcendental calls.

Backend selection happens at import time: numba is used when it imports
successfully and the environment variable ``SMOOTHPREP_NO_NUMBA`` is unset or
empty, otherwise the numpy path is active. ``BACKEND`` records the choice.
Both variants stay importable for the benchmark and for equivalence tests.
"""

from __future__ import annotations

import math
import os

import numpy as np

from ._rng import GOLDEN, MASK64, _MIX1, _MIX2

_U_GOLD = np.uint64(GOLDEN)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_U1 = np.uint64(1)
_INV_2_53 = 2.0**-53
_TWO_PI = 2.0 * math.pi


def _as_key(key: int) -> np.uint64:
    return np.uint64(key & MASK64)


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _words_np(key: np.uint64, ctrs: np.ndarray) -> np.ndarray:
    z = key + (ctrs + _U1) * _U_GOLD
    z ^= z >> _S30
    z = z * _U_MIX1
    z ^= z >> _S27
    z = z * _U_MIX2
    return z ^ (z >> _S31)


def _hash2_np(a: np.uint64, b: np.ndarray) -> np.ndarray:
    z = a + _U_GOLD
    z ^= z >> _S30
    z = z * _U_MIX1
    z ^= z >> _S27
    z = z * _U_MIX2
    z ^= z >> _S31
    z = z + b + _U_GOLD
    z ^= z >> _S30
    z = z * _U_MIX1
    z ^= z >> _S27
    z = z * _U_MIX2
    return z ^ (z >> _S31)


def uniform_block_numpy(key: int, n: int) -> np.ndarray:
    """n uniform doubles in [0, 1), counters 0..n-1 of stream ``key``."""
    ctrs = np.arange(n, dtype=np.uint64)
    return (_words_np(_as_key(key), ctrs) >> _S11).astype(np.float64) * _INV_2_53


def gaussian_block_numpy(key: int, n: int) -> np.ndarray:
    """n standard normals; entry i uses counters (2i, 2i+1) via Box-Muller."""
    ctrs = np.arange(2 * n, dtype=np.uint64)
    w = (_words_np(_as_key(key), ctrs) >> _S11).astype(np.float64)
    u1 = (w[0::2] + 1.0) * _INV_2_53
    u2 = w[1::2] * _INV_2_53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(_TWO_PI * u2)


def grover_sweep_numpy(
    amp0: np.ndarray,
    amp1: np.ndarray,
    ref0: np.ndarray,
    ref1: np.ndarray,
    alphas: np.ndarray,
    betas: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Apply phased reflection pairs to an amplitude-pair state.

    Iteration j multiplies the ancilla-1 branch by exp(i*beta_j), then
    reflects about the reference state (ref0, ref1) with phase alpha_j:
    psi -= (1 - exp(-i*alpha_j)) <ref|psi> |ref>.
    """
    a0 = np.asarray(amp0, dtype=np.complex128).copy()
    a1 = np.asarray(amp1, dtype=np.complex128).copy()
    for al, be in zip(alphas, betas):
        a1 *= complex(math.cos(be), math.sin(be))
        ov = np.sum(ref0 * a0) + np.sum(ref1 * a1)
        c = (1.0 - complex(math.cos(al), -math.sin(al))) * ov
        a0 -= c * ref0
        a1 -= c * ref1
    return a0, a1


def _l2_rejection_scalar(x2, c2, key, n, max_queries, idx_out, q_out):
    # Plain-Python twin of the numba kernel; identical streams.
    from . import _rng

    d = x2.shape[0]
    k = key if isinstance(key, int) else int(key)
    for s in range(n):
        k_idx = _rng.hash2(k, 2 * s)
        k_val = _rng.hash2(k, 2 * s + 1)
        a = 0
        accepted = -1
        while a < max_queries:
            j = int(_rng.u01(k_idx, a) * d)
            if j >= d:
                j = d - 1
            u = _rng.u01(k_val, a)
            a += 1
            if u * c2 < x2[j]:
                accepted = j
                break
        idx_out[s] = accepted
        q_out[s] = a if accepted >= 0 else -1


def l2_rejection_batch_numpy(
    x2: np.ndarray, c2: float, key: int, n: int, max_queries: int
) -> tuple[np.ndarray, np.ndarray]:
    """Rejection-sample n indices from the squared-entry distribution.

    Returns (0-based indices, attempt counts); a count of -1 marks a sample
    whose attempt budget ran out. Small batches run the scalar loop; large
    ones run vectorized attempt rounds over the still-alive samples. Both
    orders evaluate the same pure function of (key, sample, attempt).
    """
    idx_out = np.empty(n, dtype=np.int64)
    q_out = np.empty(n, dtype=np.int64)
    if n < 64:
        _l2_rejection_scalar(x2, float(c2), key, n, int(max_queries), idx_out, q_out)
        return idx_out, q_out

    d = x2.shape[0]
    ukey = _as_key(key)
    sample_ids = np.arange(n, dtype=np.uint64)
    k_idx = _hash2_np(ukey, sample_ids * np.uint64(2))
    k_val = _hash2_np(ukey, sample_ids * np.uint64(2) + _U1)
    alive = np.arange(n, dtype=np.int64)
    a = 0
    while alive.size and a < max_queries:
        ua = np.uint64(a)
        u_idx = (_words_np(k_idx[alive], np.broadcast_to(ua, alive.shape)) >> _S11).astype(np.float64) * _INV_2_53
        u_val = (_words_np(k_val[alive], np.broadcast_to(ua, alive.shape)) >> _S11).astype(np.float64) * _INV_2_53
        j = np.minimum((u_idx * d).astype(np.int64), d - 1)
        accept = u_val * c2 < x2[j]
        hit = alive[accept]
        idx_out[hit] = j[accept]
        q_out[hit] = a + 1
        alive = alive[~accept]
        a += 1
    if alive.size:
        idx_out[alive] = -1
        q_out[alive] = -1
    return idx_out, q_out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

_DISABLED = bool(os.environ.get("SMOOTHPREP_NO_NUMBA"))
try:
    if _DISABLED:
        raise ImportError("disabled via SMOOTHPREP_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    njit = None
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def _fin_nb(z):
        z ^= z >> _S30
        z *= _U_MIX1
        z ^= z >> _S27
        z *= _U_MIX2
        return z ^ (z >> _S31)

    @njit(cache=True)
    def _word_nb(key, ctr):
        return _fin_nb(key + (ctr + _U1) * _U_GOLD)

    @njit(cache=True)
    def _hash2_nb(a, b):
        return _fin_nb(_fin_nb(a + _U_GOLD) + b + _U_GOLD)

    @njit(cache=True)
    def _uniform_block_nb(key, n):
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            out[i] = np.float64(_word_nb(key, np.uint64(i)) >> _S11) * _INV_2_53
        return out

    @njit(cache=True)
    def _gaussian_block_nb(key, n):
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            w1 = np.float64(_word_nb(key, np.uint64(2 * i)) >> _S11)
            w2 = np.float64(_word_nb(key, np.uint64(2 * i + 1)) >> _S11)
            u1 = (w1 + 1.0) * _INV_2_53
            u2 = w2 * _INV_2_53
            out[i] = math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)
        return out

    @njit(cache=True)
    def _l2_rejection_nb(x2, c2, key, n, max_queries, idx_out, q_out):
        d = x2.shape[0]
        for s in range(n):
            k_idx = _hash2_nb(key, np.uint64(2 * s))
            k_val = _hash2_nb(key, np.uint64(2 * s + 1))
            a = 0
            accepted = -1
            while a < max_queries:
                u_i = np.float64(_word_nb(k_idx, np.uint64(a)) >> _S11) * _INV_2_53
                j = int(u_i * d)
                if j >= d:
                    j = d - 1
                u = np.float64(_word_nb(k_val, np.uint64(a)) >> _S11) * _INV_2_53
                a += 1
                if u * c2 < x2[j]:
                    accepted = j
                    break
            idx_out[s] = accepted
            q_out[s] = a if accepted >= 0 else -1

    @njit(cache=True)
    def _grover_sweep_nb(amp0, amp1, ref0, ref1, alphas, betas):
        d = amp0.shape[0]
        a0 = amp0.copy()
        a1 = amp1.copy()
        for it in range(alphas.shape[0]):
            eb = complex(math.cos(betas[it]), math.sin(betas[it]))
            for i in range(d):
                a1[i] *= eb
            ov = 0.0 + 0.0j
            for i in range(d):
                ov += ref0[i] * a0[i] + ref1[i] * a1[i]
            c = (1.0 - complex(math.cos(alphas[it]), -math.sin(alphas[it]))) * ov
            for i in range(d):
                a0[i] -= c * ref0[i]
                a1[i] -= c * ref1[i]
        return a0, a1

    def uniform_block_numba(key: int, n: int) -> np.ndarray:
        return _uniform_block_nb(_as_key(key), n)

    def gaussian_block_numba(key: int, n: int) -> np.ndarray:
        return _gaussian_block_nb(_as_key(key), n)

    def l2_rejection_batch_numba(x2, c2, key, n, max_queries):
        idx_out = np.empty(n, dtype=np.int64)
        q_out = np.empty(n, dtype=np.int64)
        _l2_rejection_nb(x2, float(c2), _as_key(key), n, int(max_queries), idx_out, q_out)
        return idx_out, q_out

    def grover_sweep_numba(amp0, amp1, ref0, ref1, alphas, betas):
        return _grover_sweep_nb(
            np.ascontiguousarray(amp0, dtype=np.complex128),
            np.ascontiguousarray(amp1, dtype=np.complex128),
            np.ascontiguousarray(ref0, dtype=np.float64),
            np.ascontiguousarray(ref1, dtype=np.float64),
            np.ascontiguousarray(alphas, dtype=np.float64),
            np.ascontiguousarray(betas, dtype=np.float64),
        )

else:
    uniform_block_numba = None
    gaussian_block_numba = None
    l2_rejection_batch_numba = None
    grover_sweep_numba = None


if HAVE_NUMBA:
    BACKEND = "numba"
    uniform_block = uniform_block_numba
    gaussian_block = gaussian_block_numba
    l2_rejection_batch = l2_rejection_batch_numba
    grover_sweep = grover_sweep_numba
else:
    BACKEND = "numpy"
    uniform_block = uniform_block_numpy
    gaussian_block = gaussian_block_numpy
    l2_rejection_batch = l2_rejection_batch_numpy
    grover_sweep = grover_sweep_numpy
