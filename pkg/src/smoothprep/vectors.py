"""Input vectors: loading, generation, Gaussian perturbation, and rounding.

Entries live in [-1, 1]. A vector carries a provenance tag so the pipeline
stages compose in one direction only: raw vectors may be perturbed, and raw
or perturbed vectors may be rounded or noise-offset; rounded vectors are
terminal. Perturbation clamps back into [-1, 1] and records how many entries
hit the boundary, so experiments can confirm the clamping bias is negligible.

Rounding conventions, precision ``epsilon``:

* standard - nearest integer multiple of epsilon, ties away from zero.
  Zero is representable, so small entries round to exactly 0.
* offset - nearest half-integer multiple of epsilon (floor + 1/2). No entry
  of the output is closer to zero than epsilon/2.
* noise offset - adds an entry-wise uniform draw from [-epsilon/2, epsilon/2]
  derived deterministically from (master_seed, entry index).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _rng
from ._kernels import gaussian_block, uniform_block
from .errors import VectorFormatError

_TAG_PERTURB = 0x70657274
_TAG_NOISE = 0x77686974
_TAG_UNIFORM = 0x756E6966
_TAG_SPARSE_VAL = 0x73707631
_TAG_SPARSE_POS = 0x73707632

_TIE_SLACK = 8.0 * np.finfo(np.float64).eps


class Provenance(str, enum.Enum):
    RAW = "raw"
    PERTURBED = "perturbed"
    ROUNDED_STANDARD = "rounded-standard"
    ROUNDED_OFFSET = "rounded-offset"
    NOISE_OFFSET = "noise-offset"


_TRANSFORMABLE = (Provenance.RAW, Provenance.PERTURBED)


@dataclass(frozen=True, eq=False)
class DataVector:
    """A classical input vector with entries in [-1, 1].

    ``clamped`` counts entries that were clipped to the boundary by the
    operation that produced this vector (0 for loaded/generated vectors).
    """

    entries: np.ndarray
    provenance: Provenance = Provenance.RAW
    clamped: int = 0

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size < 1:
            raise VectorFormatError("entries must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise VectorFormatError("entries must be finite")
        if np.any(np.abs(arr) > 1.0):
            raise VectorFormatError("entries must lie in [-1, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return int(self.entries.size)

    def norm2(self) -> float:
        """Squared Euclidean norm (pairwise summation)."""
        return float(np.sum(np.square(self.entries)))

    def norm(self) -> float:
        return math.sqrt(self.norm2())


@dataclass(frozen=True)
class GaussianPerturbation:
    """Entry-wise i.i.d. zero-mean Gaussian noise of standard deviation sigma."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be a finite nonnegative real, got {self.sigma}")


class RoundingMode(str, enum.Enum):
    STANDARD = "standard"
    OFFSET = "offset"
    STOCHASTIC_OFFSET = "stochastic-offset"


@dataclass(frozen=True)
class RoundingConvention:
    """Rounding rule at base precision epsilon.

    ``master_seed`` is consumed only in stochastic-offset mode, where the
    per-entry offsets are a deterministic function of (master_seed, index).
    """

    mode: RoundingMode
    epsilon: float
    master_seed: int = 0

    def __post_init__(self):
        _check_epsilon(self.epsilon)

    def apply(self, x: DataVector) -> DataVector:
        if self.mode is RoundingMode.STANDARD:
            return round_standard(x, self.epsilon)
        if self.mode is RoundingMode.OFFSET:
            return round_offset(x, self.epsilon)
        return apply_white_noise_offset(x, self.epsilon, self.master_seed)


def _check_epsilon(epsilon: float) -> None:
    if not (0.0 < epsilon <= 1.0):
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")


def _check_transformable(x: DataVector, op: str) -> None:
    if x.provenance not in _TRANSFORMABLE:
        raise ValueError(f"{op} requires a raw or perturbed vector, got {x.provenance.value}")


# ---------------------------------------------------------------------------
# Generators and loading
# ---------------------------------------------------------------------------

def zero(d: int) -> DataVector:
    _check_dimension(d)
    return DataVector(np.zeros(d))


def ones(d: int) -> DataVector:
    _check_dimension(d)
    return DataVector(np.ones(d))


def basis(d: int, index: int) -> DataVector:
    """Canonical basis vector; ``index`` is 1-based."""
    _check_dimension(d)
    if not 1 <= index <= d:
        raise VectorFormatError(f"basis index must be in [1, {d}], got {index}")
    e = np.zeros(d)
    e[index - 1] = 1.0
    return DataVector(e)


def uniform(d: int, seed: int) -> DataVector:
    """Entries i.i.d. uniform on [-1, 1)."""
    _check_dimension(d)
    u = uniform_block(_rng.hash2(seed, _TAG_UNIFORM), d)
    return DataVector(2.0 * u - 1.0)


def sparse(d: int, k: int, seed: int) -> DataVector:
    """k entries at distinct positions, values uniform on [-1, 1); rest zero."""
    _check_dimension(d)
    if not 1 <= k <= d:
        raise VectorFormatError(f"sparse count must be in [1, {d}], got {k}")
    vals = 2.0 * uniform_block(_rng.hash2(seed, _TAG_SPARSE_VAL), k) - 1.0
    # Floyd's algorithm: k distinct positions, deterministic in (seed, draw #)
    pos_key = _rng.hash2(seed, _TAG_SPARSE_POS)
    chosen: dict[int, None] = {}
    for i, j in enumerate(range(d - k, d)):
        t = int(_rng.u01(pos_key, i) * (j + 1))
        chosen[j if t in chosen else t] = None
    e = np.zeros(d)
    e[list(chosen)] = vals
    return DataVector(e)


def _check_dimension(d: int) -> None:
    if not (isinstance(d, (int, np.integer)) and d >= 1):
        raise VectorFormatError(f"dimension must be a positive integer, got {d}")


_GENERATOR_PREFIXES = ("zero", "basis", "ones", "uniform", "sparse")


def parse_generator_spec(spec: str) -> DataVector:
    """Build a vector from a spec string.

    Formats: ``zero:D``, ``basis:D:i`` (1-based i), ``ones:D``,
    ``uniform:D:seed``, ``sparse:D:k:seed``.
    """
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError as exc:
        raise VectorFormatError(f"non-integer field in generator spec {spec!r}") from exc
    try:
        if name == "zero" and len(nums) == 1:
            return zero(nums[0])
        if name == "ones" and len(nums) == 1:
            return ones(nums[0])
        if name == "basis" and len(nums) == 2:
            return basis(nums[0], nums[1])
        if name == "uniform" and len(nums) == 2:
            return uniform(nums[0], nums[1])
        if name == "sparse" and len(nums) == 3:
            return sparse(nums[0], nums[1], nums[2])
    except VectorFormatError:
        raise
    raise VectorFormatError(f"unrecognized generator spec {spec!r}")


def load_file(path: str | Path) -> DataVector:
    """Read a vector from UTF-8 text: one real per line, ``#`` comments allowed."""
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                v = float(text)
            except ValueError as exc:
                raise VectorFormatError(f"{path}:{lineno}: malformed real {text!r}") from exc
            if not math.isfinite(v):
                raise VectorFormatError(f"{path}:{lineno}: non-finite entry {text!r}")
            if abs(v) > 1.0:
                raise VectorFormatError(f"{path}:{lineno}: entry {v} outside [-1, 1]")
            values.append(v)
    if not values:
        raise VectorFormatError(f"{path}: no entries")
    return DataVector(np.array(values))


def load_vector(source: str | Path) -> DataVector:
    """Load from a generator spec string or a one-real-per-line text file."""
    if isinstance(source, str) and source.split(":", 1)[0] in _GENERATOR_PREFIXES:
        return parse_generator_spec(source)
    return load_file(source)


# ---------------------------------------------------------------------------
# Perturbation and rounding
# ---------------------------------------------------------------------------

def perturb(x: DataVector, p: GaussianPerturbation) -> DataVector:
    """Add i.i.d. N(0, sigma^2) noise per entry, then clamp to [-1, 1].

    Deterministic in ``p.seed``; sigma = 0 leaves the entries untouched.
    """
    if x.provenance is not Provenance.RAW:
        raise ValueError(f"perturb requires a raw vector, got {x.provenance.value}")
    if p.sigma == 0.0:
        return DataVector(x.entries, Provenance.PERTURBED)
    g = gaussian_block(_rng.hash2(p.seed, _TAG_PERTURB), x.dimension)
    v = x.entries + p.sigma * g
    n_clamped = int(np.count_nonzero(np.abs(v) > 1.0))
    return DataVector(np.clip(v, -1.0, 1.0), Provenance.PERTURBED, n_clamped)


def round_standard(x: DataVector, epsilon: float) -> DataVector:
    """Round each entry to the nearest integer multiple of epsilon.

    Ties round away from zero, so the map is odd. Tie detection allows a few
    ulps of slack so that decimal inputs sitting an ulp below a true
    half-multiple (0.15 at epsilon 0.1) still round away from zero.
    """
    _check_epsilon(epsilon)
    _check_transformable(x, "round_standard")
    r = np.abs(x.entries) / epsilon
    steps = np.floor(r + 0.5 + _TIE_SLACK * np.maximum(1.0, r))
    v = np.clip(np.copysign(steps * epsilon, x.entries), -1.0, 1.0)
    return DataVector(v, Provenance.ROUNDED_STANDARD)


def round_offset(x: DataVector, epsilon: float) -> DataVector:
    """Round each entry to a half-integer multiple of epsilon.

    The output grid contains no exact zero: every entry has magnitude at
    least epsilon/2, while staying within epsilon/2 of the input.
    """
    _check_epsilon(epsilon)
    _check_transformable(x, "round_offset")
    v = np.clip((np.floor(x.entries / epsilon) + 0.5) * epsilon, -1.0, 1.0)
    return DataVector(v, Provenance.ROUNDED_OFFSET)


def apply_white_noise_offset(x: DataVector, epsilon: float, master_seed: int) -> DataVector:
    """Shift entry i by a uniform draw from [-epsilon/2, epsilon/2].

    The draw is a pure function of (master_seed, i): re-evaluating any entry
    reproduces the same offset, as a memory-location-seeded generator would.
    """
    _check_epsilon(epsilon)
    _check_transformable(x, "apply_white_noise_offset")
    w = epsilon * (uniform_block(_rng.hash2(master_seed, _TAG_NOISE), x.dimension) - 0.5)
    v = x.entries + w
    n_clamped = int(np.count_nonzero(np.abs(v) > 1.0))
    return DataVector(np.clip(v, -1.0, 1.0), Provenance.NOISE_OFFSET, n_clamped)
