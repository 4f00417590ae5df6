"""Oracle-model amplitude encoding, classical rejection sampling, and
Monte Carlo measurement of their query cost under Gaussian input noise."""

from .errors import (
    AmplitudeBoundError,
    DivergentMeanError,
    QueryBudgetError,
    SmoothprepError,
    VectorFormatError,
    ZeroVectorError,
)
from .prep import (
    EncodedState,
    PrepState,
    Strategy,
    TrialResult,
    fidelity,
    fixed_point_schedule,
    grover_iterate,
    postselect,
    prepare_raw_state,
    run_fixed_point_aa,
    run_known_amplitude_aa,
    run_naive,
    success_probability,
)
from .sampler import SampleResult, SamplerConfig, expected_queries, l2_distribution, l2_sample, l2_sample_many
from .smoothed import (
    PowerLawFit,
    SmoothedEstimate,
    chi_mean,
    chi_mean_mc,
    estimate_smoothed,
    fit_power_law,
    sweep_dimension,
    sweep_sigma,
)
from .vectors import (
    DataVector,
    GaussianPerturbation,
    Provenance,
    RoundingConvention,
    RoundingMode,
    apply_white_noise_offset,
    basis,
    load_vector,
    ones,
    perturb,
    round_offset,
    round_standard,
    sparse,
    uniform,
    zero,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeBoundError",
    "DataVector",
    "DivergentMeanError",
    "EncodedState",
    "GaussianPerturbation",
    "PowerLawFit",
    "PrepState",
    "Provenance",
    "QueryBudgetError",
    "RoundingConvention",
    "RoundingMode",
    "SampleResult",
    "SamplerConfig",
    "SmoothedEstimate",
    "SmoothprepError",
    "Strategy",
    "TrialResult",
    "VectorFormatError",
    "ZeroVectorError",
    "apply_white_noise_offset",
    "basis",
    "chi_mean",
    "chi_mean_mc",
    "estimate_smoothed",
    "expected_queries",
    "fidelity",
    "fit_power_law",
    "fixed_point_schedule",
    "grover_iterate",
    "l2_distribution",
    "l2_sample",
    "l2_sample_many",
    "load_vector",
    "ones",
    "perturb",
    "postselect",
    "prepare_raw_state",
    "round_offset",
    "round_standard",
    "run_fixed_point_aa",
    "run_known_amplitude_aa",
    "run_naive",
    "sparse",
    "success_probability",
    "sweep_dimension",
    "sweep_sigma",
    "uniform",
    "zero",
    "__version__",
]
