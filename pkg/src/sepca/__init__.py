"""Sparse PCA under the single-spike covariance model.

Profiles and sampling, screening/reselection estimators with
truncated-power refinement, structure-function diagnostics, and a
seeded benchmark harness. See the README for the CLI and the CSV
schemas.
"""

from .api import DiagonalThresholding, SinglePeak, SpectralEnergyPursuit
from .estimators import (
    ALGORITHMS,
    EstimationResult,
    RefinementResult,
    dt_estimate,
    sep_estimate,
    single_peak_estimate,
    tpower_refine,
)
from .exceptions import ConfigError, ConvergenceError, DegenerateIterateError, SepcaError
from .harness import ExperimentConfig, TrialRecord, load_config, run_experiment, write_csv
from .linalg import hard_threshold, spectral_norm, top_eigvec
from .metrics import sin_angle, support_recall
from .model import (
    SampleSet,
    SpikedModel,
    centered_gamma,
    draw_samples,
    embed_spike,
    noise_matrix,
    population_gamma,
)
from .profiles import SpikeProfile, make_profile
from .theory import (
    ComplexityPair,
    StructureFunction,
    complexity_pair,
    dk_alignment_check,
    energy_floor_trace,
    noise_block_scaling,
    power_law_max_ps2,
    structure_function,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ComplexityPair",
    "ConfigError",
    "ConvergenceError",
    "DegenerateIterateError",
    "DiagonalThresholding",
    "EstimationResult",
    "ExperimentConfig",
    "RefinementResult",
    "SampleSet",
    "SepcaError",
    "SinglePeak",
    "SpectralEnergyPursuit",
    "SpikeProfile",
    "SpikedModel",
    "StructureFunction",
    "TrialRecord",
    "centered_gamma",
    "complexity_pair",
    "dk_alignment_check",
    "draw_samples",
    "dt_estimate",
    "embed_spike",
    "energy_floor_trace",
    "hard_threshold",
    "load_config",
    "make_profile",
    "noise_block_scaling",
    "noise_matrix",
    "population_gamma",
    "power_law_max_ps2",
    "run_experiment",
    "sep_estimate",
    "sin_angle",
    "single_peak_estimate",
    "spectral_norm",
    "structure_function",
    "support_recall",
    "top_eigvec",
    "tpower_refine",
    "write_csv",
]
