"""Wideband wide-beam analog beamforming with a 3D-rotatable linear array."""

__version__ = "0.1.0"

from .composite import AngularRange, CompositeGrid, build_grid, composite_bounds, sample_grid
from .gain import BeamformerWeights, GainMap, beam_gain, gain_heatmap, min_composite_gain
from .geometry import (
    SPEED_OF_LIGHT,
    ArrayConfig,
    OutOfBandError,
    RotationAngles,
    antenna_positions_global,
    rotation_matrix,
    steering_vector,
    steering_vector_composite,
)
from .beamforming import (
    ScaTrace,
    extract_weights,
    rank_one_gap,
    sca_beamforming,
    spectral_subgradient,
)
from .estimator import RotatableBeamformer
from .pipeline import (
    BenchmarkResult,
    SolveParams,
    SolveReport,
    alternating_optimize,
    initialize,
    run_all_benchmarks,
    run_benchmark,
)
from .rotation import SurrogateCoeffs, reconstruct_angles, sca_rotation, surrogate_coeffs
from .solvers import (
    SdpConvergenceError,
    SdpProblem,
    SdpSolution,
    psd_project,
    solve_maxmin_sdp,
    solve_scalar_maxmin_quadratic,
)

__all__ = [
    "SPEED_OF_LIGHT",
    "AngularRange",
    "ArrayConfig",
    "BeamformerWeights",
    "BenchmarkResult",
    "CompositeGrid",
    "GainMap",
    "OutOfBandError",
    "RotatableBeamformer",
    "RotationAngles",
    "ScaTrace",
    "SdpConvergenceError",
    "SdpProblem",
    "SdpSolution",
    "SolveParams",
    "SolveReport",
    "SurrogateCoeffs",
    "alternating_optimize",
    "antenna_positions_global",
    "beam_gain",
    "build_grid",
    "composite_bounds",
    "extract_weights",
    "gain_heatmap",
    "initialize",
    "min_composite_gain",
    "psd_project",
    "rank_one_gap",
    "reconstruct_angles",
    "rotation_matrix",
    "run_all_benchmarks",
    "run_benchmark",
    "sample_grid",
    "sca_beamforming",
    "sca_rotation",
    "solve_maxmin_sdp",
    "solve_scalar_maxmin_quadratic",
    "spectral_subgradient",
    "steering_vector",
    "steering_vector_composite",
    "surrogate_coeffs",
]
