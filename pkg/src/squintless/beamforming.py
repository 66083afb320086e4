"""SCA loop for the analog weights at a fixed rotation coefficient.

The rank-one requirement on ``W = w w^H`` is handled with a penalty equal
to the nuclear norm minus the spectral norm, linearized at each iterate
through the top-eigenvector subgradient.  Each iteration solves one
diagonal-constrained SDP; a converged near-rank-one ``W`` is projected to
constant-modulus weights by its principal component.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .composite import CompositeGrid
from .gain import BeamformerWeights
from .geometry import steering_vector_composite
from .solvers import (
    SdpConvergenceError,
    SdpProblem,
    assert_hermitian,
    hermitize,
    solve_maxmin_sdp,
)

logger = logging.getLogger(__name__)

_DEGENERACY_TOL = 1e-10


@dataclass
class ScaTrace:
    """Per-iteration record of one SCA run."""

    objective_values: list[float] = field(default_factory=list)
    rank_one_gaps: list[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    solver_residuals: tuple[float, float, float] | None = None


def rank_one_gap(matrix: np.ndarray) -> float:
    """Nuclear norm minus spectral norm; zero iff the matrix is rank one.

    For PSD input this equals the trace minus the largest eigenvalue.
    """
    matrix = assert_hermitian(matrix)
    eigvals = np.abs(np.linalg.eigvalsh(matrix))
    return float(eigvals.sum() - eigvals.max())


def spectral_subgradient(matrix: np.ndarray) -> np.ndarray:
    """Subgradient ``s s^H`` of the spectral norm at a Hermitian matrix.

    ``s`` is the top eigenvector; under degeneracy (ties within 1e-10) the
    lowest-index vector of the eigensolver's ascending output is used, and
    the phase is canonicalized for determinism.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if not np.all(np.isfinite(matrix.view(float))):
        raise ValueError("matrix has non-finite entries")
    matrix = assert_hermitian(matrix)
    eigvals, eigvecs = np.linalg.eigh(matrix)
    top = eigvals[-1]
    index = int(np.argmax(eigvals >= top - _DEGENERACY_TOL))
    vec = eigvecs[:, index]
    anchor = int(np.argmax(np.abs(vec)))
    phase = vec[anchor] / abs(vec[anchor]) if abs(vec[anchor]) > 0 else 1.0
    vec = vec / phase
    return hermitize(np.outer(vec, vec.conj()))


def steering_matrix(grid: CompositeGrid, mu: float, num_antennas: int) -> np.ndarray:
    "Stack of composite steering vectors, shape (L, N)."
    return np.stack(
        [steering_vector_composite(num_antennas, omega, mu) for omega in grid.samples]
    )


def gain_matrices(grid: CompositeGrid, mu: float, num_antennas: int) -> np.ndarray:
    "Rank-one constraint matrices ``a a^H`` for every grid sample, (L, N, N)."
    a = steering_matrix(grid, mu, num_antennas)
    return np.einsum("li,lj->lij", a, a.conj())


def _min_constraint_gain(v_stack: np.ndarray, w_mat: np.ndarray) -> float:
    n = w_mat.shape[0]
    traces = np.real(v_stack.reshape(v_stack.shape[0], n * n) @ np.conj(w_mat.reshape(n * n)))
    return float(traces.min())


def sca_beamforming(
    grid: CompositeGrid,
    mu: float,
    w_init: np.ndarray,
    rho: float = 20.0,
    tol: float = 1e-4,
    max_iter: int = 30,
    sdp_tolerance: float = 1e-6,
    sdp_max_iterations: int = 200,
) -> tuple[np.ndarray, ScaTrace]:
    """Maximize the penalized worst-case gain over PSD matrices with unit trace split.

    Starting from ``w_init`` (PSD, diagonal 1/N) the loop alternates the
    subgradient linearization of the rank-one penalty with one SDP solve
    until the penalized objective stalls.  If the converged matrix is not
    near rank one the penalty weight is doubled once and the loop rerun
    from the current point (the returned trace covers the final run).
    """
    if rho <= 0:
        raise ValueError(f"penalty rho must be positive, got {rho}")
    w_mat = assert_hermitian(w_init)
    n = w_mat.shape[0]
    diag_value = 1.0 / n
    diag_err = float(np.abs(np.real(np.diag(w_mat)) - diag_value).max())
    if diag_err > 1e-6:
        raise ValueError(f"w_init diagonal must equal 1/N, max error {diag_err:.3e}")
    if float(np.linalg.eigvalsh(w_mat).min()) < -1e-8:
        raise ValueError("w_init must be PSD")

    v_stack = gain_matrices(grid, mu, n)

    def objective(mat: np.ndarray, penalty: float) -> float:
        return _min_constraint_gain(v_stack, mat) - penalty * rank_one_gap(mat)

    penalty = float(rho)
    escalated = False
    trace = ScaTrace()
    while True:
        trace = ScaTrace()
        value = objective(w_mat, penalty)
        trace.objective_values.append(value)
        trace.rank_one_gaps.append(rank_one_gap(w_mat))
        for iteration in range(1, max_iter + 1):
            linear = penalty * spectral_subgradient(w_mat)
            problem = SdpProblem(
                gain_matrices=v_stack,
                linear_term=linear,
                diag_value=diag_value,
                tolerance=sdp_tolerance,
                max_iterations=sdp_max_iterations,
            )
            try:
                solution = solve_maxmin_sdp(problem)
            except SdpConvergenceError as err:
                raise SdpConvergenceError(
                    f"SDP backend failed at SCA iteration {iteration}: {err}",
                    residuals=err.residuals,
                    iterations=err.iterations,
                ) from err
            w_mat = solution.W
            trace.solver_residuals = solution.residuals
            new_value = objective(w_mat, penalty)
            trace.objective_values.append(new_value)
            trace.rank_one_gaps.append(rank_one_gap(w_mat))
            trace.iterations = iteration
            if abs(new_value - value) <= tol * max(1.0, abs(value)):
                trace.converged = True
                value = new_value
                break
            value = new_value
        spectral = float(np.abs(np.linalg.eigvalsh(w_mat)).max())
        gap_ratio = rank_one_gap(w_mat) / max(spectral, 1e-300)
        if trace.converged and gap_ratio > 1e-2 and not escalated:
            logger.debug("rank-one gap ratio %.3e too large, doubling penalty", gap_ratio)
            penalty *= 2.0
            escalated = True
            continue
        break
    return w_mat, trace


def extract_weights(w_mat: np.ndarray) -> BeamformerWeights:
    """Constant-modulus weights from the principal component of a PSD matrix.

    Phases are the angles of ``sqrt(lambda_max) * s`` with the global phase
    fixed so the first phase is zero; exactly-zero entries get phase zero.
    """
    w_mat = assert_hermitian(w_mat)
    eigvals, eigvecs = np.linalg.eigh(w_mat)
    component = np.sqrt(max(float(eigvals[-1]), 0.0)) * eigvecs[:, -1]
    phases = np.where(np.abs(component) > 0.0, np.angle(component), 0.0)
    phases = np.angle(np.exp(1j * (phases - phases[0])))
    return BeamformerWeights(phases)
