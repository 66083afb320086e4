"""Self-contained numerical backends for the two subproblem shapes.

``solve_maxmin_sdp`` handles complex-Hermitian problems of the form

    maximize   sigma + Re Tr(D W)
    subject to Tr(V_l W) >= sigma   for all l,
               W[n, n] = diag_value for all n,
               W >= 0 (PSD),

via a feasible-start primal-dual path-following method with Nesterov-Todd
scaling.  Success is certified by primal feasibility, dual feasibility and
relative duality gap, all at or below the requested tolerance.

``solve_scalar_maxmin_quadratic`` maximizes the minimum of concave
quadratics over an interval exactly, by enumerating the finite candidate
set (endpoints, vertices, pairwise intersections).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

__all__ = [
    "SdpProblem",
    "SdpSolution",
    "SdpConvergenceError",
    "hermitize",
    "psd_project",
    "solve_maxmin_sdp",
    "solve_scalar_maxmin_quadratic",
]


def hermitize(matrix: np.ndarray) -> np.ndarray:
    "Symmetrize to the nearest Hermitian matrix."
    matrix = np.asarray(matrix, dtype=complex)
    return 0.5 * (matrix + matrix.conj().T)


def assert_hermitian(matrix: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    "Validate Hermitian symmetry within ``tol`` (relative) and symmetrize."
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    scale = max(1.0, float(np.abs(matrix).max()) if matrix.size else 1.0)
    if float(np.abs(matrix - matrix.conj().T).max()) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    return hermitize(matrix)


def psd_project(matrix: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) positive semidefinite matrix to a Hermitian input.

    Eigenvalues below zero are clipped; the map is idempotent.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if not np.all(np.isfinite(matrix.view(float))):
        raise ValueError("matrix has non-finite entries")
    matrix = assert_hermitian(matrix)
    eigvals, eigvecs = np.linalg.eigh(matrix)
    clipped = np.clip(eigvals, 0.0, None)
    return hermitize((eigvecs * clipped) @ eigvecs.conj().T)


@dataclass
class SdpProblem:
    """One max-min gain SDP instance.

    ``gain_matrices`` is an (L, N, N) stack of Hermitian PSD matrices,
    ``linear_term`` an optional Hermitian N x N matrix added to the
    objective as Re Tr(linear_term @ W), and ``diag_value`` the required
    diagonal of W (positive).
    """

    gain_matrices: np.ndarray
    linear_term: np.ndarray | None = None
    diag_value: float = 1.0
    tolerance: float = 1e-6
    max_iterations: int = 200

    def __post_init__(self) -> None:
        stack = np.asarray(self.gain_matrices, dtype=complex)
        if stack.ndim == 2:
            stack = stack[None, :, :]
        if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
            raise ValueError(f"gain_matrices must stack square matrices, got {stack.shape}")
        if stack.shape[0] < 1:
            raise ValueError("need at least one gain matrix")
        self.gain_matrices = 0.5 * (stack + np.conj(np.swapaxes(stack, 1, 2)))
        n = stack.shape[1]
        if self.linear_term is None:
            self.linear_term = np.zeros((n, n), dtype=complex)
        else:
            self.linear_term = assert_hermitian(self.linear_term)
            if self.linear_term.shape != (n, n):
                raise ValueError("linear_term shape must match gain matrices")
        if not self.diag_value > 0:
            raise ValueError(f"diag_value must be positive, got {self.diag_value}")

    @property
    def num_constraints(self) -> int:
        return int(self.gain_matrices.shape[0])

    @property
    def dim(self) -> int:
        return int(self.gain_matrices.shape[1])


@dataclass
class SdpSolution:
    """Certified solution of an :class:`SdpProblem`."""

    W: np.ndarray
    sigma: float
    objective: float
    residuals: tuple[float, float, float]  # (primal, dual, relative gap)
    iterations: int


class SdpConvergenceError(RuntimeError):
    "Raised when the interior-point loop cannot certify the tolerance."

    def __init__(self, message: str, residuals: tuple[float, float, float], iterations: int):
        super().__init__(message)
        self.residuals = residuals
        self.iterations = iterations


def _trace_inner(a: np.ndarray, b: np.ndarray) -> float:
    "Re Tr(a @ b) for Hermitian a, b."
    return float(np.real(np.sum(a * b.T)))


def _max_step_psd(current: np.ndarray, direction: np.ndarray) -> float:
    "Largest t with current + t * direction still positive definite."
    try:
        chol = np.linalg.cholesky(current)
    except np.linalg.LinAlgError:
        return 0.0
    inner = scipy.linalg.solve_triangular(chol, direction, lower=True)
    inner = scipy.linalg.solve_triangular(chol, inner.conj().T, lower=True).conj().T
    lam_min = float(np.linalg.eigvalsh(hermitize(inner)).min())
    if lam_min >= 0.0:
        return np.inf
    return -1.0 / lam_min


def _max_step_pos(current: np.ndarray, direction: np.ndarray) -> float:
    "Largest t with current + t * direction > 0 elementwise."
    neg = direction < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-current[neg] / direction[neg]))


def _nt_scaling(w_mat: np.ndarray, s_mat: np.ndarray) -> np.ndarray:
    "Nesterov-Todd scaling point T with T S T = W."
    evals, evecs = np.linalg.eigh(w_mat)
    evals = np.clip(evals, 1e-300, None)
    w_sqrt = (evecs * np.sqrt(evals)) @ evecs.conj().T
    middle = hermitize(w_sqrt @ s_mat @ w_sqrt)
    mvals, mvecs = np.linalg.eigh(middle)
    mvals = np.clip(mvals, 1e-300, None)
    middle_isqrt = (mvecs / np.sqrt(mvals)) @ mvecs.conj().T
    return hermitize(w_sqrt @ middle_isqrt @ w_sqrt)


def solve_maxmin_sdp(problem: SdpProblem) -> SdpSolution:
    """Solve the diagonal-constrained max-min SDP with a certified gap.

    Raises
    ------
    SdpConvergenceError
        If the requested tolerance is not certified within the iteration
        budget; the exception carries the last residual triple.
    """
    v_stack = problem.gain_matrices
    d_mat = problem.linear_term
    d0 = problem.diag_value
    tol = problem.tolerance
    num_l, n = problem.num_constraints, problem.dim
    v_flat = v_stack.reshape(num_l, n * n)

    def trace_v(w_mat: np.ndarray) -> np.ndarray:
        # Re Tr(V_l W) for all l; both Hermitian so conj-flatten contracts.
        return np.real(v_flat @ np.conj(w_mat.reshape(n * n)))

    # Strictly feasible primal start.
    w_mat = d0 * np.eye(n, dtype=complex)
    traces = trace_v(w_mat)
    sigma = float(traces.min()) - max(1.0, 0.1 * abs(float(traces.min())))
    slack = traces - sigma
    # Strictly feasible dual start.
    y = np.full(num_l, 1.0 / num_l)
    combo = hermitize(d_mat + np.tensordot(y, v_stack, axes=1))
    z = np.full(n, float(np.linalg.eigvalsh(combo).max()) + 1.0)
    s_mat = hermitize(np.diag(z) - combo)

    identity = np.eye(n, dtype=complex)
    residuals = (np.inf, np.inf, np.inf)
    for iteration in range(1, problem.max_iterations + 1):
        traces = trace_v(w_mat)
        gap = _trace_inner(w_mat, s_mat) + float(y @ slack)
        pobj = sigma + _trace_inner(d_mat, w_mat)
        dobj = d0 * float(z.sum())
        relgap = abs(gap) / max(1.0, abs(pobj), abs(dobj))

        rp1 = traces - sigma - slack
        rp2 = np.real(np.diag(w_mat)) - d0
        combo = hermitize(d_mat + np.tensordot(y, v_stack, axes=1))
        rd = hermitize(np.diag(z) - combo - s_mat)
        rsig = 1.0 - float(y.sum())
        pinf = max(float(np.abs(rp1).max()), float(np.abs(rp2).max()))
        dinf = max(float(np.abs(rd).max()), abs(rsig))
        residuals = (pinf, dinf, relgap)
        if relgap <= tol and pinf <= 100 * tol * max(1.0, d0) and dinf <= 100 * tol:
            return SdpSolution(
                W=hermitize(w_mat),
                sigma=sigma,
                objective=pobj,
                residuals=residuals,
                iterations=iteration - 1,
            )

        mu_bar = gap / (n + num_l)
        t_mat = _nt_scaling(w_mat, s_mat)

        # Schur pieces in the NT metric.
        tv = np.einsum("ij,ljk,km->lim", t_mat, v_stack, t_mat, optimize=True)  # T V_l T
        tv_flat = tv.reshape(num_l, n * n)
        p_gram = np.real(v_flat @ np.conj(tv_flat).T)
        q_diag = np.real(tv[:, np.arange(n), np.arange(n)])  # (L, N)
        g_diag = np.abs(t_mat) ** 2  # (N, N)

        dim = num_l + n + 1
        system = np.zeros((dim, dim))
        system[:num_l, :num_l] = p_gram + np.diag(slack / y)
        system[:num_l, num_l : num_l + n] = -q_diag
        system[:num_l, -1] = -1.0
        system[num_l : num_l + n, :num_l] = q_diag.T
        system[num_l : num_l + n, num_l : num_l + n] = -g_diag
        system[-1, :num_l] = 1.0

        try:
            lu, piv = scipy.linalg.lu_factor(system)
        except (ValueError, scipy.linalg.LinAlgError):
            lu = piv = None

        s_inv_vals, s_vecs = np.linalg.eigh(s_mat)
        s_inv = (s_vecs / np.clip(s_inv_vals, 1e-300, None)) @ s_vecs.conj().T

        trd = hermitize(t_mat @ rd @ t_mat)
        trd_corr = np.real(v_flat @ np.conj(trd.reshape(n * n)))

        def newton(sigma_c: float, lp_corr: np.ndarray) -> tuple:
            rc_mat = hermitize(sigma_c * mu_bar * s_inv - w_mat)
            rc_lp = sigma_c * mu_bar - y * slack - lp_corr
            rc_v = np.real(v_flat @ np.conj(rc_mat.reshape(n * n)))
            rhs = np.empty(dim)
            rhs[:num_l] = -rp1 - rc_v + trd_corr + rc_lp / y
            rhs[num_l : num_l + n] = -rp2 - np.real(np.diag(rc_mat)) + np.real(np.diag(trd))
            rhs[-1] = rsig
            if lu is not None:
                sol = scipy.linalg.lu_solve((lu, piv), rhs)
            else:
                sol, *_ = np.linalg.lstsq(system, rhs, rcond=None)
            dy = sol[:num_l]
            dz = sol[num_l : num_l + n]
            dsig = float(sol[-1])
            ds_mat = hermitize(np.diag(dz) - np.tensordot(dy, v_stack, axes=1) + rd)
            dw_mat = hermitize(rc_mat - t_mat @ ds_mat @ t_mat)
            dslack = (rc_lp - slack * dy) / y
            return dw_mat, dsig, dslack, dy, dz, ds_mat

        # Predictor: affine direction fixes the centering parameter.
        aff = newton(0.0, np.zeros(num_l))
        dw_a, _, dslack_a, dy_a, _, ds_a = aff
        alpha_pa = min(1.0, 0.99 * _max_step_psd(w_mat, dw_a), 0.99 * _max_step_pos(slack, dslack_a))
        alpha_da = min(1.0, 0.99 * _max_step_psd(s_mat, ds_a), 0.99 * _max_step_pos(y, dy_a))
        w_aff = w_mat + alpha_pa * dw_a
        s_aff = s_mat + alpha_da * ds_a
        gap_aff = _trace_inner(w_aff, s_aff) + float(
            (y + alpha_da * dy_a) @ (slack + alpha_pa * dslack_a)
        )
        mu_aff = max(gap_aff, 0.0) / (n + num_l)
        centering = float(np.clip((mu_aff / mu_bar) ** 3, 1e-8, 1.0)) if mu_bar > 0 else 0.1

        # Corrector with Mehrotra cross term on the scalar block.
        dw_mat, dsig, dslack, dy, dz, ds_mat = newton(centering, dy_a * dslack_a)

        tau = 0.99 if mu_bar < 1e-3 else 0.95
        alpha_p = min(
            1.0, tau * _max_step_psd(w_mat, dw_mat), tau * _max_step_pos(slack, dslack)
        )
        alpha_d = min(1.0, tau * _max_step_psd(s_mat, ds_mat), tau * _max_step_pos(y, dy))
        if alpha_p <= 1e-14 and alpha_d <= 1e-14:
            break

        w_mat = hermitize(w_mat + alpha_p * dw_mat)
        sigma += alpha_p * dsig
        slack = slack + alpha_p * dslack
        y = y + alpha_d * dy
        z = z + alpha_d * dz
        s_mat = hermitize(s_mat + alpha_d * ds_mat)

    raise SdpConvergenceError(
        f"interior-point loop did not certify tolerance {tol} within "
        f"{problem.max_iterations} iterations (residuals={residuals})",
        residuals=residuals,
        iterations=problem.max_iterations,
    )


def solve_scalar_maxmin_quadratic(
    coeffs: "list[tuple[float, float, float]] | np.ndarray",
    interval: tuple[float, float],
) -> tuple[float, float]:
    """Exact global maximizer of ``min_l (a_l x^2 + b_l x + c_l)`` on an interval.

    Every quadratic must be concave (``a_l <= 0``); the pointwise minimum is
    then concave and its maximizer lies at an interval endpoint, a vertex of
    one quadratic, or an intersection of two quadratics.  Among equal
    maximizers the smallest x wins.

    Returns
    -------
    (x, value):
        The maximizer and the attained minimum value.
    """
    arr = np.asarray(coeffs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 1:
        raise ValueError("coeffs must be a non-empty list of (a, b, c) triples")
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"interval must satisfy lo < hi, got [{lo}, {hi}]")
    a, b, c = arr[:, 0], arr[:, 1], arr[:, 2]
    scale = max(1.0, float(np.abs(arr).max()))
    if np.any(a > 1e-12 * scale):
        raise ValueError("all quadratics must be concave (a_l <= 0)")
    a = np.minimum(a, 0.0)

    candidates = [lo, hi]
    concave = a < 0
    vertices = np.divide(-b, 2.0 * a, out=np.full_like(b, np.nan), where=concave)
    candidates.extend(float(np.clip(v, lo, hi)) for v in vertices[np.isfinite(vertices)])

    # Pairwise intersections: (a_i - a_j) x^2 + (b_i - b_j) x + (c_i - c_j) = 0.
    num = arr.shape[0]
    for i in range(num):
        da = a[i] - a[i + 1 :]
        db = b[i] - b[i + 1 :]
        dc = c[i] - c[i + 1 :]
        for daj, dbj, dcj in zip(da, db, dc):
            if abs(daj) <= 1e-300:
                if abs(dbj) > 1e-300:
                    root = -dcj / dbj
                    if lo <= root <= hi:
                        candidates.append(float(root))
                continue
            disc = dbj * dbj - 4.0 * daj * dcj
            if disc < 0.0:
                continue
            sq = np.sqrt(disc)
            for root in ((-dbj - sq) / (2.0 * daj), (-dbj + sq) / (2.0 * daj)):
                if lo <= root <= hi:
                    candidates.append(float(root))

    xs = np.unique(np.asarray(candidates, dtype=float))
    values = np.min(a[:, None] * xs[None, :] ** 2 + b[:, None] * xs[None, :] + c[:, None], axis=0)
    best = int(np.argmax(values))  # ties resolve to the smallest x: xs is sorted
    return float(xs[best]), float(values[best])
