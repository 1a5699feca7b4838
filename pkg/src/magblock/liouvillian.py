"""Superoperator construction, steady-state solve and a time-domain oracle.

Vectorization is column-stacking: vec stacks matrix columns, so that
``vec(A rho B) = (B^T kron A) vec(rho)``.  The generator of

    drho/dt = -i[H, rho] + sum_k r_k (2 f_k rho f_k+ - f_k+ f_k rho - rho f_k+ f_k)

is therefore

    L = -i (I kron H - H^T kron I)
        + sum_k r_k (2 conj(f_k) kron f_k - I kron f_k+ f_k - (f_k+ f_k)^T kron I).

The steady state is obtained from the dense trace-replacement linear solve;
an eigenvector-based null-space solve is kept as a cross-check method, and
``evolve`` integrates the master equation directly (never touching the
vectorized matrix) so the two paths are independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import LindbladModel
from .operators import DensityMatrix, POSITIVITY_TOL, TRACE_TOL

__all__ = [
    "Liouvillian",
    "SteadyState",
    "build_liouvillian",
    "steady_state",
    "evolve",
    "vec",
    "unvec",
    "master_rhs",
    "spectral_gap",
    "DimensionLimitError",
    "DegenerateKernelError",
    "NonConvergentError",
    "StepSizeTooLargeError",
]

# Dense superoperator storage is quadratic in the Hilbert dimension; refuse
# to build beyond this rather than thrash.
MAX_HILBERT_DIM = 64

# Kernel-uniqueness SVD is cheap below this superoperator dimension and runs
# by default there; above, it costs ~10x the solve and must be requested.
AUTO_KERNEL_CHECK_DIM = 256

RESIDUAL_TOL = 1e-8
KERNEL_GAP_FACTOR = 1e3
TRACE_DRIFT_TOL = 1e-8


class DimensionLimitError(ValueError):
    """Hilbert dimension exceeds the dense-superoperator limit."""


class DegenerateKernelError(RuntimeError):
    """The Liouvillian kernel is not one-dimensional."""


class NonConvergentError(RuntimeError):
    """A solve or integration violated its accuracy contract."""


class StepSizeTooLargeError(ValueError):
    """RK4 step too large for the generator's spectral radius."""


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((dim, dim), order="F")


@dataclass(frozen=True)
class Liouvillian:
    """Dense master-equation generator on the vectorized state space."""

    matrix: np.ndarray
    dims: tuple[int, ...]
    source: LindbladModel

    @property
    def hilbert_dim(self) -> int:
        return self.source.dim

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def scale(self) -> float:
        return float(np.abs(self.matrix).max())

    def trace_defect(self) -> float:
        """Max-norm of the trace functional acting from the left."""
        d = self.hilbert_dim
        tr = np.zeros(self.dim)
        tr[:: d + 1] = 1.0
        return float(np.abs(tr @ self.matrix).max())


@dataclass(frozen=True)
class SteadyState:
    """Steady-state density matrix with solver diagnostics."""

    rho: DensityMatrix
    residual: float
    method: Literal["trace-replacement", "null-space", "long-time"]


def build_liouvillian(model: LindbladModel) -> Liouvillian:
    """Vectorize a model into its dense superoperator."""
    d = model.dim
    if d > MAX_HILBERT_DIM:
        raise DimensionLimitError(
            f"Hilbert dimension {d} exceeds the dense limit {MAX_HILBERT_DIM}"
        )
    eye = np.eye(d)
    h = model.hamiltonian.data
    mat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for rate, op in model.channels:
        f = op.data
        fdf = f.conj().T @ f
        mat = mat + rate * (
            2.0 * np.kron(f.conj(), f)
            - np.kron(eye, fdf)
            - np.kron(fdf.T, eye)
        )
    return Liouvillian(mat, model.dims, model)


def _check_kernel_dimension(liou: Liouvillian) -> None:
    s = np.linalg.svd(liou.matrix, compute_uv=False)
    # The ratio test alone cannot tell two rounding-level zeros apart, so the
    # second-smallest singular value must also clear an absolute floor.
    floor = 1e-10 * max(1.0, float(s[0]))
    if s[-2] <= KERNEL_GAP_FACTOR * s[-1] or s[-2] <= floor:
        raise DegenerateKernelError(
            f"kernel not one-dimensional: smallest singular values "
            f"{s[-1]:.3e}, {s[-2]:.3e} (scale {s[0]:.3e})"
        )


def _validate_state(rho: np.ndarray, residual: float, scale: float) -> None:
    tr_defect = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)
    if tr_defect > TRACE_TOL:
        raise NonConvergentError(f"steady state trace defect {tr_defect:.3e}")
    min_eig = float(np.linalg.eigvalsh(rho).min())
    if min_eig < POSITIVITY_TOL:
        raise NonConvergentError(
            f"steady state not positive semidefinite (min eigenvalue {min_eig:.3e})"
        )
    if residual > RESIDUAL_TOL * max(1.0, scale):
        raise NonConvergentError(
            f"steady-state residual {residual:.3e} exceeds tolerance"
        )


def steady_state(
    liou: Liouvillian,
    method: Literal["trace-replacement", "null-space"] = "trace-replacement",
    check_kernel: bool | None = None,
) -> SteadyState:
    """Solve L vec(rho) = 0 with Tr rho = 1.

    The default replaces one row of L with the (scaled) trace functional and
    solves the dense linear system; ``method="null-space"`` instead takes the
    eigenvector of the eigenvalue closest to zero.  ``check_kernel=None``
    runs the kernel-uniqueness SVD automatically for superoperators up to
    dimension 256 (it costs ~10x the solve above that).

    The returned state is symmetrized, and Hermiticity/trace/positivity plus
    the residual bound are enforced before returning.
    """
    if check_kernel is None:
        check_kernel = liou.dim <= AUTO_KERNEL_CHECK_DIM
    if check_kernel:
        _check_kernel_dimension(liou)

    d = liou.hilbert_dim
    scale = liou.scale()
    if method == "trace-replacement":
        a = liou.matrix.copy()
        weight = max(1.0, scale)
        a[0, :] = 0.0
        a[0, :: d + 1] = weight
        rhs = np.zeros(liou.dim, dtype=complex)
        rhs[0] = weight
        x = np.linalg.solve(a, rhs)
    elif method == "null-space":
        eigvals, eigvecs = np.linalg.eig(liou.matrix)
        x = eigvecs[:, np.argmin(np.abs(eigvals))]
        x = x / np.trace(unvec(x, d))
    else:
        raise ValueError(f"unknown steady-state method {method!r}")

    rho = unvec(x, d)
    rho = 0.5 * (rho + rho.conj().T)
    residual = float(np.linalg.norm(liou.matrix @ vec(rho)))
    _validate_state(rho, residual, scale)
    return SteadyState(DensityMatrix(rho, liou.dims), residual, method)


def master_rhs(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Direct (non-vectorized) action of the master equation on rho."""
    h = model.hamiltonian.data
    drho = -1j * (h @ rho - rho @ h)
    for rate, op in model.channels:
        f = op.data
        fdf = f.conj().T @ f
        frho = f @ rho
        drho = drho + rate * (
            2.0 * (frho @ f.conj().T) - fdf @ rho - rho @ fdf
        )
    return drho


def _spectral_radius_estimate(model: LindbladModel) -> float:
    """Upper estimate of the generator's spectral radius for step control."""
    est = 2.0 * np.linalg.norm(model.hamiltonian.data, 2)
    for rate, op in model.channels:
        est += 4.0 * rate * np.linalg.norm(op.data, 2) ** 2
    return float(est)


def evolve(
    model: LindbladModel,
    rho0: DensityMatrix,
    t_final: float,
    dt: float | None = None,
) -> DensityMatrix:
    """Fixed-step RK4 integration of the master equation.

    Serves as the time-domain oracle for the steady-state solve; the
    right-hand side is evaluated with direct matrix products, independent of
    the vectorized superoperator.  ``dt=None`` picks half the stability bound
    1/spectral-radius.  Raises on detected blow-up and when the trace drifts
    beyond 1e-8 over the run.
    """
    if rho0.dims != model.dims:
        raise ValueError("initial state dims do not match the model")
    if t_final <= 0:
        raise ValueError("t_final must be positive")
    radius = _spectral_radius_estimate(model)
    if dt is None:
        dt = 0.5 / radius
    if dt * radius >= 1.0:
        raise StepSizeTooLargeError(
            f"dt {dt:.3e} too large for spectral radius estimate {radius:.3e}"
        )
    n_steps = max(1, int(np.ceil(t_final / dt)))
    step = t_final / n_steps
    rho = rho0.data.astype(complex).copy()
    trace0 = np.trace(rho).real
    for i in range(n_steps):
        k1 = master_rhs(model, rho)
        k2 = master_rhs(model, rho + 0.5 * step * k1)
        k3 = master_rhs(model, rho + 0.5 * step * k2)
        k4 = master_rhs(model, rho + step * k3)
        rho = rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i % 128 == 0 and not np.isfinite(rho).all():
            raise StepSizeTooLargeError(f"integration blew up at step {i}")
    if not np.isfinite(rho).all():
        raise StepSizeTooLargeError("integration blew up")
    drift = abs(np.trace(rho).real - trace0) + abs(np.trace(rho).imag)
    if drift > TRACE_DRIFT_TOL:
        raise NonConvergentError(f"trace drift {drift:.3e} over the run")
    return DensityMatrix(rho, model.dims)


def spectral_gap(liou: Liouvillian) -> float:
    """Smallest nonzero decay rate |Re eigenvalue| of the generator."""
    eigvals = np.linalg.eigvals(liou.matrix)
    rates = -eigvals.real
    cut = 1e-10 * max(1.0, float(rates.max()))
    nonzero = rates[rates > cut]
    if nonzero.size == 0:
        raise DegenerateKernelError("no decaying modes found")
    return float(nonzero.min())
