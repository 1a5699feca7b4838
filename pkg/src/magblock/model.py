"""Rotating-frame Hamiltonian, drive and jump channels of the open system.

The master equation generated from these models is

    drho/dt = i[rho, H] + sum_k r_k (2 f_k rho f_k+ - f_k+ f_k rho - rho f_k+ f_k)

with the factor-2 dissipator convention: a channel of rate ``r`` empties a
population at ``2 r``.  Rates are used exactly as configured, with no hidden
1/2.

``build_two_mode``/``build_three_mode`` work in the frame rotating at the
drive frequency, which removes all explicit time dependence; only detunings
enter.  ``effective_hamiltonian`` is the undriven lab-frame non-Hermitian
generator obtained by dropping the refill (sandwich) terms, whose
single-excitation blocks carry the direction-dependent linewidths.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .operators import QuantumOperator, annihilation, embed, sigma_minus
from .params import BareParams, CavityParams, SystemParams

__all__ = [
    "LindbladModel",
    "build_two_mode",
    "build_three_mode",
    "effective_hamiltonian",
    "ReducedParams",
    "reduce_bare_params",
    "frohlich_residual",
]

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class LindbladModel:
    """Rotating-frame Hamiltonian plus (rate, jump operator) channels."""

    hamiltonian: QuantumOperator
    channels: tuple[tuple[float, QuantumOperator], ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        if self.hamiltonian.dims != self.dims:
            raise ValueError("hamiltonian dims do not match model dims")
        defect = self.hamiltonian.hermiticity_defect()
        scale = max(1.0, float(np.abs(self.hamiltonian.data).max()))
        if defect > HERMITICITY_TOL * scale:
            raise ValueError(f"hamiltonian is not Hermitian (defect {defect:.3g})")
        for rate, op in self.channels:
            if rate < 0:
                raise ValueError(f"channel rate must be nonnegative, got {rate}")
            if op.dims != self.dims:
                raise ValueError("jump operator dims do not match model dims")

    @property
    def dim(self) -> int:
        return self.hamiltonian.dim


def _two_mode_ops(n_fock: int):
    dims = (2, n_fock)
    sm = embed(sigma_minus(), 0, dims)
    b = embed(annihilation(n_fock), 1, dims)
    return dims, sm, b


def _drive_term(params: SystemParams, sm: QuantumOperator, b: QuantumOperator) -> QuantumOperator:
    xi_q, xi_b = params.drive_amplitudes()
    phase = cmath.exp(1j * params.phi)
    h = xi_q * (sm + sm.adjoint())
    h = h + xi_b * (phase * b + phase.conjugate() * b.adjoint())
    return h


def _collective_jump(params: SystemParams, sm: QuantumOperator, b: QuantumOperator) -> QuantumOperator:
    return cmath.exp(1j * params.theta) * params.mu * b + params.nu * sm


def build_two_mode(params: SystemParams) -> LindbladModel:
    """Driven qubit-magnon model in the frame rotating at the drive.

    H = (wq-wd) s+s- + (wb-wd) b+b + lam (b+ s- + b s+)
        + xi_q (s- + s+) + xi_b (b e^{i phi} + b+ e^{-i phi})

    Channels: (gamma_in, s-), (kappa_in, b) and the collective waveguide
    channel (tau, e^{i theta} mu b + nu s-).  Zero-rate channels are dropped.
    """
    dims, sm, b = _two_mode_ops(params.n_fock)
    n_q = sm.adjoint() @ sm
    n_b = b.adjoint() @ b
    h = (
        (params.omega_q - params.omega_d) * n_q
        + (params.omega_b - params.omega_d) * n_b
        + params.lam * (b.adjoint() @ sm + b @ sm.adjoint())
        + _drive_term(params, sm, b)
    )
    channels = []
    if params.gamma_in > 0:
        channels.append((params.gamma_in, sm))
    if params.kappa_in > 0:
        channels.append((params.kappa_in, b))
    if params.tau > 0:
        channels.append((params.tau, _collective_jump(params, sm, b)))
    return LindbladModel(h, tuple(channels), dims)


def build_three_mode(params: SystemParams, cavity: CavityParams) -> LindbladModel:
    """Extension with a waveguide-coupled cavity mode.

    The Hamiltonian gains (wc-wd) c+c; the collective jump operator gains a
    ``zeta c`` term and the cavity an intrinsic channel (beta_in, c).
    """
    dims = (2, params.n_fock, cavity.n_fock_c)
    sm = embed(sigma_minus(), 0, dims)
    b = embed(annihilation(params.n_fock), 1, dims)
    c = embed(annihilation(cavity.n_fock_c), 2, dims)
    h = (
        (params.omega_q - params.omega_d) * (sm.adjoint() @ sm)
        + (params.omega_b - params.omega_d) * (b.adjoint() @ b)
        + (cavity.omega_c - params.omega_d) * (c.adjoint() @ c)
        + params.lam * (b.adjoint() @ sm + b @ sm.adjoint())
        + _drive_term(params, sm, b)
    )
    channels = []
    if params.gamma_in > 0:
        channels.append((params.gamma_in, sm))
    if params.kappa_in > 0:
        channels.append((params.kappa_in, b))
    if cavity.beta_in > 0:
        channels.append((cavity.beta_in, c))
    if params.tau > 0:
        jump = _collective_jump(params, sm, b) + cavity.zeta * c
        channels.append((params.tau, jump))
    return LindbladModel(h, tuple(channels), dims)


def effective_hamiltonian(params: SystemParams) -> QuantumOperator:
    """Undriven lab-frame non-Hermitian Hamiltonian of the two-mode system.

    H_eff = (wq - i gamma) s+s- + (wb - i kappa) b+b + lam (b+ s- + b s+)
            - i Gamma (e^{i theta} s+ b + e^{-i theta} b+ s-)

    with the total decays gamma = gamma_in + gamma_ex, kappa = kappa_in +
    kappa_ex.  The cross terms come from the exact expansion of the
    collective channel's o+o, so the operator stays consistent with the
    master equation at every port phase; at theta in {0, pi} it reduces to
    the symmetric (lam - i Gamma e^{i theta})(s+ b + b+ s-) coupling.
    """
    dims, sm, b = _two_mode_ops(params.n_fock)
    n_q = (sm.adjoint() @ sm).data
    n_b = (b.adjoint() @ b).data
    cross = cmath.exp(1j * params.theta) * (sm.adjoint() @ b).data
    cross = cross + cmath.exp(-1j * params.theta) * (b.adjoint() @ sm).data
    data = (
        (params.omega_q - 1j * params.gamma_total) * n_q
        + (params.omega_b - 1j * params.kappa_total) * n_b
        + params.lam * (b.adjoint() @ sm + b @ sm.adjoint()).data
        - 1j * params.gamma_diss * cross
    )
    return QuantumOperator(data, dims)


class ReducedParams(NamedTuple):
    """Effective two-mode parameters after eliminating the cavity."""

    omega_q: float
    omega_b: float
    lam: float


def reduce_bare_params(bare: BareParams) -> ReducedParams:
    """Second-order elimination of the far-detuned cavity.

    Shifts each mode by coupling^2/detuning and produces the exchange
    coupling lam = lambda_q lambda_b (1/(2 delta_q) + 1/(2 delta_b)).
    """
    omega_q = bare.omega_q0 + bare.lambda_q**2 / bare.delta_q
    omega_b = bare.omega_b0 + bare.lambda_b**2 / bare.delta_b
    lam = bare.lambda_q * bare.lambda_b * (
        0.5 / bare.delta_q + 0.5 / bare.delta_b
    )
    return ReducedParams(omega_q, omega_b, lam)


def _three_mode_bare_ops(n_fock: int):
    dims = (2, n_fock, n_fock)
    sm = embed(sigma_minus(), 0, dims)
    b = embed(annihilation(n_fock), 1, dims)
    c = embed(annihilation(n_fock), 2, dims)
    return dims, sm, b, c


def frohlich_residual(bare: BareParams, n_fock: int, full_space: bool = False) -> float:
    """Max-norm residual of the generator identity H_I + [H_0, V] = 0.

    Builds the bare three-mode matrices on a qubit x magnon x cavity space
    truncated at ``n_fock`` levels per bosonic mode and evaluates the defining
    property of the elimination generator V.  By default the norm is
    restricted to the subspace excluding the top Fock level of each bosonic
    mode; ``full_space=True`` includes those levels.  (H_0 is diagonal, so
    the identity survives truncation exactly on the full space as well.)
    """
    if n_fock < 3:
        raise ValueError(f"n_fock must be at least 3, got {n_fock}")
    dims, sm, b, c = _three_mode_bare_ops(n_fock)
    h0 = (
        bare.omega_q0 * (sm.adjoint() @ sm).data
        + bare.omega_b0 * (b.adjoint() @ b).data
        + bare.omega_c * (c.adjoint() @ c).data
    )
    h_i = bare.lambda_q * (sm.adjoint() @ c + sm @ c.adjoint()).data + bare.lambda_b * (
        b.adjoint() @ c + b @ c.adjoint()
    ).data
    v = (bare.lambda_q / bare.delta_q) * (sm @ c.adjoint() - sm.adjoint() @ c).data + (
        bare.lambda_b / bare.delta_b
    ) * (b @ c.adjoint() - b.adjoint() @ c).data
    residual = h_i + (h0 @ v - v @ h0)
    if not full_space:
        keep = np.array(
            [
                mb <= n_fock - 2 and mc <= n_fock - 2
                for _ in range(2)
                for mb in range(n_fock)
                for mc in range(n_fock)
            ]
        )
        residual = residual[np.ix_(keep, keep)]
    return float(np.abs(residual).max())
