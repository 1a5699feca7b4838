"""Magnon statistics and dressed-level spectra.

g2(0) and the contrast ratio are computed from the full master-equation
steady state; the analytic/numeric dressed spectra expose the complex
eigenvalues of the undriven non-Hermitian generator, whose imaginary parts
carry the direction dependence behind the nonreciprocity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import effective_hamiltonian
from .operators import DensityMatrix, annihilation, embed, expectation
from .params import SystemParams

__all__ = [
    "VacuumStateError",
    "CorrelationRecord",
    "DressedEigenvalue",
    "occupation",
    "g2_zero",
    "contrast",
    "hermitian_spectrum",
    "dressed_spectrum",
    "dressed_spectrum_numeric",
    "excitation_block",
]

# Occupations below this are treated as vacuum; g2(0) is undefined there.
OCCUPATION_FLOOR = 1e-12

IMAG_PART_TOL = 1e-10


class VacuumStateError(RuntimeError):
    """g2(0) requested for a state with no magnon population."""


@dataclass(frozen=True)
class CorrelationRecord:
    """One steady-state point: port phase, detuning, coupling and statistics."""

    theta: float
    delta: float
    gamma_diss: float
    g2: float
    occupation: float

    def __post_init__(self):
        if self.g2 < 0:
            raise ValueError(f"g2 must be nonnegative, got {self.g2}")
        if self.occupation < 0:
            raise ValueError(f"occupation must be nonnegative, got {self.occupation}")

    @property
    def weak_drive(self) -> bool:
        return self.occupation < 1.0


def _magnon_moments(rho: DensityMatrix) -> tuple[float, float]:
    if len(rho.dims) < 2:
        raise ValueError("state must live on a (qubit, magnon, ...) space")
    b = embed(annihilation(rho.dims[1]), 1, rho.dims)
    bd = b.adjoint()
    first = expectation(rho, bd @ b)
    second = expectation(rho, bd @ bd @ b @ b)
    for name, value in (("<b+b>", first), ("<b+b+bb>", second)):
        if abs(value.imag) > IMAG_PART_TOL:
            raise ValueError(f"{name} has imaginary part {value.imag:.3e}")
    return first.real, second.real


def occupation(rho: DensityMatrix) -> float:
    """Steady-state magnon number <b+b>."""
    return _magnon_moments(rho)[0]


def g2_zero(rho: DensityMatrix) -> float:
    """Equal-time second-order correlation <b+b+bb> / <b+b>^2."""
    first, second = _magnon_moments(rho)
    if first <= OCCUPATION_FLOOR:
        raise VacuumStateError(
            f"occupation {first:.3e} at or below the vacuum floor; g2(0) undefined"
        )
    return second / first**2


def contrast(g_fwd: float, g_bwd: float) -> float:
    """Bidirectional contrast |g_fwd - g_bwd| / (g_fwd + g_bwd), in [0, 1]."""
    if g_fwd < 0 or g_bwd < 0:
        raise ValueError("correlations must be nonnegative")
    total = g_fwd + g_bwd
    if total <= 0:
        raise ValueError("g_fwd + g_bwd must be positive")
    return abs(g_fwd - g_bwd) / total


def hermitian_spectrum(params: SystemParams, n: int) -> tuple[float, float]:
    """Dressed eigenenergies (minus, plus) of the closed qubit-magnon ladder.

    omega_{n,+-} = n wb + delta/2 +- sqrt(delta^2 + 4 n lam^2)/2 with
    delta = wq - wb.
    """
    if n < 1:
        raise ValueError(f"excitation number must be >= 1, got {n}")
    delta = params.omega_q - params.omega_b
    split = math.sqrt(delta**2 + 4.0 * n * params.lam**2)
    base = n * params.omega_b + 0.5 * delta
    return (base - 0.5 * split, base + 0.5 * split)


@dataclass(frozen=True)
class DressedEigenvalue:
    """One complex dressed level: excitation number, branch label, value."""

    n: int
    branch: Literal["-", "+"]
    value: complex


# Path resolution for the branch-continuity tracking of the complex root.
_BRANCH_TRACK_STEPS = 64


def _tracked_root(delta: float, gk_diff: float, lam: float, gdiss: float,
                  theta: float, n: int) -> complex:
    """sqrt(Delta~^2 + 4 n z z~) followed continuously from the closed limit.

    The dissipative parts are scaled from 0 to 1 and the square root's sign
    is chosen by continuity at each step, starting from the nonnegative real
    root of the closed system.  This keeps the +/- labels attached to their
    closed-ladder ancestors instead of jumping at principal-branch cuts.
    """
    root = complex(math.sqrt(delta**2 + 4.0 * n * lam**2))
    for k in range(1, _BRANCH_TRACK_STEPS + 1):
        t = k / _BRANCH_TRACK_STEPS
        dtilde = delta - 1j * t * gk_diff
        cross = lam**2 - 2j * t * lam * gdiss * math.cos(theta) - (t * gdiss) ** 2
        p = cmath.sqrt(dtilde**2 + 4.0 * n * cross)
        root = p if abs(p - root) <= abs(-p - root) else -p
    return root


def dressed_spectrum(params: SystemParams, n: int) -> tuple[DressedEigenvalue, DressedEigenvalue]:
    """Complex dressed eigenvalues (minus, plus) of the open ladder.

    omega_{n,+-} = n (wb - i kappa) + Delta~/2 +- s/2 with Delta~ the complex
    detuning (wq - i gamma) - (wb - i kappa) and s the continuity-tracked
    root of Delta~^2 + 4 n (lam - i Gamma e^{i theta})(lam - i Gamma e^{-i theta}).
    The off-diagonal product form keeps the values equal to the block
    eigenvalues of the master-equation generator at every port phase; for
    theta in {0, pi} it coincides with the squared symmetric coupling.
    """
    if n < 1:
        raise ValueError(f"excitation number must be >= 1, got {n}")
    gamma = params.gamma_total
    kappa = params.kappa_total
    delta = params.omega_q - params.omega_b
    base = n * (params.omega_b - 1j * kappa) + 0.5 * (delta - 1j * (gamma - kappa))
    s = _tracked_root(delta, gamma - kappa, params.lam, params.gamma_diss,
                      params.theta, n)
    return (
        DressedEigenvalue(n, "-", base - 0.5 * s),
        DressedEigenvalue(n, "+", base + 0.5 * s),
    )


def excitation_block(params: SystemParams, n: int) -> np.ndarray:
    """The n-excitation block of the undriven non-Hermitian generator.

    Block n is spanned by |g>|n> and |e>|n-1>; the ground block (n = 0) is
    the 1x1 zero matrix.
    """
    if n < 0:
        raise ValueError(f"excitation number must be >= 0, got {n}")
    if n >= params.n_fock:
        raise ValueError(
            f"excitation number {n} requires more than {params.n_fock} Fock levels"
        )
    h = effective_hamiltonian(params).data
    if n == 0:
        return h[:1, :1].copy()
    n_fock = params.n_fock
    idx = [n, n_fock + n - 1]  # |g,n> and |e,n-1> in the fixed basis order
    return h[np.ix_(idx, idx)].copy()


def dressed_spectrum_numeric(params: SystemParams, n_max: int) -> list[DressedEigenvalue]:
    """Dressed eigenvalues from direct block diagonalization.

    Diagonalizes each n-excitation block of the undriven non-Hermitian
    generator and labels the eigenvalues by minimal distance to the analytic
    pair, for n = 1 .. n_max.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    out: list[DressedEigenvalue] = []
    for n in range(1, n_max + 1):
        eigvals = np.linalg.eigvals(excitation_block(params, n))
        minus, plus = dressed_spectrum(params, n)
        direct = abs(eigvals[0] - minus.value) + abs(eigvals[1] - plus.value)
        swapped = abs(eigvals[0] - plus.value) + abs(eigvals[1] - minus.value)
        lo, hi = (eigvals[0], eigvals[1]) if direct <= swapped else (eigvals[1], eigvals[0])
        out.append(DressedEigenvalue(n, "-", complex(lo)))
        out.append(DressedEigenvalue(n, "+", complex(hi)))
    return out
