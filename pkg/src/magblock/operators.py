"""Dense complex operator algebra on small tensor-product Hilbert spaces.

Every operator carries the list of subsystem dimensions it acts on, so that
embeddings and expectation values can be checked at the boundaries instead of
silently broadcasting.  The repo-wide basis conventions are fixed here:

* subsystem order is (qubit, magnon[, cavity]),
* the qubit basis is ordered (|g>, |e|),
* bosonic Fock states are ordered by ascending occupation.

Storage is dense ``complex128`` throughout; the total dimension never exceeds
a few tens at the truncations used, so dense is both the simplest and the
fastest choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "QuantumOperator",
    "DensityMatrix",
    "annihilation",
    "creation",
    "number",
    "sigma_minus",
    "sigma_plus",
    "identity",
    "tensor",
    "embed",
    "expectation",
    "basis_density",
]

# Tolerances for the density-matrix well-formedness checks.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-9


def _as_square_complex(data) -> np.ndarray:
    arr = np.array(data, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_dims(dims, dim: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    if math.prod(dims) != dim:
        raise ValueError(
            f"product of subsystem dimensions {dims} is {math.prod(dims)}, "
            f"but the matrix dimension is {dim}"
        )
    return dims


@dataclass(frozen=True, eq=False)
class QuantumOperator:
    """A complex square matrix tagged with its subsystem dimensions.

    Parameters
    ----------
    data : array_like
        Square complex matrix of dimension ``prod(dims)``.
    dims : sequence of int
        Ordered subsystem dimensions, qubit slot first.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        arr = _as_square_complex(self.data)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "dims", _check_dims(self.dims, arr.shape[0]))

    @property
    def dim(self) -> int:
        """Total Hilbert-space dimension."""
        return self.data.shape[0]

    def adjoint(self) -> "QuantumOperator":
        """Hermitian conjugate, same subsystem dimensions."""
        return QuantumOperator(self.data.conj().T, self.dims)

    def _require_same_dims(self, other: "QuantumOperator"):
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __matmul__(self, other: "QuantumOperator") -> "QuantumOperator":
        self._require_same_dims(other)
        return QuantumOperator(self.data @ other.data, self.dims)

    def __add__(self, other: "QuantumOperator") -> "QuantumOperator":
        self._require_same_dims(other)
        return QuantumOperator(self.data + other.data, self.dims)

    def __sub__(self, other: "QuantumOperator") -> "QuantumOperator":
        self._require_same_dims(other)
        return QuantumOperator(self.data - other.data, self.dims)

    def __neg__(self) -> "QuantumOperator":
        return QuantumOperator(-self.data, self.dims)

    def __mul__(self, scalar) -> "QuantumOperator":
        return QuantumOperator(self.data * complex(scalar), self.dims)

    __rmul__ = __mul__

    def hermiticity_defect(self) -> float:
        """Max-norm distance from the Hermitian part."""
        return float(np.abs(self.data - self.data.conj().T).max())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state on the same tagged tensor-product space as QuantumOperator.

    Construction does not validate the state (intermediate integrator states
    may be slightly unphysical); call :meth:`diagnostics` or let the solver
    enforce the invariants.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        arr = _as_square_complex(self.data)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "dims", _check_dims(self.dims, arr.shape[0]))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def diagnostics(self) -> dict[str, float]:
        """Hermiticity defect, trace defect and smallest eigenvalue."""
        herm = float(np.abs(self.data - self.data.conj().T).max())
        tr = abs(self.trace() - 1.0)
        sym = 0.5 * (self.data + self.data.conj().T)
        min_eig = float(np.linalg.eigvalsh(sym).min())
        return {"hermiticity": herm, "trace": tr, "min_eigenvalue": min_eig}

    def is_physical(self) -> bool:
        d = self.diagnostics()
        return (
            d["hermiticity"] <= HERMITICITY_TOL
            and d["trace"] <= TRACE_TOL
            and d["min_eigenvalue"] >= POSITIVITY_TOL
        )


def annihilation(n_levels: int) -> QuantumOperator:
    """Bosonic annihilation operator on a truncated Fock space.

    Matrix elements ``<m-1|b|m> = sqrt(m)`` for ``m = 1 .. n_levels-1``.

    Parameters
    ----------
    n_levels : int
        Number of retained Fock levels, at least 2.
    """
    if n_levels < 2:
        raise ValueError(f"need at least 2 Fock levels, got {n_levels}")
    data = np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), k=1)
    return QuantumOperator(data, (n_levels,))


def creation(n_levels: int) -> QuantumOperator:
    """Adjoint of :func:`annihilation`."""
    return annihilation(n_levels).adjoint()


def number(n_levels: int) -> QuantumOperator:
    """Occupation-number operator ``diag(0, 1, ..., n_levels-1)``."""
    if n_levels < 2:
        raise ValueError(f"need at least 2 Fock levels, got {n_levels}")
    return QuantumOperator(np.diag(np.arange(n_levels, dtype=float)), (n_levels,))


def sigma_minus() -> QuantumOperator:
    """Qubit lowering operator |g><e| in the fixed (|g>, |e|) ordering."""
    return QuantumOperator(np.array([[0.0, 1.0], [0.0, 0.0]]), (2,))


def sigma_plus() -> QuantumOperator:
    """Qubit raising operator |e><g|."""
    return sigma_minus().adjoint()


def identity(dims) -> QuantumOperator:
    """Identity operator on the given subsystem dimensions."""
    dims = tuple(int(d) for d in dims)
    return QuantumOperator(np.eye(math.prod(dims)), dims)


def tensor(a: QuantumOperator, b: QuantumOperator) -> QuantumOperator:
    """Kronecker product; subsystem dimension lists concatenate."""
    return QuantumOperator(np.kron(a.data, b.data), a.dims + b.dims)


def embed(op: QuantumOperator, slot: int, dims) -> QuantumOperator:
    """Embed a single-subsystem operator into a tensor-product space.

    Acts as ``op`` on subsystem ``slot`` and as the identity on every other
    slot of ``dims``.
    """
    dims = tuple(int(d) for d in dims)
    if not 0 <= slot < len(dims):
        raise ValueError(f"slot {slot} out of range for {len(dims)} subsystems")
    if op.dims != (dims[slot],):
        raise ValueError(
            f"operator dims {op.dims} do not match slot {slot} of {dims}"
        )
    out = op if slot == 0 else identity(dims[:slot])
    if slot > 0:
        out = tensor(out, op)
    if slot + 1 < len(dims):
        out = tensor(out, identity(dims[slot + 1:]))
    return out


def expectation(rho: DensityMatrix, op: QuantumOperator) -> complex:
    """Tr(rho . op) with a dimension check."""
    if rho.dims != op.dims:
        raise ValueError(f"dimension mismatch: {rho.dims} vs {op.dims}")
    return complex(np.trace(rho.data @ op.data))


def basis_density(dims, levels) -> DensityMatrix:
    """Product basis state |levels><levels| on the given subsystem dims."""
    dims = tuple(int(d) for d in dims)
    levels = tuple(int(x) for x in levels)
    if len(levels) != len(dims):
        raise ValueError("one basis level per subsystem required")
    idx = 0
    for d, lv in zip(dims, levels):
        if not 0 <= lv < d:
            raise ValueError(f"level {lv} out of range for dimension {d}")
        idx = idx * d + lv
    data = np.zeros((math.prod(dims), math.prod(dims)), dtype=complex)
    data[idx, idx] = 1.0
    return DensityMatrix(data, dims)
