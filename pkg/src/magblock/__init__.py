"""Steady-state simulator for dissipation-induced nonreciprocal magnon blockade.

A driven superconducting qubit exchanges excitations with a magnon mode both
coherently (rate ``lam``) and through a shared waveguide channel whose jump
operator carries the drive-port phase.  The package builds the rotating-frame
master equation, solves for the steady state, and computes the
direction-dependent second-order correlation g2(0), the bidirectional
contrast ratio, and the complex dressed-level spectra behind them.
"""

from ._version import __version__
from .config import ConfigError, RunConfig, parse_config, serialize_config
from .liouvillian import (
    DegenerateKernelError,
    DimensionLimitError,
    Liouvillian,
    NonConvergentError,
    StepSizeTooLargeError,
    SteadyState,
    build_liouvillian,
    evolve,
    spectral_gap,
    steady_state,
)
from .model import (
    LindbladModel,
    build_three_mode,
    build_two_mode,
    effective_hamiltonian,
    frohlich_residual,
    reduce_bare_params,
)
from .observables import (
    CorrelationRecord,
    DressedEigenvalue,
    VacuumStateError,
    contrast,
    dressed_spectrum,
    dressed_spectrum_numeric,
    g2_zero,
    hermitian_spectrum,
    occupation,
)
from .operators import (
    DensityMatrix,
    QuantumOperator,
    annihilation,
    basis_density,
    creation,
    embed,
    expectation,
    identity,
    number,
    sigma_minus,
    sigma_plus,
    tensor,
)
from .params import BareParams, CavityParams, SystemParams
from .sweeps import (
    CmaxRow,
    SweepAxis,
    SweepRecord,
    SweepResult,
    SweepSpec,
    cmax_scan,
    fig5_compare,
    run_sweep,
    solve_point,
)

__all__ = [
    "__version__",
    "QuantumOperator", "DensityMatrix", "annihilation", "creation", "number",
    "sigma_minus", "sigma_plus", "identity", "tensor", "embed", "expectation",
    "basis_density",
    "SystemParams", "CavityParams", "BareParams",
    "LindbladModel", "build_two_mode", "build_three_mode",
    "effective_hamiltonian", "reduce_bare_params", "frohlich_residual",
    "Liouvillian", "SteadyState", "build_liouvillian", "steady_state",
    "evolve", "spectral_gap",
    "DimensionLimitError", "DegenerateKernelError", "NonConvergentError",
    "StepSizeTooLargeError", "VacuumStateError",
    "CorrelationRecord", "DressedEigenvalue", "occupation", "g2_zero",
    "contrast", "hermitian_spectrum", "dressed_spectrum",
    "dressed_spectrum_numeric",
    "SweepAxis", "SweepSpec", "SweepRecord", "SweepResult", "CmaxRow",
    "solve_point", "run_sweep", "cmax_scan", "fig5_compare",
    "RunConfig", "ConfigError", "parse_config", "serialize_config",
]
