"""Parameter-sweep engine: steady-state grids, contrast maximization, pairing.

Sweeps are embarrassingly parallel over grid points.  Results are always
gathered by grid index, so the output is byte-identical for any worker count
(including the serial default).  Per-point solver failures are recorded in
the affected row and flagged, never fatal; structural errors (dimension
guard, invalid specs) propagate.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .liouvillian import (
    DegenerateKernelError,
    NonConvergentError,
    SteadyState,
    build_liouvillian,
    steady_state,
)
from .model import build_three_mode, build_two_mode
from .observables import (
    CorrelationRecord,
    VacuumStateError,
    contrast,
    g2_zero,
    occupation,
)
from .params import CavityParams, SystemParams

__all__ = [
    "DIRECTION_THETA",
    "SweepAxis",
    "SweepSpec",
    "DirectionResult",
    "SweepRecord",
    "SweepResult",
    "CmaxRow",
    "solve_point",
    "run_sweep",
    "cmax_scan",
    "fig5_compare",
]

DIRECTION_THETA = {"forward": 0.0, "backward": math.pi}

ALLOWED_AXES = ("delta", "gamma_diss", "xi", "theta")

# Per-point failures that are recorded in-row instead of aborting the sweep.
_POINT_ERRORS = (NonConvergentError, DegenerateKernelError, VacuumStateError)


def _workers(max_workers: int | None) -> int:
    if max_workers is not None:
        return max(1, int(max_workers))
    env = os.environ.get("SIM_THREADS", "")
    return max(1, int(env)) if env.strip() else 1


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter with an inclusive linear grid."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in ALLOWED_AXES:
            raise ValueError(f"unknown sweep axis {self.name!r}; use one of {ALLOWED_AXES}")
        if self.count < 1:
            raise ValueError(f"axis {self.name!r} needs at least 1 point")
        if self.count == 1 and self.start != self.stop:
            raise ValueError("a single-point axis needs start == stop")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Base parameters plus one or two axes and the drive directions."""

    base: SystemParams
    axes: tuple[SweepAxis, ...]
    directions: tuple[str, ...] = ("forward", "backward")
    cavity: CavityParams | None = None

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("a sweep needs one or two axes")
        names = [axis.name for axis in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("sweep axes must be distinct")
        if not self.directions:
            raise ValueError("at least one drive direction required")
        for d in self.directions:
            if d not in DIRECTION_THETA:
                raise ValueError(f"unknown direction {d!r}")
        if len(set(self.directions)) != len(self.directions):
            raise ValueError("duplicate directions")
        if "theta" in names and self.directions != ("forward",):
            raise ValueError(
                "a theta axis fixes the port phase per row; use directions=('forward',)"
            )

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(axis.name for axis in self.axes)

    def grid(self) -> list[tuple[float, ...]]:
        """Grid points in row-major order over the axes."""
        return list(itertools.product(*[axis.values for axis in self.axes]))


@dataclass(frozen=True)
class DirectionResult:
    """Steady-state observables for one drive direction at one grid point."""

    theta: float
    g2: float
    occupation: float
    residual: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: resolved (delta, Gamma), per-direction results, contrast."""

    delta: float
    gamma_diss: float
    axis_values: tuple[float, ...]
    results: tuple[DirectionResult, ...]
    contrast: float


@dataclass(frozen=True)
class SweepResult:
    """All records of a sweep plus the self-describing metadata block."""

    spec: SweepSpec
    records: tuple[SweepRecord, ...]
    meta: dict

    def column(self, direction_index: int, field: str) -> np.ndarray:
        return np.array([getattr(r.results[direction_index], field) for r in self.records])


def solve_point(
    params: SystemParams,
    cavity: CavityParams | None = None,
    check_kernel: bool | None = None,
) -> tuple[CorrelationRecord, SteadyState]:
    """One steady-state solve: build the model, solve, read the statistics."""
    model = build_three_mode(params, cavity) if cavity else build_two_mode(params)
    ss = steady_state(build_liouvillian(model), check_kernel=check_kernel)
    record = CorrelationRecord(
        theta=params.theta,
        delta=params.delta,
        gamma_diss=params.gamma_diss,
        g2=g2_zero(ss.rho),
        occupation=occupation(ss.rho),
    )
    return record, ss


def _apply_axis(params: SystemParams, name: str, value: float) -> SystemParams:
    if name == "delta":
        return params.with_delta(value)
    if name == "gamma_diss":
        return params.with_gamma_diss(value)
    if name == "xi":
        # Sweeping the drive strength engages the waveguide-derived
        # amplitudes sqrt(gamma_ex) xi, sqrt(kappa_ex) xi.
        return params.with_updates(xi=value, drive_scale=None)
    if name == "theta":
        return params.with_updates(theta=value)
    raise ValueError(f"unknown sweep axis {name!r}")


def _resolve_point(spec: SweepSpec, values: tuple[float, ...]) -> SystemParams:
    params = spec.base
    for name, value in zip(spec.axis_names, values):
        params = _apply_axis(params, name, value)
    return params


def _solve_record(spec: SweepSpec, values: tuple[float, ...], first: bool) -> SweepRecord:
    params = _resolve_point(spec, values)
    theta_swept = "theta" in spec.axis_names
    results = []
    for direction in spec.directions:
        p = params if theta_swept else params.with_updates(theta=DIRECTION_THETA[direction])
        try:
            record, ss = solve_point(p, spec.cavity, check_kernel=bool(first))
            results.append(DirectionResult(p.theta, record.g2, record.occupation, ss.residual))
        except _POINT_ERRORS as exc:
            results.append(
                DirectionResult(p.theta, math.nan, math.nan, math.nan,
                                error=f"{type(exc).__name__}: {exc}")
            )
    if len(results) == 2 and all(r.ok for r in results):
        ratio = contrast(results[0].g2, results[1].g2)
    else:
        ratio = math.nan
    return SweepRecord(
        delta=params.delta,
        gamma_diss=params.gamma_diss,
        axis_values=values,
        results=tuple(results),
        contrast=ratio,
    )


def _sweep_meta(spec: SweepSpec, extra: dict | None = None) -> dict:
    from ._version import __version__
    from .liouvillian import RESIDUAL_TOL

    meta = {
        "tool": "magblock",
        "version": __version__,
        "kind": "sweep",
        "model": "three_mode" if spec.cavity else "two_mode",
        "params": {
            "omega_q": spec.base.omega_q,
            "omega_b": spec.base.omega_b,
            "lambda": spec.base.lam,
            "gamma_in": spec.base.gamma_in,
            "kappa_in": spec.base.kappa_in,
            "tau": spec.base.tau,
            "mu": spec.base.mu,
            "nu": spec.base.nu,
            "theta": spec.base.theta,
            "phi": spec.base.phi,
            "xi": spec.base.xi,
            "omega_d": spec.base.omega_d,
            "drive_scale": spec.base.drive_scale,
            "n_fock": spec.base.n_fock,
        },
        "cavity": None
        if spec.cavity is None
        else {
            "omega_c": spec.cavity.omega_c,
            "beta_in": spec.cavity.beta_in,
            "zeta": spec.cavity.zeta,
            "n_fock_c": spec.cavity.n_fock_c,
        },
        "axes": [
            {"name": a.name, "start": a.start, "stop": a.stop, "count": a.count}
            for a in spec.axes
        ],
        "directions": list(spec.directions),
        "solver": {"method": "trace-replacement", "residual_tol": RESIDUAL_TOL},
    }
    if extra:
        meta.update(extra)
    return meta


def run_sweep(spec: SweepSpec, max_workers: int | None = None,
              meta_extra: dict | None = None) -> SweepResult:
    """Solve every grid point for every direction, row-major, deterministic.

    The kernel-uniqueness check runs on the first grid point only; every
    solve still enforces the residual/trace/positivity contracts.
    """
    grid = spec.grid()
    workers = _workers(max_workers)
    if workers == 1:
        records = [_solve_record(spec, values, i == 0) for i, values in enumerate(grid)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(
                pool.map(lambda iv: _solve_record(spec, iv[1], iv[0] == 0), enumerate(grid))
            )
    return SweepResult(spec, tuple(records), _sweep_meta(spec, meta_extra))


@dataclass(frozen=True)
class CmaxRow:
    """Maximized contrast at one dissipative coupling."""

    gamma_diss: float
    c_max: float
    delta_max: float
    g2_forward: float
    g2_backward: float
    occupation_forward: float
    occupation_backward: float
    residual_forward: float
    residual_backward: float


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Coarse grid spacing must resolve the contrast peaks near +-lam.
MAX_COARSE_RESOLUTION = 0.25
DEFAULT_REFINE_TOL = 0.05
# Mirror-symmetric landscapes have two equal maximizers at +-delta, split
# only by the finite-drive asymmetry (~1e-5 relative); coarse values within
# this band count as tied and resolve to the most negative detuning.
_TIE_REL = 1e-4


def cmax_scan(
    base: SystemParams,
    gamma_grid,
    delta_window: tuple[float, float] = (-20.0, 20.0),
    coarse_count: int = 161,
    refine_tol: float = DEFAULT_REFINE_TOL,
    max_workers: int | None = None,
) -> list[CmaxRow]:
    """Maximize the contrast over detuning for each dissipative coupling.

    Per Gamma: evaluate C(delta) on a coarse grid over ``delta_window``
    (spacing at most 0.25), then golden-section refine around the coarse
    maximizer until the bracket is below ``refine_tol``.  Returns the best
    evaluated point per Gamma.
    """
    lo, hi = float(delta_window[0]), float(delta_window[1])
    if hi <= lo:
        raise ValueError("empty delta window")
    if lo > -2.0 * base.lam or hi < 2.0 * base.lam:
        raise ValueError(f"delta window must cover +-2*lam = +-{2.0 * base.lam}")
    if coarse_count < 2 or (hi - lo) / (coarse_count - 1) > MAX_COARSE_RESOLUTION:
        raise ValueError(
            f"coarse grid must resolve {MAX_COARSE_RESOLUTION} over {delta_window}"
        )
    workers = _workers(max_workers)
    rows = []
    for gamma in gamma_grid:
        params = base.with_gamma_diss(float(gamma))
        cache: dict[float, tuple] = {}

        def evaluate(delta: float) -> float:
            if delta not in cache:
                fwd, ss_f = solve_point(
                    params.with_delta(delta).with_updates(theta=DIRECTION_THETA["forward"]),
                    check_kernel=False,
                )
                bwd, ss_b = solve_point(
                    params.with_delta(delta).with_updates(theta=DIRECTION_THETA["backward"]),
                    check_kernel=False,
                )
                cache[delta] = (
                    contrast(fwd.g2, bwd.g2),
                    fwd.g2, bwd.g2,
                    fwd.occupation, bwd.occupation,
                    ss_f.residual, ss_b.residual,
                )
            return cache[delta][0]

        coarse = np.linspace(lo, hi, coarse_count)
        if workers == 1:
            coarse_vals = [evaluate(float(d)) for d in coarse]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                coarse_vals = list(pool.map(lambda d: evaluate(float(d)), coarse))
        best = max(coarse_vals)
        ties = [float(d) for d, c in zip(coarse, coarse_vals) if c >= best * (1.0 - _TIE_REL)]
        center = min(ties)
        step = (hi - lo) / (coarse_count - 1)
        a, b = max(lo, center - step), min(hi, center + step)

        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        fc, fd = evaluate(c), evaluate(d)
        while (b - a) > refine_tol:
            if fc >= fd:
                b, d, fd = d, c, fc
                c = b - _INVPHI * (b - a)
                fc = evaluate(c)
            else:
                a, c, fc = c, d, fd
                d = a + _INVPHI * (b - a)
                fd = evaluate(d)

        delta_best = min(cache, key=lambda k: (-cache[k][0], k))
        cvals = cache[delta_best]
        rows.append(
            CmaxRow(
                gamma_diss=float(gamma),
                c_max=cvals[0],
                delta_max=delta_best,
                g2_forward=cvals[1],
                g2_backward=cvals[2],
                occupation_forward=cvals[3],
                occupation_backward=cvals[4],
                residual_forward=cvals[5],
                residual_backward=cvals[6],
            )
        )
    return rows


def fig5_compare(
    slice_spec: SweepSpec,
    cavity: CavityParams,
    max_workers: int | None = None,
) -> tuple[SweepResult, SweepResult]:
    """Run the two-mode and cavity-extended models on an identical slice.

    Returns the paired (two_mode, three_mode) results; the cavity model goes
    through the same dimension guard as any other build.
    """
    if len(slice_spec.axes) != 1 or slice_spec.axes[0].name != "delta":
        raise ValueError("the comparison expects a single detuning axis")
    two = run_sweep(replace(slice_spec, cavity=None), max_workers=max_workers)
    three = run_sweep(replace(slice_spec, cavity=cavity), max_workers=max_workers)
    return two, three
