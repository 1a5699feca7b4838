"""Figure-reproduction presets.

Each preset returns a list of (csv_stem, payload) outputs; payloads are
SweepResult, cmax rows or spectra tables ready for the CSV writers.  ``fast``
variants keep the identical structure and parameter ties on coarser grids,
for smoke runs and the plotting pipeline's tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .observables import dressed_spectrum
from .params import CavityParams, SystemParams
from .sweeps import (
    SweepAxis,
    SweepSpec,
    SweepResult,
    cmax_scan,
    fig5_compare,
    run_sweep,
)

__all__ = ["SpectraRecord", "FIGURES", "run_figure", "spectra_table"]

FIG2C_GAMMA = 5.0

# The standard slice: full detuning range at Gamma = 5, both directions.
def _slice_axis(fast: bool) -> SweepAxis:
    return SweepAxis("delta", -30.0, 30.0, 61 if fast else 241)


def _grid_axes(fast: bool) -> tuple[SweepAxis, SweepAxis]:
    if fast:
        return (SweepAxis("gamma_diss", 0.0, 10.0, 11), SweepAxis("delta", -30.0, 30.0, 31))
    return (SweepAxis("gamma_diss", 0.0, 10.0, 41), SweepAxis("delta", -30.0, 30.0, 121))


def _base(gamma: float | None = None) -> SystemParams:
    params = SystemParams()
    return params if gamma is None else params.with_gamma_diss(gamma)


@dataclass(frozen=True)
class SpectraRecord:
    """One dressed-level row: coupling, port phase, level and complex value."""

    gamma_diss: float
    theta: float
    n: int
    branch: str
    re: float
    im: float


def spectra_table(
    base: SystemParams,
    gammas,
    thetas=(0.0, math.pi),
    n_values=(1, 2),
) -> list[SpectraRecord]:
    """Analytic dressed spectra over a coupling grid, under the tau = Gamma tie."""
    rows = []
    for gamma in gammas:
        params = base.with_gamma_diss(float(gamma))
        for theta in thetas:
            p = params.with_updates(theta=float(theta))
            for n in n_values:
                for ev in dressed_spectrum(p, n):
                    rows.append(
                        SpectraRecord(
                            float(gamma), float(theta), n, ev.branch,
                            ev.value.real, ev.value.imag,
                        )
                    )
    return rows


def _heatmap(direction: str, fast: bool, workers) -> list[tuple[str, object]]:
    spec = SweepSpec(_base(), _grid_axes(fast), directions=(direction,))
    name = "fig2a" if direction == "forward" else "fig2b"
    return [(name, run_sweep(spec, workers, {"preset": name}))]


def _fig2c(fast: bool, workers) -> list[tuple[str, object]]:
    axis = _slice_axis(fast)
    main = SweepSpec(_base(FIG2C_GAMMA), (axis,))
    reference = SweepSpec(_base().with_updates(tau=0.0), (axis,))
    return [
        ("fig2c", run_sweep(main, workers, {"preset": "fig2c"})),
        ("fig2c_reference", run_sweep(reference, workers, {"preset": "fig2c_reference"})),
    ]


def _fig3a(fast: bool, workers) -> list[tuple[str, object]]:
    spec = SweepSpec(_base(), _grid_axes(fast))
    return [("fig3a", run_sweep(spec, workers, {"preset": "fig3a"}))]


def _fig3b(fast: bool, workers, gammas=None) -> list[tuple[str, object]]:
    # fast mode trims the coupling grid; the detuning resolution contract of
    # the scan itself is not negotiable
    if gammas is None:
        gammas = [2.0, 5.0] if fast else [float(g) for g in range(1, 11)]
    rows = cmax_scan(_base(), gammas, (-20.0, 20.0), max_workers=workers)
    return [("fig3b", rows)]


def _fig4(fast: bool, workers) -> list[tuple[str, object]]:
    count = 21 if fast else 101
    gammas = np.linspace(0.0, 10.0, count)
    spectra = spectra_table(_base(), gammas)
    g2_spec = SweepSpec(
        _base().with_delta(10.0),
        (SweepAxis("gamma_diss", 0.0, 10.0, 21 if fast else 81),),
    )
    return [
        ("fig4_spectra", spectra),
        ("fig4_g2", run_sweep(g2_spec, workers, {"preset": "fig4_g2"})),
    ]


def _fig5(fast: bool, workers) -> list[tuple[str, object]]:
    axis = SweepAxis("delta", -30.0, 30.0, 21 if fast else 241)
    spec = SweepSpec(_base(FIG2C_GAMMA), (axis,))
    two, three = fig5_compare(spec, CavityParams(), max_workers=workers)
    two = SweepResult(two.spec, two.records, {**two.meta, "preset": "fig5_two_mode"})
    three = SweepResult(three.spec, three.records, {**three.meta, "preset": "fig5_three_mode"})
    return [("fig5_two_mode", two), ("fig5_three_mode", three)]


FIGURES = ("2a", "2b", "2c", "3a", "3b", "4", "5")


def run_figure(name: str, fast: bool = False, max_workers: int | None = None,
               gammas=None) -> list[tuple[str, object]]:
    """Run one figure preset; returns (csv_stem, payload) pairs."""
    if name == "2a":
        return _heatmap("forward", fast, max_workers)
    if name == "2b":
        return _heatmap("backward", fast, max_workers)
    if name == "2c":
        return _fig2c(fast, max_workers)
    if name == "3a":
        return _fig3a(fast, max_workers)
    if name == "3b":
        return _fig3b(fast, max_workers, gammas)
    if name == "4":
        return _fig4(fast, max_workers)
    if name == "5":
        return _fig5(fast, max_workers)
    raise ValueError(f"unknown figure {name!r}; choose from {FIGURES}")
