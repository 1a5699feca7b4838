"""Self-contained invariant suite behind the ``validate`` CLI subcommand.

Each check returns (name, passed, detail) and is independent of the test
suite, so a deployed installation can assert its own physics without pytest.
"""

from __future__ import annotations

import math

import numpy as np

from .liouvillian import (
    build_liouvillian,
    evolve,
    master_rhs,
    spectral_gap,
    steady_state,
    unvec,
    vec,
)
from .model import build_two_mode, frohlich_residual
from .observables import (
    contrast,
    dressed_spectrum,
    dressed_spectrum_numeric,
    hermitian_spectrum,
)
from .params import BareParams, SystemParams
from .sweeps import DIRECTION_THETA, solve_point

__all__ = ["run_all_checks"]

_OPERATING_DELTA = -10.2


def _operating_params(theta: float = 0.0) -> SystemParams:
    return SystemParams().with_delta(_OPERATING_DELTA).with_updates(theta=theta)


def _check_vacuum_dark_state():
    params = SystemParams(drive_scale=0.0).with_delta(3.0)
    liou = build_liouvillian(build_two_mode(params))
    ss = steady_state(liou)
    target = np.zeros_like(ss.rho.data)
    target[0, 0] = 1.0
    err = float(np.abs(ss.rho.data - target).max())
    return err <= 1e-10, f"|rho - |g,0><g,0|| = {err:.2e}"


def _check_trace_functional():
    liou = build_liouvillian(build_two_mode(_operating_params()))
    defect = liou.trace_defect()
    bound = 1e-9 * liou.scale()
    return defect <= bound, f"|tr . L| = {defect:.2e} (bound {bound:.2e})"


def _check_left_half_plane():
    liou = build_liouvillian(build_two_mode(_operating_params()))
    max_re = float(np.linalg.eigvals(liou.matrix).real.max())
    return max_re <= 1e-9, f"max Re eig = {max_re:.2e}"


def _check_vectorization():
    rng = np.random.default_rng(7)
    params = _operating_params(theta=0.7)
    model = build_two_mode(params)
    liou = build_liouvillian(model)
    d = model.dim
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = a + a.conj().T
    direct = master_rhs(model, rho)
    via_l = unvec(liou.matrix @ vec(rho), d)
    err = float(np.abs(direct - via_l).max() / np.abs(direct).max())
    return err <= 1e-12, f"vectorized vs direct action: rel {err:.2e}"


def _check_steady_state_invariants():
    details = []
    ok = True
    for direction, theta in DIRECTION_THETA.items():
        # steady_state enforces the residual bound itself; re-assert the
        # state-space invariants explicitly here.
        _, ss = solve_point(_operating_params(theta))
        diag = ss.rho.diagnostics()
        ok = ok and ss.rho.is_physical()
        details.append(
            f"{direction}: residual {ss.residual:.2e}, min eig {diag['min_eigenvalue']:.2e}"
        )
    return ok, "; ".join(details)


def _check_operating_point():
    fwd, _ = solve_point(_operating_params(DIRECTION_THETA["forward"]))
    bwd, _ = solve_point(_operating_params(DIRECTION_THETA["backward"]))
    ok = abs(fwd.g2 - 1.615) <= 0.05 * 1.615 and abs(bwd.g2 - 0.089) <= 0.10 * 0.089
    c = contrast(fwd.g2, bwd.g2)
    return ok, f"g2(fwd) = {fwd.g2:.4f}, g2(bwd) = {bwd.g2:.4f}, C = {c:.4f}"


def _check_evolution_oracle():
    params = _operating_params()
    model = build_two_mode(params)
    liou = build_liouvillian(model)
    ss = steady_state(liou)
    t_final = 20.0 / spectral_gap(liou)
    rho0 = np.zeros_like(ss.rho.data)
    rho0[0, 0] = 1.0
    from .operators import DensityMatrix

    evolved = evolve(model, DensityMatrix(rho0, model.dims), t_final)
    err = float(np.abs(evolved.data - ss.rho.data).max())
    return err <= 1e-6, f"|rho(T) - rho_ss| = {err:.2e} at T = {t_final:.1f}"


def _check_coherent_limit():
    params = SystemParams(lam=0.0, tau=0.0).with_delta(2.0)
    record, _ = solve_point(params)
    return abs(record.g2 - 1.0) <= 1e-6, f"g2 = {record.g2:.8f}"


def _check_reciprocity():
    base = SystemParams(tau=0.0).with_delta(-10.0)
    fwd, _ = solve_point(base.with_updates(theta=0.0))
    bwd, _ = solve_point(base.with_updates(theta=math.pi))
    rel = abs(fwd.g2 - bwd.g2) / fwd.g2
    return rel <= 1e-10, f"tau=0 direction difference: rel {rel:.2e}"


def _check_mirror_symmetry():
    worst = 0.0
    for delta in (-10.0, 4.0, 16.0):
        fwd, _ = solve_point(_operating_params(0.0).with_delta(delta))
        bwd, _ = solve_point(_operating_params(math.pi).with_delta(-delta))
        worst = max(worst, abs(fwd.g2 - bwd.g2) / fwd.g2)
    return worst <= 1e-4, f"max rel |g2(0,D) - g2(pi,-D)| = {worst:.2e}"


def _check_spectra_agreement():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(20):
        params = SystemParams(
            lam=rng.uniform(0.5, 20.0),
            tau=rng.uniform(0.0, 10.0),
            gamma_in=rng.uniform(0.0, 3.0),
            kappa_in=rng.uniform(0.0, 3.0),
            theta=rng.uniform(0.0, 2.0 * math.pi),
            omega_q=5000.0 + rng.uniform(-20.0, 20.0),
        )
        for ev in dressed_spectrum_numeric(params, 2):
            analytic = dressed_spectrum(params, ev.n)[0 if ev.branch == "-" else 1]
            worst = max(worst, abs(ev.value - analytic.value))
    return worst <= 1e-10, f"max |analytic - numeric| = {worst:.2e}"


def _check_hermitian_limit():
    params = SystemParams(tau=0.0, gamma_in=0.0, kappa_in=0.0,
                          omega_q=5003.0)
    worst = 0.0
    for n in (1, 2, 3):
        lo, hi = hermitian_spectrum(params, n)
        minus, plus = dressed_spectrum(params, n)
        worst = max(worst, abs(minus.value - lo), abs(plus.value - hi))
    return worst <= 1e-9, f"closed-limit deviation {worst:.2e}"


def _check_re_theta_independence():
    worst = 0.0
    for gamma in (1.0, 5.0, 9.0):
        base = SystemParams().with_gamma_diss(gamma)
        for n in (1, 2):
            fwd = dressed_spectrum(base.with_updates(theta=0.0), n)
            bwd = dressed_spectrum(base.with_updates(theta=math.pi), n)
            worst = max(
                worst,
                abs(fwd[0].value.real - bwd[0].value.real),
                abs(fwd[1].value.real - bwd[1].value.real),
            )
    return worst <= 1e-12, f"max branchwise |Re fwd - Re bwd| = {worst:.2e}"


def _check_frohlich():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(2):
        bare = BareParams(
            omega_q0=5000.0 + rng.uniform(-5, 5),
            omega_b0=5000.0 + rng.uniform(-5, 5),
            omega_c=6500.0,
            lambda_q=rng.uniform(20.0, 120.0),
            lambda_b=rng.uniform(20.0, 120.0),
        )
        worst = max(worst, frohlich_residual(bare, 6))
    return worst <= 1e-10, f"max interior residual {worst:.2e}"


def _check_contrast_bounds():
    rng = np.random.default_rng(5)
    vals = rng.uniform(0.0, 10.0, size=(50, 2)) + 1e-12
    cs = [contrast(a, b) for a, b in vals]
    ok = all(0.0 <= c <= 1.0 for c in cs)
    return ok, f"50 random pairs in [0, 1]: {ok}"


_CHECKS = (
    ("vacuum-dark-state", _check_vacuum_dark_state),
    ("trace-functional-null", _check_trace_functional),
    ("spectrum-left-half-plane", _check_left_half_plane),
    ("vectorization-consistency", _check_vectorization),
    ("steady-state-invariants", _check_steady_state_invariants),
    ("operating-point", _check_operating_point),
    ("evolution-oracle", _check_evolution_oracle),
    ("coherent-limit", _check_coherent_limit),
    ("tau0-reciprocity", _check_reciprocity),
    ("mirror-symmetry", _check_mirror_symmetry),
    ("spectra-analytic-vs-numeric", _check_spectra_agreement),
    ("spectra-hermitian-limit", _check_hermitian_limit),
    ("spectra-re-theta-independence", _check_re_theta_independence),
    ("frohlich-identity", _check_frohlich),
    ("contrast-bounds", _check_contrast_bounds),
)


def run_all_checks() -> list[tuple[str, bool, str]]:
    results = []
    for name, fn in _CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
