"""Acceptance suite: the eight operating criteria of the simulator.

Each test prints one `[P#] PASS/FAIL: detail` line (run pytest with -s to see
them inline).  Tolerances are pinned here and nowhere else.  The cavity
comparison (P7) runs the full 241-point slice against the 3136-dimensional
superoperator and dominates the suite's runtime (about ten minutes).
"""

import math
import time

import numpy as np

from magblock import (
    BareParams,
    CavityParams,
    SweepAxis,
    SweepSpec,
    SystemParams,
    basis_density,
    build_liouvillian,
    build_three_mode,
    build_two_mode,
    cmax_scan,
    dressed_spectrum,
    dressed_spectrum_numeric,
    evolve,
    fig5_compare,
    frohlich_residual,
    hermitian_spectrum,
    reduce_bare_params,
    solve_point,
    spectral_gap,
    steady_state,
)
from magblock.liouvillian import _spectral_radius_estimate
from magblock.presets import run_figure


def report(tag: str, ok: bool, detail: str) -> None:
    print(f"[{tag}] {'PASS' if ok else 'FAIL'}: {detail}", flush=True)
    assert ok, f"{tag}: {detail}"


def test_p1_operating_point_reproduction():
    start = time.perf_counter()
    (_, rows), = run_figure("3b", gammas=[5.0], max_workers=1)
    row = rows[0]
    elapsed = time.perf_counter() - start
    ok = (
        abs(row.c_max - 0.895) <= 0.02
        and abs(row.delta_max - (-10.2)) <= 0.2
        and abs(row.g2_forward - 1.615) <= 0.05 * 1.615
        and abs(row.g2_backward - 0.089) <= 0.10 * 0.089
        and elapsed < 30.0
    )
    report(
        "P1", ok,
        f"C_max={row.c_max:.4f} at delta={row.delta_max:.2f}, "
        f"g2(fwd)={row.g2_forward:.4f}, g2(bwd)={row.g2_backward:.4f}, "
        f"runtime {elapsed:.1f}s (single-threaded)",
    )


def test_p2_mirror_symmetry():
    deltas = np.linspace(-20.0, 20.0, 21)
    fwd, bwd = {}, {}
    for delta in deltas:
        p = SystemParams().with_delta(float(delta))
        fwd[float(delta)], _ = solve_point(p.with_updates(theta=0.0), check_kernel=False)
        bwd[float(delta)], _ = solve_point(p.with_updates(theta=math.pi), check_kernel=False)
    worst = max(
        abs(fwd[d].g2 - bwd[-d].g2) / abs(fwd[d].g2) for d in fwd
    )
    report("P2", worst <= 1e-4, f"max rel |g2(0,D) - g2(pi,-D)| = {worst:.2e} over 21x2 grid")


def test_p3_monotone_contrast():
    rows = cmax_scan(SystemParams(), [float(g) for g in range(1, 11)])
    cmaxes = [r.c_max for r in rows]
    nondecreasing = all(b >= a for a, b in zip(cmaxes, cmaxes[1:]))
    strong = all(r.c_max > 0.8 for r in rows if r.gamma_diss >= 2.0)
    located = all(8.0 <= abs(r.delta_max) <= 12.0 for r in rows)
    ok = nondecreasing and strong and located
    report(
        "P3", ok,
        f"C_max(1..10) = {', '.join(f'{c:.3f}' for c in cmaxes)}; "
        f"nondecreasing={nondecreasing}, >0.8 for Gamma>=2: {strong}, "
        f"|delta_max| in [8,12]: {located}",
    )


def test_p4_spectra_agreement():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        params = SystemParams(
            lam=rng.uniform(0.5, 20.0),
            tau=rng.uniform(0.0, 10.0),
            mu=rng.uniform(0.2, 2.0),
            nu=rng.uniform(0.2, 2.0),
            gamma_in=rng.uniform(0.0, 3.0),
            kappa_in=rng.uniform(0.0, 3.0),
            theta=rng.uniform(0.0, 2.0 * math.pi),
            omega_q=5000.0 + rng.uniform(-25.0, 25.0),
        )
        for ev in dressed_spectrum_numeric(params, 3):
            pair = dressed_spectrum(params, ev.n)
            analytic = pair[0] if ev.branch == "-" else pair[1]
            worst = max(worst, abs(ev.value - analytic.value))

    # branchwise Re parts do not depend on the port for theta in {0, pi}
    re_worst = 0.0
    for gamma in (1.0, 3.0, 5.0, 8.0, 10.0):
        base = SystemParams().with_gamma_diss(gamma)
        for n in (1, 2):
            f = dressed_spectrum(base.with_updates(theta=0.0), n)
            b = dressed_spectrum(base.with_updates(theta=math.pi), n)
            re_worst = max(
                re_worst,
                abs(f[0].value.real - b[0].value.real),
                abs(f[1].value.real - b[1].value.real),
            )

    # closed-system limit reduces to the real dressed ladder
    closed = SystemParams(tau=0.0, gamma_in=0.0, kappa_in=0.0, omega_q=5006.0)
    limit_worst = 0.0
    for n in (1, 2, 3):
        lo, hi = hermitian_spectrum(closed, n)
        minus, plus = dressed_spectrum(closed, n)
        limit_worst = max(limit_worst, abs(minus.value - lo), abs(plus.value - hi))

    ok = worst <= 1e-10 and re_worst <= 1e-12 and limit_worst <= 1e-10
    report(
        "P4", ok,
        f"analytic vs numeric (100 random): {worst:.2e}; "
        f"Re port-independence: {re_worst:.2e}; closed limit: {limit_worst:.2e}",
    )


def _solver_contract(params, cavity=None, dt=None, gap_params=None):
    """Steady-state invariants plus the RK4 long-time cross-check."""
    model = build_three_mode(params, cavity) if cavity else build_two_mode(params)
    liou = build_liouvillian(model)
    ss = steady_state(liou, check_kernel=liou.dim <= 256)
    diag = ss.rho.diagnostics()
    assert ss.residual <= 1e-8 * max(1.0, liou.scale())
    assert diag["hermiticity"] <= 1e-12
    assert diag["trace"] <= 1e-10
    assert diag["min_eigenvalue"] >= -1e-9
    gap_model = build_two_mode(gap_params) if gap_params is not None else model
    gap_liou = liou if gap_params is None else build_liouvillian(gap_model)
    t_final = 20.0 / spectral_gap(gap_liou)
    rho0 = basis_density(model.dims, (0,) * len(model.dims))
    out = evolve(model, rho0, t_final, dt=dt)
    return float(np.abs(out.data - ss.rho.data).max())


def test_p5_solver_soundness():
    details = []
    worst = 0.0
    # representative operating points of the two-mode preset families
    for label, params in (
        ("slice fwd", SystemParams().with_delta(-10.2)),
        ("slice bwd", SystemParams().with_delta(-10.2).with_updates(theta=math.pi)),
        ("heatmap interior", SystemParams().with_gamma_diss(2.0).with_delta(-5.0)),
        ("coupling scan", SystemParams().with_delta(10.0)),
    ):
        err = _solver_contract(params)
        worst = max(worst, err)
        details.append(f"{label}: {err:.1e}")
    # cavity-model representative (reduced stiffness keeps RK4 tractable)
    p3 = SystemParams(n_fock=5)
    cavity = CavityParams(omega_c=5050.0, n_fock_c=3)
    model3 = build_three_mode(p3, cavity)
    err = _solver_contract(
        p3, cavity, dt=0.9 / _spectral_radius_estimate(model3), gap_params=p3
    )
    worst = max(worst, err)
    details.append(f"cavity model: {err:.1e}")

    # every preset row must have solved within contract (fast grids)
    bad_rows = 0
    total_rows = 0
    for name in ("2a", "2b", "2c", "3a", "4"):
        for _, payload in run_figure(name, fast=True):
            records = getattr(payload, "records", None)
            if records is None:
                continue
            for record in records:
                for res in record.results:
                    total_rows += 1
                    if res.error is not None or not math.isfinite(res.residual):
                        bad_rows += 1
    ok = worst <= 1e-6 and bad_rows == 0
    report(
        "P5", ok,
        f"RK4 vs direct solve max |diff| {worst:.1e} ({'; '.join(details)}); "
        f"{total_rows} preset rows, {bad_rows} solver failures",
    )


def test_p6_physics_limits():
    # waveguide off: direction independence to rounding
    recip_worst = 0.0
    for delta in (-10.2, 0.5, 10.2):
        base = SystemParams(tau=0.0).with_delta(delta)
        f, _ = solve_point(base.with_updates(theta=0.0), check_kernel=False)
        b, _ = solve_point(base.with_updates(theta=math.pi), check_kernel=False)
        recip_worst = max(recip_worst, abs(f.g2 - b.g2) / f.g2)

    # linear driven damped magnon: Poissonian statistics
    coherent, _ = solve_point(SystemParams(lam=0.0, tau=0.0).with_delta(2.0))
    coherent_err = abs(coherent.g2 - 1.0)

    # drive insensitivity and truncation convergence over the full slice
    axis_values = np.linspace(-30.0, 30.0, 241)
    drive_worst = 0.0
    trunc_worst = 0.0
    for theta in (0.0, math.pi):
        for delta in axis_values:
            base = SystemParams().with_delta(float(delta)).with_updates(theta=theta)
            ref, _ = solve_point(base, check_kernel=False)
            half, _ = solve_point(
                base.with_updates(drive_scale=base.drive_scale / 2.0),
                check_kernel=False,
            )
            fine, _ = solve_point(base.with_updates(n_fock=9), check_kernel=False)
            drive_worst = max(drive_worst, abs(half.g2 - ref.g2) / ref.g2)
            trunc_worst = max(trunc_worst, abs(fine.g2 - ref.g2) / ref.g2)

    ok = (
        recip_worst <= 1e-10
        and coherent_err <= 1e-6
        and drive_worst < 0.01
        and trunc_worst < 1e-3
    )
    report(
        "P6", ok,
        f"tau=0 reciprocity {recip_worst:.1e}; coherent |g2-1| {coherent_err:.1e}; "
        f"drive halving {drive_worst:.2e} (<1%); truncation 7->9 {trunc_worst:.2e} (<0.1%)",
    )


def test_p7_cavity_extension_classification():
    # Known red: the two models place a far-wing unity crossing on opposite
    # sides of the on-grid point delta = -24.0, offset by ~0.02 in detuning,
    # where both give g2 = 1 within 1.3e-4 (drive-independent; persists for
    # every sanctioned cavity-frequency choice).  The sign-of-log test is
    # ill-posed at a crossing; everywhere else the classification agrees.
    spec = SweepSpec(
        SystemParams(),
        (SweepAxis("delta", -30.0, 30.0, 241),),
        ("forward", "backward"),
    )
    two, three = fig5_compare(spec, CavityParams(beta_in=1.0, zeta=1.0))
    mismatches = []
    checked = 0
    for a, b in zip(two.records, three.records):
        for ra, rb in zip(a.results, b.results):
            checked += 1
            if (ra.g2 > 1.0) != (rb.g2 > 1.0):
                mismatches.append((a.delta, ra.theta, ra.g2, rb.g2))
    detail = (
        f"classification identical at {checked - len(mismatches)}/{checked} "
        f"slice points (both directions)"
    )
    if mismatches:
        worst = "; ".join(
            f"delta={d:g}, theta={t:.2f}: g2 two-mode {a:.6f} vs cavity {b:.6f}"
            for d, t, a, b in mismatches
        )
        detail += f"; knife-edge crossings: {worst}"
    ok = not mismatches and checked == 482
    report("P7", ok, detail)


def test_p8_cavity_elimination_identity():
    rng = np.random.default_rng(77)
    residuals = []
    for _ in range(3):
        bare = BareParams(
            omega_q0=5000.0 + rng.uniform(-10.0, 10.0),
            omega_b0=5000.0 + rng.uniform(-10.0, 10.0),
            omega_c=rng.uniform(3600.0, 4200.0),
            lambda_q=rng.uniform(20.0, 70.0),
            lambda_b=rng.uniform(20.0, 70.0),
        )
        residuals.append(frohlich_residual(bare, 6))
    identity_ok = all(r <= 1e-10 for r in residuals)

    formula_worst = 0.0
    for _ in range(3):
        wq0 = 5000.0 + rng.uniform(-10.0, 10.0)
        wb0 = 5000.0 + rng.uniform(-10.0, 10.0)
        wc = rng.uniform(3600.0, 4200.0)
        lq, lb = rng.uniform(10.0, 70.0), rng.uniform(10.0, 70.0)
        # direct evaluation of the exchange coupling from the raw inputs
        expected = lq * lb / (2.0 * (wq0 - wc)) + lq * lb / (2.0 * (wb0 - wc))
        got = reduce_bare_params(BareParams(wq0, wb0, wc, lq, lb)).lam
        formula_worst = max(formula_worst, abs(got - expected))
    ok = identity_ok and formula_worst <= 1e-12 * 70.0**2
    report(
        "P8", ok,
        f"interior residuals {', '.join(f'{r:.1e}' for r in residuals)}; "
        f"coupling formula deviation {formula_worst:.1e}",
    )
