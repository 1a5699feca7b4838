import json
import math
import re

import pytest

from magblock import (
    CavityParams,
    SweepAxis,
    SweepSpec,
    SystemParams,
    cmax_scan,
    fig5_compare,
    run_sweep,
    solve_point,
)
from magblock.csvio import SWEEP_HEADER, write_sweep_csv


def small_slice(count=5, directions=("forward", "backward"), tau=5.0):
    base = SystemParams().with_gamma_diss(tau) if tau else SystemParams(tau=0.0)
    return SweepSpec(base, (SweepAxis("delta", -12.0, 12.0, count),), directions)


class TestRunSweep:
    def test_single_point_grid_matches_direct_solve(self):
        spec = SweepSpec(
            SystemParams(),
            (SweepAxis("delta", -10.2, -10.2, 1),),
            directions=("forward",),
        )
        result = run_sweep(spec)
        assert len(result.records) == 1
        direct, ss = solve_point(
            SystemParams().with_delta(-10.2).with_updates(theta=0.0)
        )
        row = result.records[0].results[0]
        assert row.g2 == direct.g2
        assert row.occupation == direct.occupation

    def test_row_major_order_forward_first(self):
        spec = SweepSpec(
            SystemParams(),
            (SweepAxis("gamma_diss", 2.0, 4.0, 2), SweepAxis("delta", -5.0, 5.0, 3)),
        )
        result = run_sweep(spec)
        assert len(result.records) == 6
        gammas = [r.gamma_diss for r in result.records]
        assert gammas == [2.0, 2.0, 2.0, 4.0, 4.0, 4.0]
        for record in result.records:
            assert record.results[0].theta == 0.0
            assert record.results[1].theta == math.pi

    def test_axis_transposition_invariance(self):
        axes = (SweepAxis("delta", -6.0, 6.0, 3), SweepAxis("gamma_diss", 3.0, 5.0, 2))
        a = run_sweep(SweepSpec(SystemParams(), axes, ("forward",)))
        b = run_sweep(SweepSpec(SystemParams(), axes[::-1], ("forward",)))
        lookup = {(r.delta, r.gamma_diss): r.results[0].g2 for r in b.records}
        for record in a.records:
            assert lookup[(record.delta, record.gamma_diss)] == record.results[0].g2

    def test_reciprocal_limit_contrast_is_zero(self):
        result = run_sweep(small_slice(count=4, tau=0.0))
        for record in result.records:
            assert record.contrast == 0.0
            assert record.results[0].g2 == record.results[1].g2

    def test_crossing_structure_near_resonances(self):
        # forward drive: super-Poissonian near delta = -lam, blockade near +lam
        for delta, fwd_super in ((-10.2, True), (10.2, False)):
            record = run_sweep(
                SweepSpec(SystemParams(), (SweepAxis("delta", delta, delta, 1),))
            ).records[0]
            fwd, bwd = record.results
            assert (fwd.g2 > 1.0) == fwd_super
            assert (bwd.g2 > 1.0) == (not fwd_super)

    def test_unity_boundary_structure(self):
        # with the waveguide off, both resonance neighborhoods are
        # sub-Poissonian (no unity crossing); at Gamma = 2 the forward drive
        # is super-Poissonian near -lam and blockaded near +lam
        offresonant = SystemParams(tau=0.0)
        for delta in (-11.0, -10.0, -9.0, 9.0, 10.0, 11.0):
            record, _ = solve_point(offresonant.with_delta(delta), check_kernel=False)
            assert record.g2 < 1.0
        coupled = SystemParams().with_gamma_diss(2.0)
        lower, _ = solve_point(coupled.with_delta(-10.0), check_kernel=False)
        upper, _ = solve_point(coupled.with_delta(10.0), check_kernel=False)
        assert lower.g2 > 1.0
        assert upper.g2 < 1.0

    def test_thread_count_does_not_change_results(self):
        spec = small_slice(count=4)
        serial = run_sweep(spec, max_workers=1)
        threaded = run_sweep(spec, max_workers=4)
        for a, b in zip(serial.records, threaded.records):
            assert a.results[0].g2 == b.results[0].g2
            assert a.results[1].g2 == b.results[1].g2

    def test_theta_axis_requires_single_direction(self):
        with pytest.raises(ValueError):
            SweepSpec(SystemParams(), (SweepAxis("theta", 0.0, math.pi, 5),))

    def test_theta_axis_sets_port_phase(self):
        spec = SweepSpec(
            SystemParams().with_delta(-10.2),
            (SweepAxis("theta", 0.0, math.pi, 3),),
            directions=("forward",),
        )
        result = run_sweep(spec)
        thetas = [r.results[0].theta for r in result.records]
        assert thetas == [0.0, math.pi / 2.0, math.pi]


class TestCmaxScan:
    def test_operating_point(self):
        rows = cmax_scan(SystemParams(), [5.0])
        row = rows[0]
        assert row.c_max == pytest.approx(0.895, abs=0.02)
        assert row.delta_max == pytest.approx(-10.2, abs=0.2)
        assert row.g2_forward == pytest.approx(1.615, rel=0.05)
        assert row.g2_backward == pytest.approx(0.089, rel=0.10)

    def test_vanishing_coupling_restores_reciprocity(self):
        # C_max vanishes linearly, slope ~1.85 per unit coupling
        small, smaller = cmax_scan(SystemParams(), [0.01, 0.005])
        assert small.c_max < 0.02
        assert smaller.c_max < 0.01
        assert smaller.c_max < 0.6 * small.c_max

    def test_window_must_cover_peaks(self):
        with pytest.raises(ValueError):
            cmax_scan(SystemParams(), [5.0], delta_window=(-15.0, 15.0))

    def test_coarse_resolution_enforced(self):
        with pytest.raises(ValueError):
            cmax_scan(SystemParams(), [5.0], coarse_count=20)


class TestFig5Compare:
    def test_decoupled_cavity_reproduces_two_mode(self):
        # zeta = 0 decouples the cavity; its intrinsic damping must stay on,
        # otherwise no unique steady state exists (every cavity Fock state
        # would be stationary).  The factorization is exact at any drive, so
        # a strong drive is used to lift the pair correlator far above the
        # float64 floor of the larger solve.
        spec = SweepSpec(
            SystemParams(drive_scale=0.3), (SweepAxis("delta", -10.2, 10.2, 3),)
        )
        two, three = fig5_compare(spec, CavityParams(zeta=0.0, beta_in=1.0))
        for a, b in zip(two.records, three.records):
            for ra, rb in zip(a.results, b.results):
                assert rb.g2 == pytest.approx(ra.g2, rel=1e-8)

    def test_fully_undamped_decoupled_cavity_is_degenerate(self):
        from magblock import DegenerateKernelError, build_liouvillian, build_three_mode
        from magblock.liouvillian import steady_state

        model = build_three_mode(SystemParams(), CavityParams(zeta=0.0, beta_in=0.0))
        with pytest.raises(DegenerateKernelError):
            steady_state(build_liouvillian(model), check_kernel=True)

    def test_classification_agreement_near_resonances(self):
        base = SystemParams()
        cavity = CavityParams()
        for delta in (-11.0, -10.2, -9.0, 9.0, 10.2, 11.0):
            for theta in (0.0, math.pi):
                p = base.with_delta(delta).with_updates(theta=theta)
                two, _ = solve_point(p, check_kernel=False)
                three, _ = solve_point(p, cavity, check_kernel=False)
                assert (two.g2 > 1.0) == (three.g2 > 1.0)

    def test_larger_cavity_detuning_converges_to_two_mode(self):
        # 10x detuning steps shrink the log-g2 discrepancy monotonically
        base = SystemParams().with_delta(-10.2)
        two, _ = solve_point(base, check_kernel=False)
        gaps = []
        for omega_c in (6000.0, 15000.0, 105000.0):
            three, _ = solve_point(
                base, CavityParams(omega_c=omega_c), check_kernel=False
            )
            gaps.append(abs(math.log10(two.g2) - math.log10(three.g2)))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_cavity_truncation_converged(self):
        # doubling the cavity truncation moves g2 by well under 0.1%
        base = SystemParams().with_delta(-10.2).with_updates(theta=math.pi)
        small, _ = solve_point(base, CavityParams(n_fock_c=2), check_kernel=False)
        big, _ = solve_point(base, CavityParams(n_fock_c=4), check_kernel=False)
        assert abs(small.g2 - big.g2) / big.g2 < 1e-3

    def test_requires_delta_axis(self):
        spec = SweepSpec(SystemParams(), (SweepAxis("gamma_diss", 1.0, 5.0, 3),))
        with pytest.raises(ValueError):
            fig5_compare(spec, CavityParams())


FLOAT_17 = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$|^nan$|^-?inf$")


class TestCsv:
    def test_schema_and_determinism(self, tmp_path):
        result = run_sweep(small_slice(count=3))
        path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_sweep_csv(result, path_a)
        write_sweep_csv(run_sweep(small_slice(count=3)), path_b)
        assert path_a.read_bytes() == path_b.read_bytes()

        lines = path_a.read_text().splitlines()
        assert lines[0].startswith("# meta: ")
        meta = json.loads(lines[0][len("# meta: "):])
        assert meta["tool"] == "magblock"
        assert meta["axes"][0]["name"] == "delta"
        assert lines[1] == SWEEP_HEADER
        rows = lines[2:]
        assert len(rows) == 3 * 2  # grid points x directions
        for row in rows:
            for fieldvalue in row.split(","):
                assert FLOAT_17.match(fieldvalue), fieldvalue

    def test_single_point_file_shape(self, tmp_path):
        spec = SweepSpec(SystemParams(), (SweepAxis("delta", -10.2, -10.2, 1),))
        path = tmp_path / "point.csv"
        write_sweep_csv(run_sweep(spec), path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1 + 1 + 2  # meta + header + one row per direction

    def test_contrast_column_pairs_directions(self, tmp_path):
        result = run_sweep(small_slice(count=3))
        path = tmp_path / "c.csv"
        write_sweep_csv(result, path)
        rows = path.read_text().splitlines()[2:]
        for i in range(0, len(rows), 2):
            c_fwd = rows[i].split(",")[6]
            c_bwd = rows[i + 1].split(",")[6]
            assert c_fwd == c_bwd
