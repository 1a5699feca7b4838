import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magblock import (
    BareParams,
    CavityParams,
    SystemParams,
    annihilation,
    build_three_mode,
    build_two_mode,
    effective_hamiltonian,
    embed,
    frohlich_residual,
    reduce_bare_params,
    sigma_minus,
)

rates = st.floats(0.0, 10.0, allow_nan=False)
angles = st.floats(0.0, 2.0 * math.pi, allow_nan=False)


def two_mode_ops(n_fock):
    dims = (2, n_fock)
    return embed(sigma_minus(), 0, dims), embed(annihilation(n_fock), 1, dims)


class TestDerivedRates:
    def test_fig2_tie(self):
        p = SystemParams().with_gamma_diss(5.0)
        assert p.tau == 5.0
        assert p.gamma_ex == 5.0
        assert p.kappa_ex == 5.0
        assert p.gamma_diss == 5.0
        assert p.gamma_total == 6.0
        assert p.kappa_total == 6.0

    @given(rates, st.floats(0.1, 3.0), st.floats(0.1, 3.0))
    @settings(max_examples=50)
    def test_gamma_squared_identity(self, tau, mu, nu):
        p = SystemParams(tau=tau, mu=mu, nu=nu)
        assert p.gamma_diss**2 == pytest.approx(p.gamma_ex * p.kappa_ex, rel=1e-12)

    def test_paper_drive_parametrization(self):
        p = SystemParams(tau=5.0, mu=1.0, nu=1.0, xi=0.2, drive_scale=None)
        assert p.xi_q == pytest.approx(math.sqrt(5.0) * 0.2)
        assert p.xi_b == pytest.approx(math.sqrt(5.0) * 0.2)
        # explicit drive amplitudes equal the accessors when drive_scale unset
        assert p.drive_amplitudes() == pytest.approx((p.xi_q, p.xi_b))

    def test_validation(self):
        with pytest.raises(ValueError):
            SystemParams(gamma_in=-1.0)
        with pytest.raises(ValueError):
            SystemParams(n_fock=2)
        with pytest.raises(ValueError):
            SystemParams(mu=2.0).with_gamma_diss(3.0)


class TestTwoModeBuilder:
    def test_switch_off_limit_is_bare_ladder(self):
        p = SystemParams(tau=0.0, drive_scale=0.0).with_delta(3.0)
        model = build_two_mode(p)
        assert len(model.channels) == 2
        assert [r for r, _ in model.channels] == [1.0, 1.0]
        sm, b = two_mode_ops(p.n_fock)
        expected = (
            3.0 * (sm.adjoint() @ sm + b.adjoint() @ b)
            + 10.0 * (b.adjoint() @ sm + b @ sm.adjoint())
        ).data
        np.testing.assert_allclose(model.hamiltonian.data, expected, atol=1e-12)

    def test_collective_channel_at_operating_point(self):
        p = SystemParams().with_gamma_diss(5.0).with_delta(10.0)
        model = build_two_mode(p)
        rate, jump = model.channels[-1]
        assert rate == 5.0
        sm, b = two_mode_ops(p.n_fock)
        np.testing.assert_allclose(jump.data, (b + sm).data, atol=1e-15)

    def test_backward_port_flips_magnon_sign(self):
        p = SystemParams(theta=math.pi)
        _, jump = build_two_mode(p).channels[-1]
        sm, b = two_mode_ops(p.n_fock)
        np.testing.assert_allclose(jump.data, (sm - b).data, atol=1e-15)

    @given(rates, rates, rates, angles, angles, st.floats(-30.0, 30.0))
    @settings(max_examples=40)
    def test_hamiltonian_hermitian(self, tau, gin, kin, theta, phi, delta):
        p = SystemParams(
            tau=tau, gamma_in=gin, kappa_in=kin, theta=theta, phi=phi
        ).with_delta(delta)
        h = build_two_mode(p).hamiltonian
        assert h.hermiticity_defect() <= 1e-12 * max(1.0, np.abs(h.data).max())

    def test_theta_periodicity(self):
        a = build_two_mode(SystemParams(theta=1.3))
        b = build_two_mode(SystemParams(theta=1.3 + 2.0 * math.pi))
        for (ra, ja), (rb, jb) in zip(a.channels, b.channels):
            assert ra == rb
            np.testing.assert_allclose(ja.data, jb.data, atol=1e-12)


class TestThreeModeBuilder:
    def test_channel_structure(self):
        model = build_three_mode(SystemParams(), CavityParams())
        assert model.dims == (2, 7, 4)
        assert len(model.channels) == 4

    def test_collective_jump_gains_cavity_term(self):
        p = SystemParams()
        cav = CavityParams(zeta=0.5)
        model = build_three_mode(p, cav)
        _, jump = model.channels[-1]
        dims = (2, p.n_fock, cav.n_fock_c)
        sm = embed(sigma_minus(), 0, dims)
        b = embed(annihilation(p.n_fock), 1, dims)
        c = embed(annihilation(cav.n_fock_c), 2, dims)
        np.testing.assert_allclose(jump.data, (b + sm + 0.5 * c).data, atol=1e-15)

    def test_decoupled_cavity_drops_to_three_channels(self):
        model = build_three_mode(SystemParams(), CavityParams(beta_in=0.0, zeta=0.0))
        assert len(model.channels) == 3


class TestEffectiveHamiltonian:
    def test_no_waveguide_reduces_to_damped_ladder(self):
        p = SystemParams(tau=0.0).with_delta(0.0)
        h = effective_hamiltonian(p)
        sm, b = two_mode_ops(p.n_fock)
        expected = (
            p.omega_q * (sm.adjoint() @ sm) + p.omega_b * (b.adjoint() @ b)
            + p.lam * (b.adjoint() @ sm + b @ sm.adjoint())
        ).data - 1j * (
            p.gamma_in * (sm.adjoint() @ sm).data + p.kappa_in * (b.adjoint() @ b).data
        )
        np.testing.assert_allclose(h.data, expected, atol=1e-13)

    @pytest.mark.parametrize(
        "theta,expected_offsets",
        [
            (0.0, (-(10 - 5j), +(10 - 5j))),
            (math.pi, (-(10 + 5j), +(10 + 5j))),
        ],
    )
    def test_single_excitation_eigenvalues(self, theta, expected_offsets):
        p = SystemParams(theta=theta).with_gamma_diss(5.0)
        h = effective_hamiltonian(p).data
        n_fock = p.n_fock
        block = h[np.ix_([1, n_fock], [1, n_fock])]
        eigs = sorted(np.linalg.eigvals(block), key=lambda z: z.real)
        center = p.omega_b - 6j
        for eig, offset in zip(eigs, expected_offsets):
            assert eig == pytest.approx(center + offset, abs=1e-9)

    @given(rates, rates, rates, angles, st.floats(0.1, 20.0))
    @settings(max_examples=40)
    def test_matches_channel_bookkeeping(self, tau, gin, kin, theta, lam):
        # H_eff must equal H - i sum_k r_k f_k+ f_k of the undriven lab-frame
        # model, including the waveguide cross terms.
        p = SystemParams(
            tau=tau, gamma_in=gin, kappa_in=kin, theta=theta, lam=lam,
            omega_d=0.0, drive_scale=0.0,
        )
        model = build_two_mode(p)
        acc = model.hamiltonian.data.astype(complex)
        for rate, op in model.channels:
            acc = acc - 1j * rate * (op.adjoint() @ op).data
        np.testing.assert_allclose(
            effective_hamiltonian(p).data, acc, atol=1e-12 * max(1.0, tau * lam)
        )


class TestBareReduction:
    def test_symmetric_example(self):
        bare = BareParams(5000.0, 5000.0, 4000.0, 100.0, 100.0)
        reduced = reduce_bare_params(bare)
        assert reduced.lam == pytest.approx(10.0)
        assert reduced.omega_q == pytest.approx(5010.0)
        assert reduced.omega_b == pytest.approx(5010.0)

    def test_uncoupled_magnon(self):
        bare = BareParams(5000.0, 5000.0, 4000.0, 100.0, 0.0)
        reduced = reduce_bare_params(bare)
        assert reduced.lam == 0.0
        assert reduced.omega_b == 5000.0

    def test_swap_symmetry(self):
        a = BareParams(5100.0, 4950.0, 4000.0, 90.0, 60.0)
        b = BareParams(4950.0, 5100.0, 4000.0, 60.0, 90.0)
        assert reduce_bare_params(a).lam == pytest.approx(reduce_bare_params(b).lam)

    def test_zero_detuning_rejected(self):
        with pytest.raises(ValueError):
            BareParams(4000.0, 5000.0, 4000.0, 10.0, 10.0)

    def test_marginal_dispersiveness_warns(self):
        with pytest.warns(UserWarning):
            BareParams(5000.0, 5000.0, 4500.0, 200.0, 10.0)


class TestFrohlichResidual:
    def test_interior_residual_vanishes(self):
        bare = BareParams(5010.0, 4990.0, 4000.0, 100.0, 80.0)
        assert frohlich_residual(bare, 6) <= 1e-10

    def test_zero_coupling_exact(self):
        bare = BareParams(5010.0, 4990.0, 4000.0, 0.0, 0.0)
        assert frohlich_residual(bare, 4) == 0.0

    def test_full_space_residual_also_vanishes(self):
        # The generator identity commutes with the Fock-space projector
        # (H_0 is diagonal), so truncation does not break it even on the top
        # levels; the restriction is a safety net, not a necessity.
        bare = BareParams(5010.0, 4990.0, 4000.0, 100.0, 80.0)
        assert frohlich_residual(bare, 6, full_space=True) <= 1e-10

    def test_matches_second_order_reduction(self):
        # half-commutator reduction reproduces the closed-form parameters
        bare = BareParams(5010.0, 4990.0, 4000.0, 100.0, 80.0)
        reduced = reduce_bare_params(bare)
        n = 5
        dims = (2, n, n)
        sm = embed(sigma_minus(), 0, dims)
        b = embed(annihilation(n), 1, dims)
        c = embed(annihilation(n), 2, dims)
        h0 = (
            bare.omega_q0 * (sm.adjoint() @ sm)
            + bare.omega_b0 * (b.adjoint() @ b)
            + bare.omega_c * (c.adjoint() @ c)
        ).data
        hi = (
            bare.lambda_q * (sm.adjoint() @ c + sm @ c.adjoint())
            + bare.lambda_b * (b.adjoint() @ c + b @ c.adjoint())
        ).data
        v = (
            (bare.lambda_q / bare.delta_q) * (sm @ c.adjoint() - sm.adjoint() @ c)
            + (bare.lambda_b / bare.delta_b) * (b @ c.adjoint() - b.adjoint() @ c)
        ).data
        h2 = h0 + 0.5 * (hi @ v - v @ hi)

        def idx(q, mb, mc):
            return (q * n + mb) * n + mc

        assert h2[idx(1, 0, 0), idx(0, 1, 0)].real == pytest.approx(reduced.lam)
        assert h2[idx(1, 0, 0), idx(1, 0, 0)].real == pytest.approx(reduced.omega_q)
        assert h2[idx(0, 1, 0), idx(0, 1, 0)].real == pytest.approx(reduced.omega_b)
