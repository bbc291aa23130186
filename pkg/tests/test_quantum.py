import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from photocool import classical as C
from photocool import presets
from photocool import quantum as Qm
from photocool.params import CavitySpec, NormalizedParams, normalize

# fixed seed so the large random-draw checks are reproducible
SEED = 20240611
N_DRAWS = 10_000


def draws(n=N_DRAWS, seed=SEED):
    rng = np.random.default_rng(seed)
    return dict(b=10 ** rng.uniform(-3, 1, n), phi=rng.uniform(-5, 5, n), d=10 ** rng.uniform(-2, 4, n),
                beta=rng.uniform(0, 1e5, n), A=10 ** rng.uniform(-5, -1, n), T=10 ** rng.uniform(-5, -1, n),
                Om=rng.uniform(-20, 20, n))


def closed_form_rp(Om, b, phi):
    """Radiation-pressure-only spectrum, derived by hand from the beta = 0 limit."""
    return 2 * (1 + (b * Om - phi) ** 2) / ((1 - b * b * Om * Om + phi * phi) ** 2 + 4 * b * b * Om * Om)


def params(**kw):
    base = dict(b=0.01, phi=1.0, phi_nl=1e-3, d=1.0, Q=1e6, T=presets.T_REF, A=presets.A_REF,
                beta=presets.BETA_REF, n_i=0.0)
    base.update(kw)
    return NormalizedParams(**base)


class TestSpectrum:
    def test_non_negative_random_draws(self):
        r = draws()
        s = Qm._spectrum(r["Om"], r["b"], r["phi"], r["d"], r["beta"], r["A"], r["T"])
        assert np.all(np.isfinite(s)) and np.all(s >= 0)

    def test_symmetric_without_detuning(self):
        r = draws()
        args = (r["b"], 0.0, r["d"], r["beta"], r["A"], r["T"])
        a, b = Qm._spectrum(r["Om"], *args), Qm._spectrum(-r["Om"], *args)
        assert np.max(np.abs(a - b) / b) <= 1e-12

    def test_beta_zero_reduction(self):
        r = draws()
        s = Qm._spectrum(r["Om"], r["b"], r["phi"], r["d"], 0.0, r["A"], r["T"])
        ref = closed_form_rp(r["Om"], r["b"], r["phi"])
        assert np.max(np.abs(s / ref - 1)) <= 1e-12

    def test_sideband_ratio_hand_value(self):
        p = params(b=1.0, phi=1.0, beta=0.0)
        s_plus, s_minus = Qm.sideband_pair(p)
        assert s_minus / s_plus == pytest.approx(5.0, rel=1e-14)

    def test_scalar_and_array_agree(self):
        p = presets.FIG2A
        om = np.array([-3.0, 0.5, 7.0])
        assert np.allclose(Qm.optical_force_spectrum(om, p),
                           [Qm.optical_force_spectrum(float(x), p) for x in om], rtol=1e-14, atol=0)

    def test_fig2a_shape(self):
        p = presets.FIG2A
        s_plus, s_minus = Qm.sideband_pair(p)
        assert s_minus > s_plus
        low = Qm.optical_force_spectrum(1e-3, p)
        # photothermal lobe at low frequency dominates the radiation-pressure bump near the sidebands
        bump = Qm.optical_force_spectrum(np.geomspace(10, 1e3, 200), p)
        assert low > 10 * bump.max()


class TestBackAction:
    @given(st.floats(1e-3, 10), st.floats(1e-2, 1e4), st.floats(0, 10))
    def test_no_detuning_no_backaction(self, b, d, phi_nl):
        ba = Qm.backaction_shift_damping(params(b=b, d=d, phi=0.0, phi_nl=phi_nl))
        assert ba.delta_omega == 0 and ba.gamma_eff_over_gamma == 1

    def test_no_drive_no_backaction(self):
        ba = Qm.backaction_shift_damping(params(phi_nl=0.0))
        assert ba.delta_omega == 0 and ba.gamma_eff_over_gamma == 1
        assert ba.gamma_opt_over_gamma == 0

    @given(b=st.floats(1e-3, 10), phi=st.floats(-5, 5), d=st.floats(1e-2, 1e4), beta=st.floats(0, 1e5),
           A=st.floats(1e-5, 0.1), T=st.floats(1e-5, 0.1))
    def test_kubo_matches_explicit_damping(self, b, phi, d, beta, A, T):
        p = params(b=b, phi=phi, d=d, beta=beta, A=A, T=T, Q=1e5, phi_nl=0.3)
        explicit = Qm.backaction_shift_damping(p).gamma_opt_over_gamma
        assert Qm.kubo_damping_ratio(p) == pytest.approx(explicit, rel=1e-9, abs=1e-9 * p.Q)

    def test_dimensionful_kubo(self, flank):
        s, ss = flank
        p = normalize(s, ss)
        g_opt = Qm.gamma_opt_from_spectrum(p, s.mech)
        ratio = Qm.backaction_shift_damping(p).gamma_opt_over_gamma
        assert g_opt / s.mech.Gamma == pytest.approx(ratio, rel=1e-10)

    def test_kubo_sign_resolved_sideband(self):
        p = params(beta=0.0, b=5.0, phi=5.0)
        from photocool.params import MechanicalSpec
        assert Qm.gamma_opt_from_spectrum(p, MechanicalSpec(1e-12, 1e6, 1e5)) > 0
        assert Qm.gamma_opt_from_spectrum(p.replace(phi=0.0), MechanicalSpec(1e-12, 1e6, 1e5)) == 0

    def test_bad_cavity_matches_classical(self):
        # b = 0.01, phi = 1, T = A/10, beta A = 100
        s, ss = presets.flank_system(Q=1e5, gamma_ratio=1e3, R=1.0)
        p = normalize(s, ss)
        quantum_ratio = Qm.backaction_shift_damping(p).gamma_opt_over_gamma
        classical_ratio = C.effective_dynamics(s, ss).Gamma_eff / s.mech.Gamma - 1
        assert quantum_ratio == pytest.approx(classical_ratio, rel=0.05)

    def test_flank_formula_is_classical_damping(self):
        for T, A in [(0.001, 0.01), (0.01, 0.01), (0.05, 0.001)]:
            s, ss = presets.flank_system(Q=1e5, gamma_ratio=50, T=T, A=A, R=1.0)
            classical_term = C.effective_dynamics(s, ss).Gamma_eff / s.mech.Gamma - 1
            assert Qm.photothermal_damping_flank(s, ss) == pytest.approx(classical_term, rel=1e-10)


class TestSusceptibility:
    def test_bare_without_photons_or_detuning(self, flank):
        s, ss = flank
        w = np.linspace(0, 2 * s.mech.omega0, 7)
        m = s.mech
        bare = 1 / (m.m * (m.omega0 ** 2 - w ** 2 + 1j * m.Gamma * w))
        empty = type(ss)(alpha_sq=0.0, Delta=ss.Delta, Delta_nl=0.0, x_mean=0.0, stable=True)
        assert np.allclose(Qm.effective_susceptibility(w, s, empty), bare, rtol=1e-14)
        resonant = type(ss)(alpha_sq=ss.alpha_sq, Delta=0.0, Delta_nl=0.0, x_mean=0.0, stable=True)
        assert np.allclose(Qm.effective_susceptibility(w, s, resonant), bare, rtol=1e-14)

    @pytest.mark.parametrize("b,ratio", [(0.01, 1e2), (0.1, 1e3), (0.05, 3e2)])
    def test_reproduces_shift_and_damping(self, b, ratio):
        s, ss = presets.flank_system(b=b, Q=1e6, gamma_ratio=ratio)
        p = normalize(s, ss)
        ba = Qm.backaction_shift_damping(p)
        inv = 1 / Qm.effective_susceptibility(s.mech.omega0, s, ss)
        m, w0 = s.mech.m, s.mech.omega0
        assert inv.imag / (m * w0) / s.mech.Gamma == pytest.approx(ba.gamma_eff_over_gamma, rel=1e-2)
        assert inv.real / (m * w0 ** 2) == pytest.approx(ba.delta_omega, rel=1e-2)

    def test_poles_near_shifted_resonance(self):
        p = params(Q=1e6, phi_nl=1e-5)
        ba = Qm.backaction_shift_damping(p)
        poles = Qm.susceptibility_poles(p)
        mech = poles[np.argmin(np.abs(poles - ba.frequency_ratio))]
        assert mech.real == pytest.approx(ba.frequency_ratio, rel=1e-3)
        assert mech.imag == pytest.approx(ba.gamma_eff_over_gamma / p.Q / 2, rel=2e-2)


class TestNmin:
    @given(st.floats(1e-3, 10), st.floats(1e-3, 10))
    def test_beta_zero_closed_form(self, b, phi):
        p = params(b=b, phi=phi, beta=0.0)
        assert Qm.n_min(p) == pytest.approx((1 + (phi - b) ** 2) / (4 * b * phi), rel=1e-10)

    @pytest.mark.parametrize("b", [0.3, 1.0, 5.0])
    def test_matched_sideband(self, b):
        assert Qm.n_min(params(b=b, phi=b, beta=0.0)) == pytest.approx(1 / (4 * b * b), rel=1e-10)

    def test_no_cooling_sentinel(self):
        assert Qm.n_min(params(phi=0.0)) == math.inf
        assert Qm.n_min(params(phi=-1.0)) == math.inf

    def test_detailed_balance_identity(self):
        r = draws()
        for i in range(0, N_DRAWS, 97):
            p = params(b=r["b"][i], phi=r["phi"][i], d=r["d"][i], beta=r["beta"][i], A=r["A"][i], T=r["T"][i])
            s_plus, s_minus = Qm.sideband_pair(p)
            if s_minus > s_plus:
                lhs = (s_plus + s_minus) / (s_minus - s_plus)
                assert lhs == pytest.approx(2 * Qm.n_min(p) + 1, rel=1e-12)

    @pytest.mark.parametrize("beta_a", presets.FIG3_BETA_A)
    def test_sub_unity_occupancy(self, beta_a):
        p = presets.FIG3.replace(beta=beta_a / presets.A_REF)
        best = min(Qm.n_min(p.replace(d=d)) for d in np.geomspace(0.1, 1e5, 400))
        assert best < 1


class TestStrongCoolingVariance:
    def test_large_coupling_limit(self):
        p = params(Q=1e14, phi_nl=1.0)
        rep = Qm.variance_strong_cooling(p)
        assert rep.deltaX2 == pytest.approx(2 * rep.n_min + 1, rel=1e-12)
        assert rep.cooling

    @pytest.mark.parametrize("n_i", [0.0, 0.7, 40.0])
    def test_drive_off_thermal(self, n_i):
        rep = Qm.variance_strong_cooling(params(phi_nl=0.0, n_i=n_i))
        assert rep.deltaX2 == pytest.approx(1 + 2 * n_i, rel=1e-14)
        assert rep.occupancy == pytest.approx(n_i, rel=1e-12, abs=1e-15)

    def test_rejects_anti_damping(self):
        with pytest.raises(C.InstabilityError):
            Qm.variance_strong_cooling(params(phi=-1.0, phi_nl=1.0))

    def test_flags(self):
        rep = Qm.variance_strong_cooling(params(Q=1e7, phi_nl=presets_phi_nl(1e7, 1e3)))
        assert rep.strong_cooling and rep.peaked_response
        assert 0.99e3 < rep.gamma_ratio < 1.05e3

    @given(st.floats(0.1, 10), st.floats(1, 1e4))
    def test_zero_point_floor(self, phi, d):
        rep = Qm.variance_strong_cooling(presets.FIG2B.replace(phi=phi, d=d))
        if rep.gamma_ratio > 0:
            assert rep.deltaX2 >= 1 - 1e-12

    def test_fig2b_rises_beyond_lag_optimum(self):
        vals = [Qm.variance_strong_cooling(presets.FIG2B.replace(d=d)).deltaX2 for d in np.geomspace(1, 1e5, 200)]
        i = int(np.argmin(vals))
        assert 0 < i < len(vals) - 1 and vals[-1] > 5 * vals[i]


def presets_phi_nl(Q, ratio, phi=1.0, d=1.0, betaA=100.0):
    return (ratio - 1) * (1 + phi ** 2) * (1 + d ** 2) / (2 * phi * Q * betaA * d)


class TestVarianceFull:
    @pytest.mark.parametrize("n_i", [0.0, 3.0])
    def test_drive_off(self, n_i):
        p = params(phi_nl=0.0, n_i=n_i, Q=1e4)
        assert Qm.variance_full(p) == pytest.approx(1 + 2 * n_i, rel=1e-6)

    @pytest.mark.parametrize("Q,d,ratio,n_i", [(1e7, 1.0, 1e3, 0.0), (1e8, 100.0, 1e3, 0.0),
                                              (1e8, 1.0, 1e4, 5.0), (1e6, 1.0, 1e2, 0.0)])
    def test_peaked_limit(self, Q, d, ratio, n_i):
        p = params(Q=Q, d=d, n_i=n_i, phi_nl=presets_phi_nl(Q, ratio, d=d))
        rep = Qm.variance_strong_cooling(p)
        assert rep.peaked_response
        assert Qm.variance_full(p) == pytest.approx(rep.deltaX2, rel=0.02)

    def test_odd_part_vanishes(self):
        from photocool.quadrature import QuadConfig, integrate_spectrum
        p = params(Q=1e6, phi_nl=presets_phi_nl(1e6, 1e2))
        density, shift, gamma = Qm.variance_density(p)
        res = math.sqrt(1 + shift)
        cfg = QuadConfig(peaks=[-res, res, 0.0], widths=[gamma / 2, gamma / 2, 1 / p.d], rtol=1e-12)
        total = integrate_spectrum(density, cfg).value
        odd_cfg = QuadConfig(peaks=cfg.peaks, widths=cfg.widths, rtol=1e-12, atol=1e-13 * total)
        odd = integrate_spectrum(lambda w: (density(w) - density(-w)) / 2, odd_cfg).value
        assert abs(odd) <= 1e-10 * total

    def test_unstable_rejected(self):
        with pytest.raises(C.InstabilityError):
            Qm.variance_full(params(phi=-1.0, phi_nl=1.0))
