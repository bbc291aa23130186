"""Linearized quantum treatment with radiation pressure and photothermal force.

Frequencies are normalized to the bare mechanical frequency, Omega = w/omega0.
With the exp(-i w t) transform, Omega = +1 is where the cavity emits quanta
into the oscillator, so cooling needs S(-1) > S(+1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classical import InstabilityError, absorbed_power_linearized
from .params import (C_LIGHT, HBAR, MechanicalSpec, NormalizedParams, SteadyState, System,
                     coupling_bridge)
from .quadrature import QuadConfig, integrate_spectrum

STRONG_COOLING_MIN_RATIO = 100.0
STRONG_COOLING_MAX_SHIFT = 0.1
# peaked response: Gamma_eff/omega0 and Gamma_eff * (force correlation time)
PEAKED_MAX_LINEWIDTH = 1e-3
PEAKED_MAX_CORRELATION = 1e-2


def _spectrum(Om, b, phi, d, beta, A, T):
    h = 1.0 / (1.0 + 1j * Om * d)
    w_t = 2 * T / (T + A)
    w_a = 2 * A / (T + A)
    trans = w_t * abs(1 + beta * A * h) ** 2 * (1 + phi * phi + b * b * Om * Om - 2 * b * Om * phi)
    inner = 1 + beta * (T + A) / 2 * h * ((A - T) / (T + A) - 1j * phi - 1j * b * Om)
    absn = w_a * abs((1 + 1j * Om * b - 1j * phi) * inner) ** 2
    den = (1 - b * b * Om * Om + phi * phi) ** 2 + 4 * b * b * Om * Om
    return (trans + absn) / den


def optical_force_spectrum(Omega, p: NormalizedParams):
    """Normalized two-sided noise spectrum of the total optical force."""
    if np.ndim(Omega) == 0:
        return float(_spectrum(float(Omega), p.b, p.phi, p.d, p.beta, p.A, p.T))
    return _spectrum(np.asarray(Omega, dtype=float), p.b, p.phi, p.d, p.beta, p.A, p.T)


def sideband_pair(p: NormalizedParams) -> tuple[float, float]:
    """(S(+1), S(-1)): emission and absorption sidebands at the bare frequency."""
    return optical_force_spectrum(1.0, p), optical_force_spectrum(-1.0, p)


def force_spectrum_si(omega, p: NormalizedParams, mech: MechanicalSpec):
    """Dimensionful optical-force spectrum [N^2 s] implied by the normalization.

    Chosen so that x_zpf^2/hbar^2 * S(w) = (phi_nl Q Gamma / 2) * S_hat(w/omega0).
    """
    scale = HBAR ** 2 / mech.x_zpf ** 2 * p.phi_nl * p.Q * mech.Gamma / 2
    return scale * optical_force_spectrum(np.asarray(omega) / mech.omega0, p)


@dataclass(frozen=True)
class BackAction:
    delta_omega: float
    gamma_eff_over_gamma: float

    @property
    def gamma_opt_over_gamma(self) -> float:
        return self.gamma_eff_over_gamma - 1.0

    @property
    def frequency_ratio(self) -> float:
        """omega_eff/omega0 implied by the normalized resonance shift."""
        return math.sqrt(1 + self.delta_omega) if self.delta_omega > -1 else math.nan


def backaction_shift_damping(p: NormalizedParams) -> BackAction:
    """Normalized resonance shift and Gamma_eff/Gamma for a peaked response.

    `delta_omega` shifts the squared resonance: omega_eff^2 = omega0^2 (1 + delta_omega).
    """
    b, phi, d, bA = p.b, p.phi, p.d, p.betaA
    core = 1 - b * b + phi * phi
    den = core ** 2 + 4 * b * b
    lag = bA / (1 + d * d)
    shift = -2 * phi * p.phi_nl / den * (core * (1 + lag) - 2 * bA * b * d / (1 + d * d))
    damping = 1 + 2 * phi * p.phi_nl * p.Q / den * (core * bA * d / (1 + d * d) + 2 * b * (1 + lag))
    return BackAction(delta_omega=shift, gamma_eff_over_gamma=damping)


def kubo_damping_ratio(p: NormalizedParams) -> float:
    """Gamma_opt/Gamma from the spectral asymmetry."""
    s_plus, s_minus = sideband_pair(p)
    return p.phi_nl * p.Q / 2 * (s_minus - s_plus)


def gamma_opt_from_spectrum(p: NormalizedParams, mech: MechanicalSpec) -> float:
    """Optomechanical damping rate [rad/s] via the generalized Kubo formula."""
    s = force_spectrum_si(np.array([-mech.omega0, mech.omega0]), p, mech)
    return mech.x_zpf ** 2 / HBAR ** 2 * (s[0] - s[1])


def photothermal_damping_flank(system: System, ss: SteadyState) -> float:
    """Bad-cavity, absorption-dominated Gamma_opt/Gamma on the red flank (Delta = kappa).

    Evaluated with the operating absorbed power; R -> 1 is implicit.
    """
    cav, mech, pt = system.cavity, system.mech, system.pt
    p_abs, _ = absorbed_power_linearized(cav, system.drive, ss.Delta)
    d = mech.omega0 * pt.tau_th
    return mech.Q * pt.beta * d / (1 + d * d) * (2 / C_LIGHT) * p_abs * (8 * cav.finesse / cav.lam) / mech.K


def n_min(p: NormalizedParams) -> float:
    """Minimum phonon number from detailed balance; inf when there is no net cooling."""
    s_plus, s_minus = sideband_pair(p)
    gap = s_minus - s_plus
    if not gap > 0:
        return math.inf
    return s_plus / gap


def effective_susceptibility(omega, system: System, ss: SteadyState):
    """Back-action-modified mechanical susceptibility chi_eff(w) [m/N]."""
    omega = np.asarray(omega, dtype=float)
    cav, mech, pt = system.cavity, system.mech, system.pt
    bare = mech.m * (mech.omega0 ** 2 - omega ** 2 + 1j * mech.Gamma * omega)
    coupling = 2 * ss.Delta * coupling_bridge(cav) * HBAR * cav.k ** 2 / cav.tau0 ** 2 * ss.alpha_sq
    lag = 1 + pt.beta * cav.A / (1 + 1j * omega * pt.tau_th)
    cavity = (cav.kappa + 1j * omega) ** 2 + ss.Delta ** 2
    return 1.0 / (bare - coupling * lag / cavity)


def susceptibility_poles(p: NormalizedParams) -> np.ndarray:
    """Complex zeros of the normalized inverse susceptibility, Omega units.

    chi^-1 times (1 + i Omega d) and the cavity factor is a quintic in Omega.
    """
    P = np.polynomial.Polynomial
    osc = P([1.0, 1j / p.Q, -1.0])
    lag = P([1.0, 1j * p.d])
    cav = P([1.0 + p.phi ** 2, 2j * p.b, -p.b ** 2])
    drive = P([1.0 + p.betaA, 1j * p.d]) * (2 * p.phi * p.phi_nl)
    roots = (osc * lag * cav - drive).roots()
    return roots[np.argsort(roots.real)]


@dataclass(frozen=True)
class QuantumCoolingReport:
    deltaX2: float
    n_min: float
    gamma_ratio: float
    delta_omega: float
    cooling: bool
    strong_cooling: bool
    peaked_response: bool

    @property
    def occupancy(self) -> float:
        return (self.deltaX2 - 1) / 2


def is_peaked(p: NormalizedParams, gamma_ratio: float) -> bool:
    linewidth = gamma_ratio / p.Q
    return (linewidth <= PEAKED_MAX_LINEWIDTH
            and linewidth * max(p.d, p.b) <= PEAKED_MAX_CORRELATION)


def variance_strong_cooling(p: NormalizedParams, gamma_ratio: Optional[float] = None) -> QuantumCoolingReport:
    """Normalized variance <x^2>/x_zpf^2 in the peaked strong-cooling limit."""
    ba = backaction_shift_damping(p)
    ratio = ba.gamma_eff_over_gamma if gamma_ratio is None else gamma_ratio
    if not ratio > 0:
        raise InstabilityError("Gamma_eff <= 0: the oscillator is anti-damped")
    s_plus, s_minus = sideband_pair(p)
    x2 = (1 + 2 * p.n_i + p.phi_nl * p.Q / 2 * (s_plus + s_minus)) / ratio
    nm = n_min(p)
    strong = (ratio >= STRONG_COOLING_MIN_RATIO
              and abs(ba.frequency_ratio - 1) <= STRONG_COOLING_MAX_SHIFT)
    return QuantumCoolingReport(deltaX2=x2, n_min=nm, gamma_ratio=ratio, delta_omega=ba.delta_omega,
                                cooling=math.isfinite(nm), strong_cooling=strong,
                                peaked_response=is_peaked(p, ratio))


def langevin_spectrum(p: NormalizedParams) -> float:
    """Flat normalized Langevin-force spectrum, (2/Q)(n_i + 1/2)."""
    return 2 / p.Q * (p.n_i + 0.5)


def variance_density(p: NormalizedParams):
    """Integrand (per dOmega) whose integral is <x^2>/x_zpf^2.

    The integral for X = x sqrt(m omega0/hbar) is doubled to express the
    result in zero-point units. The optical shift and damping are the
    constant peaked-response values; damping scales with Omega to keep the
    response causal.
    """
    ba = backaction_shift_damping(p)
    shift = ba.delta_omega
    gamma = ba.gamma_eff_over_gamma / p.Q
    s_lang = langevin_spectrum(p)
    phi_nl = p.phi_nl
    args = (p.b, p.phi, p.d, p.beta, p.A, p.T)

    def density(Om):
        resp = (1 - Om * Om + shift) ** 2 + (Om * gamma) ** 2
        return 2 * (s_lang + phi_nl * _spectrum(Om, *args)) / resp / (2 * math.pi)

    return density, shift, gamma


def variance_full(p: NormalizedParams, rtol: float = 1e-8, max_subdivisions: int = 200) -> float:
    """<x^2>/x_zpf^2 by direct quadrature over all signed frequencies."""
    density, shift, gamma = variance_density(p)
    if not gamma > 0:
        raise InstabilityError("Gamma_eff <= 0: the oscillator is anti-damped")
    if not 1 + shift > 0:
        raise InstabilityError("optical spring drives omega_eff^2 <= 0")
    res = math.sqrt(1 + shift)
    peaks = [-res, res, 0.0]
    widths = [gamma / 2, gamma / 2, 1 / p.d]
    side = abs(p.phi) / p.b
    if 0 < side < 1e8:
        peaks += [-side, side]
        widths += [1 / p.b, 1 / p.b]
    cfg = QuadConfig(peaks=peaks, widths=widths, rtol=rtol, max_subdivisions=max_subdivisions)
    return integrate_spectrum(density, cfg).value
