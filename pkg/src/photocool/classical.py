"""Classical photothermal back-action: cavity response, noise and variance.

Radiation pressure is left out of the oscillator dynamics here; the combined
treatment lives in :mod:`photocool.quantum`. The static photothermal
displacement is absorbed in the steady state and never re-added.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .params import (C_LIGHT, HBAR, K_B, CavitySpec, DriveSpec, MechanicalSpec,
                     SteadyState, System)

STRONG_COOLING_MIN_RATIO = 100.0
STRONG_COOLING_MAX_SHIFT = 0.1


class InstabilityError(ValueError):
    """The operating point is statically or dynamically unstable."""


@dataclass(frozen=True)
class ClassicalDynamics:
    omega_eff_sq: float
    Gamma_eff: float
    dPabs_dx: float
    P_abs0: float
    P_circ0: float
    m: float

    @property
    def statically_stable(self) -> bool:
        return self.omega_eff_sq > 0

    @property
    def omega_eff(self) -> float:
        return math.sqrt(self.omega_eff_sq) if self.omega_eff_sq > 0 else math.nan

    @property
    def K_eff(self) -> float:
        return self.m * self.omega_eff_sq


@dataclass(frozen=True)
class ClassicalVariance:
    x2_classical: float
    x2_total: float
    T_eff: float
    normalized_temperature: float


def _detuning(drive: DriveSpec, detuning: Optional[float]) -> float:
    return drive.delta_c if detuning is None else detuning


def circulating_power(x, cavity: CavitySpec, drive: DriveSpec, detuning: Optional[float] = None):
    """Fabry-Perot circulating power at mirror displacement x (exact Lorentzian)."""
    delta = _detuning(drive, detuning)
    shift = -delta + 2 * cavity.omega_L * np.asarray(x, dtype=float) / cavity.L0
    return cavity.T / cavity.tau0 ** 2 * drive.P_inc / (cavity.kappa ** 2 + shift ** 2)


def absorbed_power_linearized(cavity: CavitySpec, drive: DriveSpec,
                              detuning: Optional[float] = None) -> tuple[float, float]:
    """(P_abs(0), dP_abs/dx) for small mirror displacements."""
    delta = _detuning(drive, detuning)
    lor = cavity.kappa ** 2 + delta ** 2
    p_abs0 = cavity.T * cavity.A / cavity.tau0 ** 2 * drive.P_inc / lor
    grad = p_abs0 * 4 * delta * cavity.omega_L / (cavity.L0 * lor)
    return p_abs0, grad


def thermal_kernel(omega, tau_th: float):
    """Fourier transform of the causal exponential response, 1/(1 + i w tau)."""
    return 1.0 / (1.0 + 1j * np.asarray(omega, dtype=float) * tau_th)


def photothermal_stiffness(system: System, ss: SteadyState) -> float:
    """beta (2R/c) dP_abs/dx: static photothermal spring constant [N/m]."""
    _, grad = absorbed_power_linearized(system.cavity, system.drive, ss.Delta)
    return system.pt.beta * 2 * system.cavity.R / C_LIGHT * grad


def effective_dynamics(system: System, ss: SteadyState) -> ClassicalDynamics:
    cav, mech, pt = system.cavity, system.mech, system.pt
    p_abs0, grad = absorbed_power_linearized(cav, system.drive, ss.Delta)
    d = mech.omega0 * pt.tau_th
    coupling = pt.beta * (2 * cav.R / C_LIGHT) * grad / mech.K
    omega_eff_sq = mech.omega0 ** 2 * (1 - coupling / (1 + d ** 2))
    gamma_eff = mech.Gamma * (1 + mech.Q * coupling * d / (1 + d ** 2))
    p_circ0 = p_abs0 / cav.A if cav.A > 0 else float(circulating_power(0.0, cav, system.drive, ss.Delta))
    return ClassicalDynamics(omega_eff_sq=omega_eff_sq, Gamma_eff=gamma_eff, dPabs_dx=grad,
                             P_abs0=p_abs0, P_circ0=p_circ0, m=mech.m)


def is_strong_cooling(dyn: ClassicalDynamics, mech: MechanicalSpec) -> bool:
    if not dyn.statically_stable:
        return False
    return (dyn.Gamma_eff / mech.Gamma >= STRONG_COOLING_MIN_RATIO
            and abs(dyn.omega_eff - mech.omega0) / mech.omega0 <= STRONG_COOLING_MAX_SHIFT)


def circ_power_psd(omega, cavity: CavitySpec, drive: DriveSpec, ss: SteadyState):
    """Two-sided PSD of the circulating power for a coherent input [W^2 s]."""
    omega = np.asarray(omega, dtype=float)
    p_circ = float(circulating_power(0.0, cavity, drive, ss.Delta))
    kap, delta = cavity.kappa, ss.Delta
    lor = 1 / (1 + ((omega - delta) / kap) ** 2) + 1 / (1 + ((omega + delta) / kap) ** 2)
    return cavity.finesse / math.pi * HBAR * cavity.omega_L * p_circ * lor


def absorbed_shot_psd(cavity: CavitySpec, drive: DriveSpec, ss: SteadyState) -> float:
    """White (Poissonian) PSD of the absorbed power [W^2 s]."""
    p_abs0, _ = absorbed_power_linearized(cavity, drive, ss.Delta)
    return HBAR * cavity.omega_L * p_abs0


def photothermal_force_psd(omega, system: System, ss: SteadyState):
    """Two-sided PSD of the photothermal shot-noise force [N^2 s]."""
    cav, pt = system.cavity, system.pt
    h2 = np.abs(thermal_kernel(omega, pt.tau_th)) ** 2
    return (pt.beta * 2 * cav.R / C_LIGHT) ** 2 * h2 * absorbed_shot_psd(cav, system.drive, ss)


def langevin_force_psd(system: System) -> float:
    """Two-sided PSD of the thermal Langevin force, 2 k_B T m Gamma [N^2 s]."""
    mech = system.mech
    return 2 * K_B * system.drive.T_env * mech.m * mech.Gamma


def position_psd_classical(omega, system: System, ss: SteadyState):
    """Two-sided position PSD, normalized so that <x^2> = int S dw / 2pi."""
    omega = np.asarray(omega, dtype=float)
    dyn = effective_dynamics(system, ss)
    m = system.mech.m
    resp = (dyn.omega_eff_sq - omega ** 2) ** 2 + (dyn.Gamma_eff * omega) ** 2
    force = langevin_force_psd(system) + photothermal_force_psd(omega, system, ss)
    return force / (m ** 2 * resp)


def classical_variance(system: System, ss: SteadyState) -> ClassicalVariance:
    """Peaked-response position variance plus the zero-point term.

    The photothermal filter is evaluated at omega_eff.
    """
    cav, mech, pt = system.cavity, system.mech, system.pt
    dyn = effective_dynamics(system, ss)
    if not dyn.statically_stable:
        raise InstabilityError("omega_eff^2 <= 0: statically unstable operating point")
    if dyn.Gamma_eff <= 0:
        raise InstabilityError("Gamma_eff <= 0: anti-damped operating point")
    w = dyn.omega_eff
    thermal = mech.Gamma * K_B * system.drive.T_env
    shot = (1 / (2 * mech.m)) * (pt.beta * 2 * cav.R / C_LIGHT) ** 2 \
        / (1 + (w * pt.tau_th) ** 2) * HBAR * cav.omega_L * dyn.P_abs0
    energy = (thermal + shot) / dyn.Gamma_eff
    x2_cl = energy / (mech.m * dyn.omega_eff_sq)
    x2_tot = x2_cl + HBAR / (2 * mech.m * w)
    k_eff_x2 = mech.m * dyn.omega_eff_sq * x2_tot
    return ClassicalVariance(x2_classical=x2_cl, x2_total=x2_tot, T_eff=k_eff_x2 / K_B,
                             normalized_temperature=2 * k_eff_x2 / (HBAR * w))


def strong_cooling_variance(system: System, ss: SteadyState) -> float:
    """K_eff <x^2>_cl in the shot-noise-limited strong-cooling regime [J]."""
    cav, pt = system.cavity, system.pt
    delta = ss.Delta
    if delta <= 0:
        raise ValueError("strong-cooling variance needs a red-detuned drive (Delta > 0)")
    return pt.beta * cav.R * HBAR / pt.tau_th * cav.tau0 * (cav.kappa ** 2 + delta ** 2) / (8 * delta)
