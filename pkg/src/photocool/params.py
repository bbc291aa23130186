"""Physical parameters, the driven-cavity steady state and the dimensionless set.

All quantities are SI. Detuning follows Delta = omega_c - omega_L, so a
red-detuned drive has Delta > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import constants as _const

HBAR = _const.hbar
C_LIGHT = _const.c
K_B = _const.k


class ParameterError(ValueError):
    """Raised for physically invalid parameter values."""


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


@dataclass(frozen=True)
class CavitySpec:
    L0: float
    lam: float
    T: float
    A: float
    R: Optional[float] = None  # defaults to 1 - A (back mirror transmits nothing)

    def __post_init__(self):
        if self.R is None:
            object.__setattr__(self, "R", 1.0 - self.A)
        _check(self.L0 > 0 and self.lam > 0, "L0 and lambda must be positive")
        _check(0 < self.T <= 1, "T must lie in (0, 1]")
        _check(0 <= self.A <= 1, "A must lie in [0, 1]")
        _check(0 <= self.R <= 1, "R must lie in [0, 1]")
        _check(self.T + self.A <= 1, "T + A must not exceed 1")

    @property
    def omega_L(self) -> float:
        return 2 * math.pi * C_LIGHT / self.lam

    @property
    def k(self) -> float:
        return 2 * math.pi / self.lam

    @property
    def tau0(self) -> float:
        return 2 * self.L0 / C_LIGHT

    @property
    def kappa(self) -> float:
        return (self.T + self.A) / (2 * self.tau0)

    @property
    def finesse(self) -> float:
        return 2 * math.pi / (self.T + self.A)


@dataclass(frozen=True)
class MechanicalSpec:
    m: float
    omega0: float
    Q: float

    def __post_init__(self):
        _check(self.m > 0 and self.omega0 > 0 and self.Q > 0,
               "m, omega0 and Q must be positive")

    @property
    def Gamma(self) -> float:
        return self.omega0 / self.Q

    @property
    def K(self) -> float:
        return self.m * self.omega0 ** 2

    @property
    def x_zpf(self) -> float:
        return math.sqrt(HBAR / (2 * self.m * self.omega0))


@dataclass(frozen=True)
class PhotothermalSpec:
    beta: float
    tau_th: float

    def __post_init__(self):
        _check(self.beta >= 0, "only positive photothermal forces are supported (beta >= 0)")
        _check(self.tau_th > 0, "tau_th must be positive")


@dataclass(frozen=True)
class DriveSpec:
    P_inc: float
    delta_c: float
    T_env: float = 0.0

    def __post_init__(self):
        _check(self.P_inc >= 0, "P_inc must be non-negative")
        _check(self.T_env >= 0, "T_env must be non-negative")

    def photon_flux(self, cavity: CavitySpec) -> float:
        """|<a_in>|^2 in photons per second."""
        return self.P_inc / (HBAR * cavity.omega_L)


@dataclass(frozen=True)
class System:
    cavity: CavitySpec
    mech: MechanicalSpec
    pt: PhotothermalSpec
    drive: DriveSpec

    def with_drive(self, **changes) -> "System":
        return replace(self, drive=replace(self.drive, **changes))


@dataclass(frozen=True)
class SteadyState:
    alpha_sq: float
    Delta: float
    Delta_nl: float
    x_mean: float
    stable: bool


@dataclass(frozen=True)
class NormalizedParams:
    b: float
    phi: float
    phi_nl: float
    d: float
    Q: float
    T: float
    A: float
    beta: float
    n_i: float = 0.0

    def __post_init__(self):
        vals = (self.b, self.phi, self.phi_nl, self.d, self.Q, self.T, self.A, self.beta, self.n_i)
        _check(all(math.isfinite(v) for v in vals), "normalized parameters must be finite")
        _check(self.b > 0 and self.d > 0 and self.Q > 0, "b, d and Q must be positive")
        _check(self.n_i >= 0, "n_i must be non-negative")
        _check(self.T + self.A > 0, "T + A must be positive")

    @property
    def betaA(self) -> float:
        return self.beta * self.A

    def replace(self, **changes) -> "NormalizedParams":
        return replace(self, **changes)


# The quantum mirror-field coupling carries sqrt(2) factors that leave it 8R
# times weaker than the classical Fabry-Perot response at the same photon
# number. The dynamical coupling handed to the normalized engine is rescaled by
# this factor; the static nonlinear detuning is used unscaled.
def coupling_bridge(cavity: CavitySpec) -> float:
    return 8.0 * cavity.R


def nonlinear_detuning_per_photon(system: System) -> float:
    """Static nonlinear detuning per intracavity photon, Delta_nl / |alpha|^2 [rad/s]."""
    cav, mech, pt = system.cavity, system.mech, system.pt
    return HBAR * cav.k ** 2 / (mech.K * cav.tau0 ** 2) * (1 + pt.beta * cav.A)


def thermal_occupancy(T_env: float, omega0: float) -> float:
    """Bose occupancy of a mode at omega0 in a bath at T_env."""
    if T_env < 0:
        raise ParameterError("T_env must be non-negative")
    if T_env == 0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega0 / (K_B * T_env))


def _steady_state(system: System, alpha_sq: float, slope: float) -> SteadyState:
    cav, mech, pt = system.cavity, system.mech, system.pt
    delta_nl = nonlinear_detuning_per_photon(system) * alpha_sq
    x_mean = math.sqrt(2) * HBAR * cav.k / (mech.K * cav.tau0) * (1 + pt.beta * cav.A) * alpha_sq
    return SteadyState(alpha_sq=alpha_sq, Delta=system.drive.delta_c - delta_nl,
                       Delta_nl=delta_nl, x_mean=x_mean, stable=bool(slope > 0))


def steady_state_residual(system: System, alpha_sq: float) -> float:
    """Relative residual of the self-consistency condition at alpha_sq."""
    cav = system.cavity
    source = cav.T / cav.tau0 * system.drive.photon_flux(cav)
    g = nonlinear_detuning_per_photon(system)
    lhs = alpha_sq * (cav.kappa ** 2 + (system.drive.delta_c - g * alpha_sq) ** 2)
    if source == 0:
        return abs(lhs)
    return (lhs - source) / source


def solve_steady_state(system: System) -> list[SteadyState]:
    """All real steady states of the driven cavity, ascending in |alpha|^2.

    In the scaled variable y = g*alpha^2/kappa (g the detuning per photon) the condition
    reads y*(1 + (delta - y)^2) = f, a cubic with one or three real roots.
    A root is stable when the left-hand side increases through it.
    """
    cav = system.cavity
    kappa = cav.kappa
    source = cav.T / cav.tau0 * system.drive.photon_flux(cav)
    if source == 0:
        return [_steady_state(system, 0.0, 1.0)]

    g = nonlinear_detuning_per_photon(system)
    delta = system.drive.delta_c / kappa
    f = source * g / kappa ** 3

    def poly(y):
        return y * (1 + (delta - y) ** 2) - f

    def dpoly(y):
        return 1 + (delta - y) ** 2 - 2 * y * (delta - y)

    raw = np.roots([1.0, -2 * delta, 1 + delta ** 2, -f])
    scale = max(1.0, abs(delta), f ** (1 / 3))
    roots = []
    for r in raw:
        if abs(r.imag) > 1e-6 * scale:
            continue
        y = r.real
        for _ in range(50):
            dp = dpoly(y)
            if dp == 0:
                break
            step = poly(y) / dp
            y -= step
            if abs(step) <= 1e-15 * max(abs(y), 1e-300):
                break
        roots.append(y)
    roots.sort()
    # collapse numerically coincident roots near the bistability threshold
    merged: list[float] = []
    for y in roots:
        if merged and abs(y - merged[-1]) <= 1e-9 * scale:
            continue
        merged.append(y)
    return [_steady_state(system, y * kappa / g, dpoly(y)) for y in merged]


def select_branch(states: list[SteadyState], branch: Optional[int] = None) -> SteadyState:
    """Pick one steady state; default is the lowest-|alpha|^2 stable branch."""
    if branch is not None:
        if not 0 <= branch < len(states):
            raise ParameterError(f"branch {branch} out of range: {len(states)} steady state(s)")
        return states[branch]
    for s in states:
        if s.stable:
            return s
    return states[0]


def normalize(system: System, ss: SteadyState) -> NormalizedParams:
    cav, mech, pt = system.cavity, system.mech, system.pt
    kappa = cav.kappa
    if kappa == 0:
        raise ParameterError("kappa must be non-zero")
    return NormalizedParams(
        b=mech.omega0 / kappa,
        phi=ss.Delta / kappa,
        phi_nl=coupling_bridge(cav) * ss.Delta_nl / (kappa * (1 + pt.beta * cav.A)),
        d=mech.omega0 * pt.tau_th,
        Q=mech.Q,
        T=cav.T,
        A=cav.A,
        beta=pt.beta,
        n_i=thermal_occupancy(system.drive.T_env, mech.omega0),
    )


def denormalize(params: NormalizedParams, *, L0: float = 1e-3, lam: float = 1064e-9,
                m: float = 1e-12, R: Optional[float] = None) -> tuple[System, SteadyState]:
    """Build an SI system (and its operating point) realizing `params`.

    The cavity length, wavelength and mass are free; everything else follows.
    """
    if params.phi_nl < 0:
        raise ParameterError("phi_nl must be non-negative to denormalize")
    cav = CavitySpec(L0=L0, lam=lam, T=params.T, A=params.A, R=R)
    kappa = cav.kappa
    omega0 = params.b * kappa
    mech = MechanicalSpec(m=m, omega0=omega0, Q=params.Q)
    pt = PhotothermalSpec(beta=params.beta, tau_th=params.d / omega0)
    if params.n_i == 0:
        T_env = 0.0
    else:
        T_env = HBAR * omega0 / (K_B * math.log1p(1.0 / params.n_i))

    delta_nl = params.phi_nl * kappa * (1 + params.beta * params.A) / coupling_bridge(cav)
    Delta = params.phi * kappa
    probe = System(cav, mech, pt, DriveSpec(P_inc=0.0, delta_c=Delta + delta_nl, T_env=T_env))
    g = nonlinear_detuning_per_photon(probe)
    alpha_sq = delta_nl / g
    source = alpha_sq * (kappa ** 2 + Delta ** 2)
    P_inc = source * cav.tau0 / cav.T * HBAR * cav.omega_L
    system = probe.with_drive(P_inc=P_inc)
    y = g * alpha_sq / kappa
    slope = 1 + (Delta / kappa) ** 2 - 2 * y * (Delta / kappa)
    return system, _steady_state(system, alpha_sq, slope)
