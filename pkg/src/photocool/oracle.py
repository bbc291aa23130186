"""Time-domain stochastic simulation of the linearized classical dynamics.

State per realization: position x, velocity v and the photothermal memory
force F, with

    m dv = (-K x - m Gamma v + F) dt + dW_L
    dx   = v dt
    tau dF = (-F + G x) dt + beta (2R/c) dW_P

where G = beta (2R/c) dP_abs/dx and the cavity follows the mirror
instantaneously.

Noise bookkeeping. A two-sided angular PSD S (so that <y^2> = int S dw/2pi)
of white noise xi(t) means <xi(t) xi(t')> = S delta(t - t'). Its integral
over a step dt is Gaussian with variance S dt:

    Langevin force      S_L = 2 k_B T m Gamma      [N^2 s]
    absorbed power      S_P = hbar omega_L P_abs   [W^2 s]

Welch estimates in per-Hz two-sided units equal the angular two-sided
density at w = 2 pi f, since dw/2pi = df.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
from scipy import signal

from .classical import (absorbed_shot_psd, classical_variance, effective_dynamics,
                        langevin_force_psd, photothermal_stiffness)
from .params import C_LIGHT, SteadyState, System


class SimConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    dt: float
    n_steps: int
    n_realizations: int = 100
    burn_in_steps: int = 0
    seed: int = 0
    psd_segment_length: int = 4096
    chunk_steps: int = 4096

    @classmethod
    def auto(cls, system: System, ss: SteadyState, *, steps_per_period: int = 100,
             damping_times: float = 100.0, burn_in_damping_times: float = 6.0,
             n_realizations: int = 100, seed: int = 0, psd_segment_length: int = 4096) -> "SimConfig":
        """Pick dt and run length from the operating point's time scales."""
        dyn = effective_dynamics(system, ss)
        if not dyn.statically_stable or dyn.Gamma_eff <= 0:
            raise SimConfigError("cannot size a simulation for an unstable operating point")
        dt = min(2 * math.pi / dyn.omega_eff / steps_per_period,
                 _guard_dt(system, ss) * 0.999)
        return cls(dt=dt,
                   n_steps=int(math.ceil(damping_times / dyn.Gamma_eff / dt)),
                   n_realizations=n_realizations,
                   burn_in_steps=int(math.ceil(burn_in_damping_times / dyn.Gamma_eff / dt)),
                   seed=seed, psd_segment_length=psd_segment_length)


@dataclass(frozen=True)
class VarianceEstimate:
    mean_x: float
    var_x: float
    stderr_var: float
    n_effective_samples: float
    n_realizations: int


@dataclass(frozen=True)
class Spectrum:
    """Two-sided density over signed angular frequency, <y^2> = int S dw/2pi."""
    omega: np.ndarray
    density: np.ndarray

    @property
    def resolution(self) -> float:
        return float(self.omega[1] - self.omega[0])

    def variance(self) -> float:
        return float(np.sum(self.density) * self.resolution / (2 * math.pi))


@dataclass(frozen=True)
class LinearModel:
    m: float
    K: float
    Gamma: float
    G: float
    tau: float
    S_L: float
    force_per_watt: float
    S_P: float

    @classmethod
    def from_system(cls, system: System, ss: SteadyState) -> "LinearModel":
        mech = system.mech
        return cls(m=mech.m, K=mech.K, Gamma=mech.Gamma,
                   G=photothermal_stiffness(system, ss), tau=system.pt.tau_th,
                   S_L=langevin_force_psd(system),
                   force_per_watt=system.pt.beta * 2 * system.cavity.R / C_LIGHT,
                   S_P=absorbed_shot_psd(system.cavity, system.drive, ss))


def _guard_dt(system: System, ss: SteadyState) -> float:
    dyn = effective_dynamics(system, ss)
    return min(2 * math.pi / dyn.omega_eff, system.pt.tau_th, 1 / dyn.Gamma_eff) / 20


def validate(system: System, ss: SteadyState, sim: SimConfig) -> None:
    dyn = effective_dynamics(system, ss)
    problems = []
    if not dyn.statically_stable:
        problems.append("omega_eff^2 <= 0 (statically unstable)")
    if dyn.Gamma_eff <= 0:
        problems.append("Gamma_eff <= 0 (anti-damped)")
    if problems:
        raise SimConfigError("; ".join(problems))
    limit = _guard_dt(system, ss)
    if not 0 < sim.dt <= limit:
        problems.append(f"dt = {sim.dt:.4g} s exceeds stability limit {limit:.4g} s "
                        "(min(2pi/omega_eff, tau_th, 1/Gamma_eff)/20)")
    settle = 5 / dyn.Gamma_eff
    if sim.burn_in_steps * sim.dt < settle:
        problems.append(f"burn-in {sim.burn_in_steps * sim.dt:.4g} s shorter than 5/Gamma_eff = {settle:.4g} s")
    if sim.n_realizations < 2:
        problems.append("need at least 2 realizations for a standard error")
    if sim.n_steps <= sim.burn_in_steps:
        problems.append("n_steps must exceed burn_in_steps")
    if problems:
        raise SimConfigError("; ".join(problems))


def _streams(seed: int, realizations: Sequence[int]) -> list[np.random.Generator]:
    # counter-based stream per realization, independent of scheduling
    return [np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(r,))))
            for r in realizations]


def noise_chunks(seed: int, realizations: Sequence[int], n_steps: int, chunk: int) -> Iterator[np.ndarray]:
    """Standard-normal increments, shape (steps, realizations, 2), chunk by chunk."""
    rngs = _streams(seed, realizations)
    done = 0
    while done < n_steps:
        n = min(chunk, n_steps - done)
        yield np.stack([g.standard_normal((n, 2)) for g in rngs], axis=1)
        done += n


def integrate(model: LinearModel, dt: float, chunks: Iterable[np.ndarray], burn_in: int,
              record: Optional[int] = None):
    """Semi-implicit Euler-Maruyama for (x, v), exponential update for F.

    F integrates the memory kernel exactly with x interpolated linearly over
    the step, which removes the half-step lag of holding x fixed.

    Returns per-realization sums of x and x^2 over post-burn-in steps, the
    sample count, and (if `record` is a realization index) its trajectory.
    """
    decay = math.exp(-dt / model.tau)
    kick_L = math.sqrt(model.S_L * dt) / model.m
    kick_F = model.force_per_watt * math.sqrt(model.S_P * (1 - decay ** 2) / (2 * model.tau))
    w_new = 1 - model.tau / dt * (1 - decay)
    gain_old, gain_new = (1 - decay - w_new) * model.G, w_new * model.G
    k_over_m = model.K / model.m
    inv_m = 1 / model.m
    gam = model.Gamma

    x = v = F = None
    sx = sxx = None
    n_kept = 0
    step = 0
    traj = [] if record is not None else None
    for z in chunks:
        if x is None:
            n_real = z.shape[1]
            x, v, F = np.zeros(n_real), np.zeros(n_real), np.zeros(n_real)
            sx, sxx = np.zeros(n_real), np.zeros(n_real)
        for zi in z:
            v = v + dt * (F * inv_m - k_over_m * x - gam * v) + kick_L * zi[:, 0]
            x_old = x
            x = x + dt * v
            F = decay * F + gain_old * x_old + gain_new * x + kick_F * zi[:, 1]
            step += 1
            if step > burn_in:
                sx += x
                sxx += x * x
                n_kept += 1
                if traj is not None:
                    traj.append((step * dt, x[record], v[record], F[record]))
    return sx, sxx, n_kept, (np.array(traj) if traj is not None else None)


def _estimate(sx, sxx, n) -> VarianceEstimate:
    means = sx / n
    per_real = sxx / n - means ** 2
    mean_x = float(np.mean(means))
    var_x = float(np.mean(per_real))
    stderr = float(np.std(per_real, ddof=1) / math.sqrt(len(per_real)))
    n_eff = 2 * var_x ** 2 / stderr ** 2 if stderr > 0 else math.inf
    return VarianceEstimate(mean_x=mean_x, var_x=max(var_x, 0.0), stderr_var=stderr,
                            n_effective_samples=n_eff, n_realizations=len(per_real))


def simulate_classical(system: System, ss: SteadyState, sim: SimConfig) -> VarianceEstimate:
    """Ensemble estimate of the steady-state position variance."""
    validate(system, ss, sim)
    model = LinearModel.from_system(system, ss)
    chunks = noise_chunks(sim.seed, range(sim.n_realizations), sim.n_steps, sim.chunk_steps)
    sx, sxx, n, _ = integrate(model, sim.dt, chunks, sim.burn_in_steps)
    return _estimate(sx, sxx, n)


def simulate_trajectory(system: System, ss: SteadyState, sim: SimConfig, realization: int = 0) -> np.ndarray:
    """Post-burn-in trajectory of one realization, columns (t, x, v, F_pt).

    Uses the same noise stream as that realization inside `simulate_classical`.
    """
    validate(system, ss, sim)
    model = LinearModel.from_system(system, ss)
    chunks = noise_chunks(sim.seed, [realization], sim.n_steps, sim.chunk_steps)
    *_, traj = integrate(model, sim.dt, chunks, sim.burn_in_steps, record=0)
    return traj


def write_trajectory_csv(path, traj: np.ndarray) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "v", "F_pt"])
        for row in traj:
            w.writerow([repr(float(c)) for c in row])


def estimate_psd(samples, sim: SimConfig) -> Spectrum:
    """Welch (Hann, 50% overlap) two-sided PSD in the angular convention."""
    samples = np.asarray(samples, dtype=float)
    n = sim.psd_segment_length
    if n > samples.shape[-1]:
        raise ValueError(f"segment length {n} exceeds trajectory length {samples.shape[-1]}")
    f, s = signal.welch(samples, fs=1 / sim.dt, window="hann", nperseg=n,
                        return_onesided=False, scaling="density", detrend="constant", axis=-1)
    if s.ndim > 1:
        s = s.reshape(-1, s.shape[-1]).mean(axis=0)
    order = np.argsort(f)
    return Spectrum(omega=2 * math.pi * f[order], density=s[order])


@dataclass(frozen=True)
class OracleComparison:
    analytic: float
    estimate: VarianceEstimate
    rel_tol: float = 0.05
    n_sigma: float = 3.0

    @property
    def difference(self) -> float:
        return self.estimate.var_x - self.analytic

    @property
    def allowed(self) -> float:
        return max(self.rel_tol * self.analytic, self.n_sigma * self.estimate.stderr_var)

    @property
    def passed(self) -> bool:
        return abs(self.difference) <= self.allowed


def compare_with_analytic(system: System, ss: SteadyState, sim: SimConfig) -> OracleComparison:
    est = simulate_classical(system, ss, sim)
    return OracleComparison(analytic=classical_variance(system, ss).x2_classical, estimate=est)
