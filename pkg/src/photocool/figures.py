"""Figure jobs: tabulated curves and surfaces plus a static SVG rendering.

Axis ranges the source figures leave implicit are chosen to bracket the
structure and are written into each CSV header.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from . import classical, csvio, presets, quantum, svgplot
from .params import C_LIGHT, HBAR, CavitySpec, NormalizedParams, denormalize

FIGURE_IDS = ("1a", "1b", "2a", "2b", "3")
DEFAULT_RESOLUTION = {"1a": 401, "1b": 41, "2a": 401, "2b": 41, "3": 241}


class UnknownFigureError(KeyError):
    pass


@dataclass(frozen=True)
class FigureJob:
    figure: str
    resolution: Optional[int] = None
    out_dir: str = "."

    def __post_init__(self):
        if self.figure not in FIGURE_IDS:
            raise UnknownFigureError(f"unknown figure id '{self.figure}'; choose from {', '.join(FIGURE_IDS)}")
        if self.resolution is not None and self.resolution < 3:
            raise ValueError("resolution must be at least 3")

    @property
    def n(self) -> int:
        return self.resolution or DEFAULT_RESOLUTION[self.figure]


@dataclass
class FigureData:
    figure: str
    header: list
    rows: list
    meta: dict = field(default_factory=dict)
    svg: str = ""

    def write(self, out_dir) -> tuple[str, str]:
        os.makedirs(out_dir, exist_ok=True)
        stem = os.path.join(out_dir, f"fig{self.figure}")
        csvio.write(stem + ".csv", self.header, self.rows, self.meta)
        with open(stem + ".svg", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.svg)
        return stem + ".csv", stem + ".svg"


def _odd(n: int) -> int:
    return n if n % 2 else n + 1


def _signed_log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    half = np.geomspace(lo, hi, max(n // 2, 2))
    return np.concatenate([-half[::-1], half])


def _base_meta(job_id: str, **extra) -> dict:
    meta = {"figure": job_id, "T": presets.T_REF, "A": presets.A_REF}
    meta.update(extra)
    return meta


# Fig. 1a: photothermal shot-noise force over the radiation-pressure maximum
def photothermal_to_rp_ratio(omega_tau, phi: float = 1.0, beta: float = presets.BETA_REF,
                             A: float = presets.A_REF, T: float = presets.T_REF):
    p = NormalizedParams(b=0.01, phi=phi, phi_nl=1e-3, d=1.0, Q=1e6, T=T, A=A, beta=beta)
    system, ss = denormalize(p)
    tau = system.pt.tau_th
    omega = np.asarray(omega_tau, dtype=float) / tau
    pt_force = classical.photothermal_force_psd(omega, system, ss)
    rp_max = (2 * system.cavity.R / C_LIGHT) ** 2 * classical.circ_power_psd(ss.Delta, system.cavity,
                                                                              system.drive, ss)
    return pt_force / rp_max


def crossing_omega_tau(phi: float = 1.0, beta: float = presets.BETA_REF, A: float = presets.A_REF,
                       T: float = presets.T_REF) -> float:
    """omega tau_th where the photothermal noise falls to the radiation-pressure maximum."""
    g = lambda lx: math.log(float(photothermal_to_rp_ratio(10 ** lx, phi, beta, A, T)))
    if g(-6) <= 0:
        return 0.0
    return 10 ** brentq(g, -6, 12, xtol=1e-12)


def fig1a(n: int) -> FigureData:
    x = _signed_log_grid(1e-3, 1e4, n)
    r = photothermal_to_rp_ratio(x)
    cross = crossing_omega_tau()
    pos = x > 0
    svg = svgplot.line_chart([("photothermal / RP max", x[pos], r[pos])], logx=True, logy=True,
                             hline=1.0, title="Photothermal force noise, beta A = 100",
                             xlabel="omega tau_th", ylabel="S_pt / S_rp(omega = Delta)")
    meta = _base_meta("1a", beta=presets.BETA_REF, phi=1.0, x_axis="omega*tau_th signed log +-[1e-3,1e4]",
                      crossing_omega_tau=repr(cross))
    return FigureData("1a", ["omega_tau", "ratio"], [[a, b] for a, b in zip(x, r)], meta, svg)


# Fig. 1b: normalized temperature in the strong-cooling limit
def strong_cooling_temperature(phi: float, d: float, tau_th: float = presets.TAU_TH_FIG1B,
                               beta: float = presets.BETA_REF, A: float = presets.A_REF,
                               T: float = presets.T_REF) -> float:
    """2 K_eff <x^2>/(hbar omega0) + 1 with the shot-noise-limited variance."""
    kappa = CavitySpec(L0=1e-3, lam=1064e-9, T=T, A=A).kappa
    b = d / (tau_th * kappa)
    system, ss = denormalize(NormalizedParams(b=b, phi=phi, phi_nl=1e-6, d=d, Q=1e6, T=T, A=A, beta=beta))
    energy = classical.strong_cooling_variance(system, ss)
    return 2 * energy / (HBAR * system.mech.omega0) + 1


def fig1b(n: int) -> FigureData:
    n = _odd(n)
    phis = np.geomspace(0.1, 10, n)
    ds = np.geomspace(1, 1e2 * presets.BETA_REF * presets.A_REF, n)
    z = np.array([[strong_cooling_temperature(ph, d) for d in ds] for ph in phis])
    svg = svgplot.heatmap(ds, phis, z, logx=True, logy=True, logz=True,
                          title="Normalized temperature, strong cooling, tau_th = 1 ms",
                          xlabel="omega0 tau_th", ylabel="Delta / kappa")
    meta = _base_meta("1b", beta=presets.BETA_REF, tau_th=presets.TAU_TH_FIG1B,
                      phi_axis="log [0.1,10]", d_axis="log [1,1e4]")
    rows = [[ph, d, z[i, j]] for i, ph in enumerate(phis) for j, d in enumerate(ds)]
    return FigureData("1b", ["phi", "d", "T_normalized"], rows, meta, svg)


def fig2a(n: int) -> FigureData:
    p = presets.FIG2A
    om = _signed_log_grid(1e-3, 1e4, n)
    s = quantum.optical_force_spectrum(om, p)
    pos = om > 0
    svg = svgplot.line_chart([("Omega > 0", om[pos], s[pos]), ("Omega < 0", -om[~pos][::-1], s[~pos][::-1])],
                             logx=True, logy=True, title="Optical force noise spectrum",
                             xlabel="|Omega|", ylabel="S_fopt")
    s_plus, s_minus = quantum.sideband_pair(p)
    meta = _base_meta("2a", beta=p.beta, phi=p.phi, d=p.d, b=p.b, Omega_axis="signed log +-[1e-3,1e4]",
                      S_plus1=repr(s_plus), S_minus1=repr(s_minus))
    return FigureData("2a", ["Omega", "S"], [[a, b] for a, b in zip(om, s)], meta, svg)


def fig2b_variance(phi: float, d: float, base: NormalizedParams = presets.FIG2B) -> float:
    """Strong-cooling variance in the large-coupling limit; nan where the point is not damped."""
    p = base.replace(phi=phi, d=d)
    if quantum.backaction_shift_damping(p).gamma_eff_over_gamma <= 0:
        return math.nan
    return quantum.variance_strong_cooling(p).deltaX2


def fig2b(n: int) -> FigureData:
    n = _odd(n)
    phis = np.geomspace(0.1, 10, n)
    ds = np.geomspace(1, 1e2 * presets.FIG2B.betaA, n)
    z = np.array([[fig2b_variance(ph, d) for d in ds] for ph in phis])
    svg = svgplot.heatmap(ds, phis, z, logx=True, logy=True, logz=True,
                          title="Normalized variance, strong cooling", xlabel="d = omega0 tau_th",
                          ylabel="phi = Delta / kappa")
    p = presets.FIG2B
    meta = _base_meta("2b", beta=p.beta, b=p.b, Q=p.Q, phi_nl=p.phi_nl,
                      phi_axis="log [0.1,10]", d_axis="log [1,1e4]")
    rows = [[ph, d, z[i, j]] for i, ph in enumerate(phis) for j, d in enumerate(ds)]
    return FigureData("2b", ["phi", "d", "deltaX2"], rows, meta, svg)


def fig3_curve(ds, beta_a: float, base: NormalizedParams = presets.FIG3) -> np.ndarray:
    p = base.replace(beta=beta_a / base.A)
    return np.array([quantum.n_min(p.replace(d=float(d))) for d in ds])


def fig3(n: int) -> FigureData:
    ds = np.geomspace(0.1, 1e5, n)
    curves = {ba: fig3_curve(ds, ba) for ba in presets.FIG3_BETA_A}
    series = [(f"beta A = {ba:g}", ds, c) for ba, c in curves.items()]
    svg = svgplot.line_chart(series, logx=True, logy=True, hline=1.0, title="Minimum phonon occupancy",
                             xlabel="d = omega0 tau_th", ylabel="n_min")
    p = presets.FIG3
    meta = _base_meta("3", b=p.b, phi=p.phi, d_axis="log [0.1,1e5]",
                      **{f"min_n_min_betaA_{ba:g}": repr(float(np.min(c))) for ba, c in curves.items()})
    header = ["d"] + [f"n_min_betaA_{ba:g}" for ba in curves]
    rows = [[d] + [curves[ba][i] for ba in curves] for i, d in enumerate(ds)]
    return FigureData("3", header, rows, meta, svg)


_BUILDERS = {"1a": fig1a, "1b": fig1b, "2a": fig2a, "2b": fig2b, "3": fig3}


def build(job: FigureJob) -> FigureData:
    return _BUILDERS[job.figure](job.n)
