"""Regenerate the example configurations in configs/."""
import json
import math
import os
import sys

from photocool import presets
from photocool.config import params_to_dict, system_to_dict
from photocool.params import (HBAR, CavitySpec, DriveSpec, MechanicalSpec, PhotothermalSpec, System,
                              nonlinear_detuning_per_photon)

OUT = os.path.join(os.path.dirname(__file__), "..", "configs")


def dump(name, doc):
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print("wrote", os.path.normpath(path))


def thermal_system(Q=100.0, T_env=300.0):
    cav = CavitySpec(L0=1e-3, lam=1064e-9, T=presets.T_REF, A=presets.A_REF)
    omega0 = 2 * math.pi * 1e5
    return System(cav, MechanicalSpec(m=1e-12, omega0=omega0, Q=Q),
                  PhotothermalSpec(beta=presets.BETA_REF, tau_th=1 / omega0),
                  DriveSpec(P_inc=0.0, delta_c=cav.kappa, T_env=T_env))


def bistable_system(delta=3.0, f=4.0):
    # y (1 + (delta - y)^2) = f has three real roots for delta = 3, f = 4
    # beta = 0 keeps the classical spring from softening the mode to instability
    base = thermal_system(Q=1e5, T_env=0.0)
    base = System(base.cavity, base.mech, PhotothermalSpec(beta=0.0, tau_th=base.pt.tau_th), base.drive)
    cav = base.cavity
    g = nonlinear_detuning_per_photon(base)
    source = f * cav.kappa ** 3 / g
    return base.with_drive(P_inc=source * cav.tau0 / cav.T * HBAR * cav.omega_L, delta_c=delta * cav.kappa)


def main():
    os.makedirs(OUT, exist_ok=True)
    strong, _ = presets.flank_system(Q=1e5, gamma_ratio=1e3, n_i=50)
    dump("strong_cooling.json", {**system_to_dict(strong), "oracle": {"n_realizations": 100}})
    dump("undriven_thermal.json", {**system_to_dict(thermal_system()), "oracle": {"n_realizations": 100}})
    dump("bistable.json", system_to_dict(bistable_system()))
    dump("fig2a_normalized.json", params_to_dict(presets.FIG2A))
    dump("sweep_phi_beta0.json", {
        **params_to_dict(presets.FIG2A.replace(beta=0.0, b=0.5, Q=1e6, phi_nl=1e-6)),
        "sweep": {"axes": [{"path": "normalized.phi", "min": 0.1, "max": 5, "count": 50, "scale": "log"}],
                  "outputs": ["gamma_eff_ratio", "n_min", "deltaX2"]}})
    dump("sweep_fig2b.json", {
        **params_to_dict(presets.FIG2B),
        "sweep": {"axes": [{"path": "normalized.phi", "min": 0.1, "max": 10, "count": 41, "scale": "log"},
                           {"path": "normalized.d", "min": 1, "max": 1e4, "count": 41, "scale": "log"}],
                  "outputs": ["deltaX2", "n_min", "gamma_eff_ratio"]}})
    dump("optimize_beta0.json", {
        **params_to_dict(presets.FIG2A.replace(beta=0.0, b=2.0, phi_nl=1e-6)),
        "optimize": {"phi": [0.5, 5.0], "d": [0.1, 10.0], "grid": 31}})
    dump("optimize_fig3.json", {
        **params_to_dict(presets.FIG3.replace(beta=100.0 / presets.A_REF)),
        "optimize": {"phi": [1.0, 1.0], "d": [0.1, 1e5], "grid": 241}})
    dump("optimize_no_cooling.json", {
        **params_to_dict(presets.FIG3),
        "optimize": {"phi": [-5.0, -0.1], "d": [0.1, 1e5], "grid": 21}})
    return 0


if __name__ == "__main__":
    sys.exit(main())
