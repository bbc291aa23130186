"""Single operating point: steady state, classical and quantum reports, named outputs."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from . import classical, quantum
from .config import Config, ConfigError
from .params import (NormalizedParams, ParameterError, SteadyState, System, normalize,
                     select_branch, solve_steady_state, thermal_occupancy)
from .quadrature import QuadratureError

# quantities a sweep can request; SI-only ones are nan for normalized configs
OUTPUTS = {
    "alpha_sq": "intracavity photon number (SI only)",
    "Delta_over_kappa": "dressed detuning phi",
    "omega_eff": "classical effective frequency [rad/s] (SI only)",
    "gamma_eff_ratio_classical": "classical Gamma_eff/Gamma (SI only)",
    "T_eff": "classical effective temperature [K] (SI only)",
    "T_eff_normalized": "2 m omega_eff^2 <x^2>/(hbar omega_eff) (SI only)",
    "gamma_eff_ratio": "Gamma_eff/Gamma including radiation pressure",
    "delta_omega": "normalized squared-frequency shift",
    "S_plus": "optical force spectrum at Omega = +1",
    "S_minus": "optical force spectrum at Omega = -1",
    "deltaX2": "normalized variance, peaked strong-cooling form",
    "deltaX2_full": "normalized variance by full quadrature",
    "occupancy": "(deltaX2 - 1)/2",
    "n_min": "detailed-balance minimum occupancy (inf without cooling)",
}
SI_ONLY = {"alpha_sq", "omega_eff", "gamma_eff_ratio_classical", "T_eff", "T_eff_normalized"}


@dataclass(frozen=True)
class OperatingPoint:
    params: NormalizedParams
    system: Optional[System] = None
    steady: Optional[SteadyState] = None
    all_states: Sequence[SteadyState] = ()


def operating_point(cfg: Config, branch: Optional[int] = None) -> OperatingPoint:
    if cfg.normalized is not None:
        return OperatingPoint(params=cfg.normalized)
    if cfg.system is None:
        raise ConfigError("configuration has neither SI blocks nor a 'normalized' block")
    states = solve_steady_state(cfg.system)
    ss = select_branch(states, branch)
    return OperatingPoint(params=normalize(cfg.system, ss), system=cfg.system, steady=ss,
                          all_states=tuple(states))


def quantum_report(p: NormalizedParams) -> quantum.QuantumCoolingReport:
    """Strong-cooling report; without net optical damping n_min is reported as inf."""
    rep = quantum.variance_strong_cooling(p)
    if rep.gamma_ratio <= 1:
        rep = quantum.QuantumCoolingReport(**{**asdict(rep), "n_min": math.inf, "cooling": False})
    return rep


def evaluate(op: OperatingPoint, outputs: Sequence[str]) -> dict:
    """Requested outputs as floats; unstable or undefined quantities become nan."""
    unknown = [o for o in outputs if o not in OUTPUTS]
    if unknown:
        raise ConfigError(f"unknown output(s): {', '.join(unknown)}; known: {', '.join(OUTPUTS)}")
    p = op.params
    out = {}
    ba = quantum.backaction_shift_damping(p)
    s_plus, s_minus = quantum.sideband_pair(p)
    cooling = ba.gamma_eff_over_gamma > 1
    for name in outputs:
        val = math.nan
        if name == "Delta_over_kappa":
            val = p.phi
        elif name == "gamma_eff_ratio":
            val = ba.gamma_eff_over_gamma
        elif name == "delta_omega":
            val = ba.delta_omega
        elif name == "S_plus":
            val = s_plus
        elif name == "S_minus":
            val = s_minus
        elif name == "n_min":
            val = quantum.n_min(p) if cooling else math.inf
        elif name in ("deltaX2", "occupancy"):
            if ba.gamma_eff_over_gamma > 0:
                x2 = quantum.variance_strong_cooling(p).deltaX2
                val = x2 if name == "deltaX2" else (x2 - 1) / 2
        elif name == "deltaX2_full":
            try:
                val = quantum.variance_full(p)
            except (classical.InstabilityError, QuadratureError):
                pass
        elif op.system is not None:
            val = _classical_output(name, op)
        out[name] = float(val)
    return out


def _classical_output(name: str, op: OperatingPoint) -> float:
    if name == "alpha_sq":
        return op.steady.alpha_sq
    dyn = classical.effective_dynamics(op.system, op.steady)
    if name == "omega_eff":
        return dyn.omega_eff
    if name == "gamma_eff_ratio_classical":
        return dyn.Gamma_eff / op.system.mech.Gamma
    try:
        var = classical.classical_variance(op.system, op.steady)
    except classical.InstabilityError:
        return math.nan
    return var.T_eff if name == "T_eff" else var.normalized_temperature


def report_dict(op: OperatingPoint) -> dict:
    """Everything the `report` command prints, as plain JSON-ready data.

    Raises InstabilityError when the selected point is anti-damped or
    statically unstable in either engine.
    """
    p = op.params
    doc = {"normalized": asdict(p)}
    if op.system is not None:
        sysm = op.system
        doc["steady_states"] = [asdict(s) for s in op.all_states]
        doc["selected_branch"] = list(op.all_states).index(op.steady)
        dyn = classical.effective_dynamics(sysm, op.steady)
        var = classical.classical_variance(sysm, op.steady)
        doc["classical"] = {
            "omega_eff": dyn.omega_eff,
            "Gamma_eff": dyn.Gamma_eff,
            "gamma_eff_ratio": dyn.Gamma_eff / sysm.mech.Gamma,
            "P_circ0": dyn.P_circ0,
            "P_abs0": dyn.P_abs0,
            "dPabs_dx": dyn.dPabs_dx,
            "x2_classical": var.x2_classical,
            "x2_total": var.x2_total,
            "T_eff": var.T_eff,
            "T_eff_normalized": var.normalized_temperature,
            "thermal_occupancy": thermal_occupancy(sysm.drive.T_env, sysm.mech.omega0),
            "strong_cooling": classical.is_strong_cooling(dyn, sysm.mech),
        }
    rep = quantum_report(p)
    doc["quantum"] = {
        "deltaX2": rep.deltaX2,
        "occupancy": rep.occupancy,
        "n_min": rep.n_min,
        "no_cooling": not rep.cooling,
        "gamma_eff_ratio": rep.gamma_ratio,
        "delta_omega": rep.delta_omega,
        "strong_cooling": rep.strong_cooling,
        "peaked_response": rep.peaked_response,
    }
    return doc


def safe_operating_point(cfg: Config, branch: Optional[int]) -> Optional[OperatingPoint]:
    """Operating point for grid work; None when the parameters are invalid."""
    try:
        return operating_point(cfg, branch)
    except ParameterError:
        return None
