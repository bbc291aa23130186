"""Command-line front end.

Exit codes: 0 success, 1 oracle disagreement, 2 input error,
3 invalid operating point or simulation config, 4 no cooling found.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import analysis, classical, csvio, figures, oracle, quantum
from .config import Config, ConfigError, load
from .optimize import Bounds, NoCoolingError, minimize_n_min
from .params import ParameterError
from .sweep import SweepSpec
from . import sweep as sweep_mod

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INVALID, EXIT_NO_COOLING = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _json_default(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    raise TypeError(type(o).__name__)


def _finite_json(obj):
    # JSON has no inf/nan; keep them readable as strings
    if isinstance(obj, float) and not math.isfinite(obj):
        return csvio.fmt(obj)
    if isinstance(obj, dict):
        return {k: _finite_json(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite_json(v) for v in obj]
    return obj


def _need_config(args) -> Config:
    if not args.config:
        raise CliError(f"{args.command}: --config FILE is required", EXIT_INPUT)
    return load(args.config)


def _operating_point(cfg: Config, branch: Optional[int]):
    try:
        op = analysis.operating_point(cfg, branch)
    except ParameterError as exc:
        raise CliError(f"invalid operating point: {exc}", EXIT_INVALID) from None
    if op.steady is not None and not op.steady.stable:
        _print_states(op)
        raise CliError("invalid operating point: selected steady state is unstable", EXIT_INVALID)
    return op


def _print_states(op) -> None:
    states = list(op.all_states)
    print(f"[steady states] {len(states)} root(s), selected branch {states.index(op.steady)}")
    for i, s in enumerate(states):
        print(f"  {i}: alpha_sq={s.alpha_sq:.6g} Delta={s.Delta:.6g} rad/s stable={s.stable}")


def _print_block(title: str, data: dict) -> None:
    print(f"[{title}]")
    for k, v in data.items():
        if isinstance(v, float):
            v = csvio.fmt(v) if not math.isfinite(v) else f"{v:.6g}"
        print(f"  {k:<20} {v}")


def cmd_report(args) -> int:
    cfg = _need_config(args)
    op = _operating_point(cfg, args.branch)
    if op.system is not None:
        _print_states(op)
    try:
        doc = analysis.report_dict(op)
    except classical.InstabilityError as exc:
        raise CliError(f"invalid operating point: {exc}", EXIT_INVALID) from None
    _print_block("normalized", doc["normalized"])
    if "classical" in doc:
        _print_block("classical", doc["classical"])
    q = dict(doc["quantum"])
    if q["no_cooling"]:
        q["n_min"] = "no cooling"
    _print_block("quantum", q)
    path = os.path.join(args.out, "report.json")
    os.makedirs(args.out, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_finite_json(doc), fh, indent=2, default=_json_default)
        fh.write("\n")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cfg = _need_config(args)
    op = _operating_point(cfg, args.branch)
    spec = cfg.section("spectrum")
    try:
        lo, hi = float(spec.get("min", 1e-3)), float(spec.get("max", 1e4))
        count = int(spec.get("count", 400))
    except (TypeError, ValueError) as exc:
        raise CliError(f"malformed 'spectrum' block: {exc}", EXIT_INPUT) from None
    if not 0 < lo < hi or count < 2:
        raise CliError("'spectrum' needs 0 < min < max and count >= 2", EXIT_INPUT)
    half = np.geomspace(lo, hi, count)
    om = np.concatenate([-half[::-1], half])
    header, cols = ["Omega", "S_fopt"], [om, quantum.optical_force_spectrum(om, op.params)]
    meta = {"units": "Omega = omega/omega0; S_fopt normalized two-sided"}
    if op.system is not None:
        w = om * op.system.mech.omega0
        header += ["omega", "S_x_classical", "S_F_photothermal"]
        cols += [w, classical.position_psd_classical(w, op.system, op.steady),
                 classical.photothermal_force_psd(w, op.system, op.steady)]
        meta["si_units"] = "omega rad/s; S_x m^2 s; S_F N^2 s"
    path = os.path.join(args.out, "spectrum.csv")
    os.makedirs(args.out, exist_ok=True)
    csvio.write(path, header, np.column_stack(cols).tolist(), meta)
    print(f"wrote {path} ({len(om)} rows)")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _need_config(args)
    if "sweep" not in cfg.raw:
        raise CliError("config has no 'sweep' block", EXIT_INPUT)
    spec = SweepSpec.from_dict(cfg.raw["sweep"])
    header, rows = sweep_mod.run(cfg, spec, branch=args.branch, workers=args.workers)
    meta = {"axes": ";".join(f"{a.path}:{a.min}:{a.max}:{a.count}:{a.scale}" for a in spec.axes)}
    path = os.path.join(args.out, "sweep.csv")
    os.makedirs(args.out, exist_ok=True)
    csvio.write(path, header, rows, meta)
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def cmd_figure(args) -> int:
    fig = args.id
    res = args.resolution
    if args.config:
        sec = load(args.config).section("figure")
        fig = fig or sec.get("id")
        res = res or sec.get("resolution")
    if not fig:
        raise CliError("figure: give --id or a 'figure.id' config entry", EXIT_INPUT)
    try:
        job = figures.FigureJob(figure=str(fig), resolution=res, out_dir=args.out)
    except (figures.UnknownFigureError, ValueError) as exc:
        raise CliError(str(exc).strip("'\""), EXIT_INPUT) from None
    data = figures.build(job)
    for p in data.write(job.out_dir):
        print(f"wrote {p}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    cfg = _need_config(args)
    base = _operating_point(cfg, args.branch).params
    sec = cfg.section("optimize")
    try:
        bounds = Bounds(phi=tuple(map(float, sec.get("phi", (0.1, 10.0)))),
                        d=tuple(map(float, sec.get("d", (0.1, 1e5)))),
                        grid=int(sec.get("grid", 41)))
        top = int(sec.get("top", 5))
    except (TypeError, ValueError) as exc:
        raise CliError(f"malformed 'optimize' block: {exc}", EXIT_INPUT) from None
    try:
        res = minimize_n_min(base, bounds, top=top)
    except NoCoolingError as exc:
        raise CliError(str(exc), EXIT_NO_COOLING) from None
    print(f"best: phi={res.best.phi:.8g} d={res.best.d:.8g} n_min={res.best.n_min:.8g}")
    print(f"grid best: phi={res.grid_best.phi:.6g} d={res.grid_best.d:.6g} n_min={res.grid_best.n_min:.6g}")
    for i, c in enumerate(res.runner_ups, 1):
        print(f"  runner-up {i}: phi={c.phi:.6g} d={c.d:.6g} n_min={c.n_min:.6g}")
    rows = [["best", res.best.phi, res.best.d, res.best.n_min],
            ["grid", res.grid_best.phi, res.grid_best.d, res.grid_best.n_min]]
    rows += [[f"runner_up_{i}", c.phi, c.d, c.n_min] for i, c in enumerate(res.runner_ups, 1)]
    path = os.path.join(args.out, "optimize.csv")
    os.makedirs(args.out, exist_ok=True)
    csvio.write(path, ["kind", "phi", "d", "n_min"], rows,
                {"phi_bounds": bounds.phi, "d_bounds": bounds.d, "grid": bounds.grid,
                 "evaluations": res.n_evaluations})
    print(f"wrote {path}")
    return EXIT_OK


def _sim_config(cfg: Config, op, seed: int) -> oracle.SimConfig:
    sec = dict(cfg.section("oracle"))
    sec.pop("trajectory", None)
    try:
        if "dt" in sec:
            return oracle.SimConfig(seed=seed, **{k: (float(v) if k == "dt" else int(v)) for k, v in sec.items()})
        ints = {"steps_per_period", "n_realizations", "psd_segment_length"}
        kw = {k: (int(v) if k in ints else float(v)) for k, v in sec.items()}
        return oracle.SimConfig.auto(op.system, op.steady, seed=seed, **kw)
    except TypeError as exc:
        raise CliError(f"malformed 'oracle' block: {exc}", EXIT_INPUT) from None


def cmd_oracle(args) -> int:
    cfg = _need_config(args)
    if cfg.system is None:
        raise CliError("oracle needs an SI configuration (cavity/mechanics/photothermal/drive)", EXIT_INPUT)
    op = _operating_point(cfg, args.branch)
    try:
        sim = _sim_config(cfg, op, args.seed)
        cmp = oracle.compare_with_analytic(op.system, op.steady, sim)
    except (oracle.SimConfigError, classical.InstabilityError) as exc:
        raise CliError(f"invalid simulation config: {exc}", EXIT_INVALID) from None
    est = cmp.estimate
    verdict = "PASS" if cmp.passed else "FAIL"
    print(f"analytic <x^2>_cl   {cmp.analytic:.6e} m^2")
    print(f"monte carlo <x^2>   {est.var_x:.6e} m^2 (stderr {est.stderr_var:.2e}, "
          f"{est.n_realizations} realizations, dt {sim.dt:.3e} s, {sim.n_steps} steps)")
    print(f"relative difference {cmp.difference / cmp.analytic:+.4f}; allowed {cmp.allowed / cmp.analytic:.4f}")
    print(verdict)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "oracle.csv")
    csvio.write(path, ["analytic", "var_x", "stderr_var", "mean_x", "n_realizations", "passed"],
                [[cmp.analytic, est.var_x, est.stderr_var, est.mean_x, est.n_realizations, cmp.passed]],
                {"seed": sim.seed, "dt": sim.dt, "n_steps": sim.n_steps, "burn_in_steps": sim.burn_in_steps})
    print(f"wrote {path}")
    if cfg.section("oracle").get("trajectory"):
        traj = oracle.simulate_trajectory(op.system, op.steady, sim)
        tpath = os.path.join(args.out, "trajectory.csv")
        oracle.write_trajectory_csv(tpath, traj)
        print(f"wrote {tpath}")
    return EXIT_OK if cmp.passed else EXIT_MISMATCH


COMMANDS = {"report": cmd_report, "spectrum": cmd_spectrum, "sweep": cmd_sweep,
            "figure": cmd_figure, "optimize": cmd_optimize, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="photocool", description="Photothermal cavity cooling engine")
    ap.add_argument("command", choices=list(COMMANDS))
    ap.add_argument("--config", help="JSON configuration file")
    ap.add_argument("--out", default=".", help="output directory (default: current)")
    ap.add_argument("--seed", type=int, default=0, help="oracle RNG seed")
    ap.add_argument("--branch", type=int, default=None, help="steady-state branch index (default: lowest stable)")
    ap.add_argument("--id", help="figure id for 'figure' (1a, 1b, 2a, 2b, 3)")
    ap.add_argument("--resolution", type=int, default=None, help="figure grid points per axis")
    ap.add_argument("--workers", type=int, default=None, help="sweep worker processes")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"photocool: {exc}", file=sys.stderr)
        return exc.code
    except ConfigError as exc:
        print(f"photocool: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
