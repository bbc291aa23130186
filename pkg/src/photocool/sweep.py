"""Rectangular parameter sweeps over one or two config paths."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import analysis
from .config import SI_BLOCKS, Config, ConfigError, from_dict, with_value

SERIAL_BELOW = 64


@dataclass(frozen=True)
class Axis:
    path: str
    min: float
    max: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise ConfigError(f"axis {self.path}: count must be >= 2")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"axis {self.path}: scale must be 'linear' or 'log'")
        if self.scale == "log" and not (self.min > 0 and self.max > 0):
            raise ConfigError(f"axis {self.path}: log spacing needs positive bounds")

    @property
    def column(self) -> str:
        return self.path.partition(".")[2]

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[Axis, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError("a sweep needs one or two axes")
        if len({a.path for a in self.axes}) != len(self.axes):
            raise ConfigError("sweep axes must be distinct")
        if not self.outputs:
            raise ConfigError("a sweep needs at least one output")
        unknown = [o for o in self.outputs if o not in analysis.OUTPUTS]
        if unknown:
            raise ConfigError(f"unknown output(s): {', '.join(unknown)}")

    @classmethod
    def from_dict(cls, data) -> "SweepSpec":
        if not isinstance(data, dict):
            raise ConfigError("'sweep' must be an object with 'axes' and 'outputs'")
        try:
            axes = tuple(Axis(path=a["path"], min=float(a["min"]), max=float(a["max"]),
                              count=int(a["count"]), scale=a.get("scale", "linear"))
                         for a in data.get("axes", []))
            outputs = tuple(data.get("outputs", ("gamma_eff_ratio", "deltaX2", "n_min")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed sweep axis: {exc}") from None
        return cls(axes=axes, outputs=outputs)

    def grid(self) -> list[tuple[float, ...]]:
        """Grid points, first axis slowest."""
        return list(itertools.product(*(a.values() for a in self.axes)))


def _point(args) -> list[float]:
    raw, paths, values, outputs, branch = args
    for path, v in zip(paths, values):
        raw = with_value(raw, path, v)
    try:
        cfg = from_dict(raw)
    except ConfigError:
        return [float("nan")] * len(outputs)
    op = analysis.safe_operating_point(cfg, branch)
    if op is None:
        return [float("nan")] * len(outputs)
    res = analysis.evaluate(op, outputs)
    return [res[o] for o in outputs]


def run(cfg: Config, spec: SweepSpec, branch: Optional[int] = None,
        workers: Optional[int] = None) -> tuple[list[str], list[list[float]]]:
    """Evaluate the grid; rows come back in grid order whatever the pool does."""
    for a in spec.axes:
        with_value(cfg.raw, a.path, a.min)  # validates the path up front
    raw = {k: v for k, v in cfg.raw.items() if k in ("normalized", *SI_BLOCKS)}
    paths = [a.path for a in spec.axes]
    grid = spec.grid()
    jobs = [(raw, paths, pt, spec.outputs, branch) for pt in grid]
    if workers is None:
        workers = min(os.cpu_count() or 1, 8)
    if workers <= 1 or len(jobs) < SERIAL_BELOW:
        results = [_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    header = [a.column for a in spec.axes] + list(spec.outputs)
    rows = [list(pt) + res for pt, res in zip(grid, results)]
    return header, rows

