"""Minimize n_min over (phi, d): grid scan, then bounded Nelder-Mead on log n_min."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as sopt

from . import quantum
from .params import NormalizedParams


class NoCoolingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Bounds:
    phi: tuple[float, float]
    d: tuple[float, float]
    grid: int = 41

    def __post_init__(self):
        if not self.phi[0] <= self.phi[1]:
            raise ValueError("phi bounds must satisfy lo <= hi (equal pins phi)")
        if not 0 < self.d[0] < self.d[1]:
            raise ValueError("d bounds must satisfy 0 < lo < hi")
        if self.grid < 2:
            raise ValueError("grid must have at least 2 points per axis")


@dataclass(frozen=True)
class Candidate:
    phi: float
    d: float
    n_min: float


@dataclass(frozen=True)
class OptimizeResult:
    best: Candidate
    runner_ups: tuple[Candidate, ...]
    grid_best: Candidate
    n_evaluations: int


def _objective(base: NormalizedParams):
    def f(z):
        phi, logd = z
        n = quantum.n_min(base.replace(phi=float(phi), d=float(10.0 ** logd)))
        return math.log(max(n, 1e-300)) if n < math.inf else math.inf
    return f


def minimize_n_min(base: NormalizedParams, bounds: Bounds, top: int = 5) -> OptimizeResult:
    """Deterministic for fixed inputs; raises NoCoolingError if the grid never cools."""
    pinned = bounds.phi[0] == bounds.phi[1]
    phis = np.array([bounds.phi[0]]) if pinned else np.linspace(*bounds.phi, bounds.grid)
    logds = np.linspace(math.log10(bounds.d[0]), math.log10(bounds.d[1]), bounds.grid)
    f = _objective(base)
    scores = np.array([[f((ph, ld)) for ld in logds] for ph in phis])
    finite = np.isfinite(scores)
    if not finite.any():
        raise NoCoolingError(f"no cooling anywhere in phi {bounds.phi}, d {bounds.d}")
    order = np.argsort(np.where(finite, scores, np.inf), axis=None)
    cands = []
    for flat in order[:top + 1]:
        i, j = np.unravel_index(flat, scores.shape)
        if finite[i, j]:
            cands.append(Candidate(phi=float(phis[i]), d=float(10 ** logds[j]),
                                   n_min=math.exp(scores[i, j])))
    start = cands[0]
    opts = {"xatol": 1e-8, "fatol": 1e-12, "maxiter": 4000}
    if pinned:
        res = sopt.minimize(lambda z: f((start.phi, z[0])), x0=[math.log10(start.d)], method="Nelder-Mead",
                            bounds=[(logds[0], logds[-1])], options=opts)
        z = (start.phi, res.x[0])
    else:
        res = sopt.minimize(f, x0=[start.phi, math.log10(start.d)], method="Nelder-Mead",
                            bounds=[bounds.phi, (logds[0], logds[-1])], options=opts)
        z = tuple(res.x)
    best = start
    if np.isfinite(res.fun) and res.fun <= math.log(start.n_min):
        best = Candidate(phi=float(z[0]), d=float(10 ** z[1]), n_min=math.exp(res.fun))
    return OptimizeResult(best=best, runner_ups=tuple(cands[1:top + 1]), grid_best=start,
                          n_evaluations=scores.size + int(res.nfev))
