"""Where the strong-cooling variance bottoms out on the Fig. 2b surface.

    python scripts/fig2b_floor.py

In the large-coupling limit deltaX2 = 2 n_min + 1, so deltaX2 <= 1.2 needs
n_min <= 0.1. This prints the floor at phi = 1 and over the whole (phi, d)
plane for the Fig. 2b cavity and for other sideband ratios b.
"""
import sys

import numpy as np
from scipy.optimize import minimize_scalar

from photocool import figures, presets, quantum

DS = np.geomspace(1, 1e6, 1201)
PHIS = np.geomspace(0.1, 10, 201)


def floor_at_phi(base, phi):
    v = np.array([figures.fig2b_variance(phi, d, base) for d in DS])
    i = int(np.nanargmin(v))
    res = minimize_scalar(lambda ld: figures.fig2b_variance(phi, 10 ** ld, base),
                          bracket=(np.log10(DS[max(i - 1, 0)]), np.log10(DS[i]), np.log10(DS[min(i + 1, len(DS) - 1)])))
    return res.fun, 10 ** res.x


def main():
    base = presets.FIG2B
    x2, d = floor_at_phi(base, 1.0)
    p = base.replace(d=d)
    print(f"b = {base.b}, beta A = {base.betaA:g}, phi = 1: min deltaX2 = {x2:.5f} at d = {d:.4g} "
          f"(n_min = {quantum.n_min(p):.5f})")
    best = min((floor_at_phi(base, ph)[0], ph) for ph in PHIS[::10])
    print(f"over phi in [0.1, 10]: min deltaX2 = {best[0]:.5f} at phi = {best[1]:.3g}")
    print("sideband ratio dependence at phi = 1:")
    for b in (0.01, 0.03, 0.1, 0.3, 1.0):
        x2, d = floor_at_phi(base.replace(b=b), 1.0)
        print(f"  b = {b:<5g} min deltaX2 = {x2:.4f} at d = {d:.4g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
