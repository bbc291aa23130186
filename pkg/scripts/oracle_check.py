"""Monte-Carlo oracle against the analytic classical variance over several seeds.

    python scripts/oracle_check.py [--seeds 5] [--realizations 100]

Runs the thermal and strong-cooling configs and prints each relative error
next to the reported standard error, so the error model can be checked.
"""
import argparse
import os
import sys
import time

import numpy as np

from photocool import oracle
from photocool.config import load
from photocool.params import solve_steady_state

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
POINTS = ("undriven_thermal.json", "strong_cooling.json")


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--realizations", type=int, default=100)
    args = ap.parse_args(argv)
    for name in POINTS:
        cfg = load(os.path.join(ROOT, "configs", name))
        ss = solve_steady_state(cfg.system)[0]
        errs, reported = [], []
        t0 = time.perf_counter()
        for seed in range(args.seeds):
            sim = oracle.SimConfig.auto(cfg.system, ss, n_realizations=args.realizations, seed=seed)
            cmp = oracle.compare_with_analytic(cfg.system, ss, sim)
            errs.append(cmp.difference / cmp.analytic)
            reported.append(cmp.estimate.stderr_var / cmp.analytic)
            print(f"{name} seed {seed}: {errs[-1]:+.4f} (stderr {reported[-1]:.4f}) "
                  f"{'PASS' if cmp.passed else 'FAIL'}")
        print(f"{name}: mean {np.mean(errs):+.4f}, spread {np.std(errs, ddof=1):.4f}, "
              f"mean reported stderr {np.mean(reported):.4f}, {time.perf_counter() - t0:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
