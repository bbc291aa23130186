"""Write every figure (CSV + SVG) to an output directory.

    python scripts/reproduce_figures.py [--out figures] [--golden]

--golden also refreshes tests/golden/*.csv from this run.
"""
import argparse
import os
import shutil
import sys
import time

from photocool import figures

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(ROOT, "figures"))
    ap.add_argument("--golden", action="store_true")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    for fid in figures.FIGURE_IDS:
        data = figures.build(figures.FigureJob(fid))
        csv_path, svg_path = data.write(args.out)
        print(f"fig {fid}: {csv_path}, {svg_path}")
        if args.golden:
            dest = os.path.join(ROOT, "tests", "golden")
            os.makedirs(dest, exist_ok=True)
            shutil.copy(csv_path, dest)
    print(f"done in {time.perf_counter() - t0:.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
