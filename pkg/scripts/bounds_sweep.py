"""Bound sandwich over a family of shapes and Robin parameters (CSV on stdout)."""

import argparse
import math
import sys

import numpy as np

from honeyrobin.bounds import compute_bounds, reports_to_csv
from honeyrobin.geometry import area, random_convex_polygon, rectangle, regular_ngon, unit_square


def shapes():
    pent = random_convex_polygon(np.random.default_rng(5), 5)
    return {
        "square": unit_square(),
        "hexagon": regular_ngon(6, 1.0),
        "rect4x1": rectangle(4.0, 1.0),
        "rect1x0.05": rectangle(1.0, 0.05),
        "pentagon": pent.scaled(1.0 / math.sqrt(area(pent))),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--betas", default="0.01,0.1,1,10,100")
    args = ap.parse_args()
    reps = [compute_bounds(P, float(b), name) for name, P in shapes().items() for b in args.betas.split(",")]
    sys.stdout.write(reports_to_csv(reps))
    bad = [r for r in reps if not r.sandwich_ok]
    for r in bad:
        print(r.shape, r.beta, r.violations, file=sys.stderr)
    sys.exit(4 if bad else 0)


if __name__ == "__main__":
    main()
