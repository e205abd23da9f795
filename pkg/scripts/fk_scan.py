"""Discrete Faber-Krahn scan: deficit statistics per number of sides."""

import argparse
from collections import defaultdict

import numpy as np

from honeyrobin.cheeger import fk_deficit
from honeyrobin.cli import fk_polygons


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    by_n = defaultdict(list)
    for P in fk_polygons(args.count, (3, args.n_max), args.seed):
        by_n[P.n].append(fk_deficit(P))
    print("n,count,min,median,max")
    for n in sorted(by_n):
        d = np.array(by_n[n])
        print(f"{n},{len(d)},{d.min():.3e},{np.median(d):.3e},{d.max():.3e}")


if __name__ == "__main__":
    main()
