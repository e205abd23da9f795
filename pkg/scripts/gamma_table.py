"""Table of gamma(n) and gamma(n)^(2/5) with the disk limit 2 sqrt(pi)."""

import argparse
import math

from honeyrobin.cheeger import gamma_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=64)
    args = ap.parse_args()
    print("n,gamma,gamma_pow")
    for n, g, q in gamma_table(range(3, args.n_max + 1)):
        print(f"{n},{g!r},{q!r}")
    print(f"inf,{2 * math.sqrt(math.pi)!r},{(2 * math.sqrt(math.pi)) ** 0.4!r}")


if __name__ == "__main__":
    main()
