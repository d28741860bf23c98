"""Tabulate double Hurwitz numbers H_{chi,nu,mu} for |nu| = |mu| <= d_max."""

from __future__ import annotations

import argparse

from orbivertex.hurwitz import BRUTE_FORCE_MAX_DEGREE, BRUTE_FORCE_MAX_STEPS, brute_force_hurwitz, hurwitz_number_r
from orbivertex.partitions import partitions


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=3)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--brute-force", action="store_true", help="add the permutation count where affordable")
    args = ap.parse_args(argv)
    print(f"{'d':>2} {'r':>2} {'chi':>4} {'nu':<10} {'mu':<10} {'H':>10}" + ("  brute" if args.brute_force else ""))
    for d in range(1, args.d_max + 1):
        for nu in partitions(d):
            for mu in partitions(d):
                for r in range(args.r_max + 1):
                    h = hurwitz_number_r(r, nu, mu)
                    if not h:
                        continue
                    chi = -r + len(nu) + len(mu)
                    row = f"{d:>2} {r:>2} {chi:>4} {str(nu):<10} {str(mu):<10} {str(h):>10}"
                    if args.brute_force and d <= BRUTE_FORCE_MAX_DEGREE and r <= BRUTE_FORCE_MAX_STEPS:
                        row += f"  {brute_force_hurwitz(r, nu, mu)}"
                    print(row)


if __name__ == "__main__":
    main()
