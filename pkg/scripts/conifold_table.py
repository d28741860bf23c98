"""Print the Q-expansion of the local football / conifold partition function.

For a = b = 1 also prints log Z next to the closed form, and the unrefined
limit q = t next to prod_n (1 - Q t^n)^n.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from orbivertex.gluing import (
    FootballParams,
    conifold_log,
    football_product,
    football_sum,
    unrefined_conifold_product,
    unrefined_limit,
)
from orbivertex.series import log_series


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--b", type=int, default=1)
    ap.add_argument("--q-order", type=int, default=3)
    ap.add_argument("--order", type=Fraction, default=Fraction(4))
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    params = FootballParams(args.a, args.b, args.q_order, args.order, args.threads)
    z = football_sum(params)
    print(f"sum == product: {z == football_product(params)}")
    for d in range(args.q_order + 1):
        print(f"[Q^{d}] Z = {z.coefficient('Q', d).to_text()}")
    if args.a == args.b == 1 and args.q_order >= 1:
        closed = conifold_log(args.q_order, args.order)
        logz = log_series(z)
        print(f"log Z == closed form: {logz == closed}")
        for d in range(1, args.q_order + 1):
            print(f"[Q^{d}] log Z = {logz.coefficient('Q', d).to_text()}")
        u = unrefined_limit(z)
        print(f"q = t limit == prod (1 - Q t^n)^n: {u == unrefined_conifold_product(args.q_order, args.order)}")


if __name__ == "__main__":
    main()
