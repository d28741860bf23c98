"""Run the ten acceptance checks and print timings; optionally dump JSON."""

from __future__ import annotations

import argparse
import json
import sys

from orbivertex.checks import run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json", help="write results to this file")
    args = ap.parse_args(argv)
    results = run_all(threads=args.threads)
    for r in results:
        print(r.line())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([vars(r) for r in results], fh, indent=2)
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
