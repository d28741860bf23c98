"""Command-line front end.

Exit codes: 0 on success, 2 on a usage or domain error, 1 when a --check
verification (or selfcheck) fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .characters import char_table
from .checks import run_all
from .cyclo import I
from .gluing import (
    FootballParams,
    conifold_log,
    football_direct_product,
    football_product,
    football_sum,
)
from .hurwitz import ResourceLimitError, brute_force_hurwitz, hurwitz_number_r, phi, phi_at
from .partitions import (
    Partition,
    conjugate,
    dimension,
    hooks,
    kappa,
    n_stat,
    parse_partition,
    partitions,
    z_factor,
)
from .series import MultiSeries, PrecisionLoss, SeriesDomainError, TruncationSpec, log_series
from .symfunc import GeometricRay, hook_principal, jacobi_trudi, schur, twisted_rays
from .vertex import (
    ikv_one_leg,
    ikv_vertex,
    r_series,
    r_series_closed,
    r_series_from_closed,
    refined_vertex,
    smooth_vertex,
    vertex_at_infinity,
    vertex_in_hbar,
)


class CheckFailed(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r} ({exc})") from None


def _nonneg_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbivertex",
        description="Exact orbifold refined vertex, Hurwitz series and glued partition functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    p = add("partition", "statistics of a partition, or all partitions of --order")
    p.add_argument("--mu", type=_partition)
    p.add_argument("--order", type=_nonneg_int, help="list the partitions of this size")

    p = add("chartable", "character table of S_d with d = --order")
    p.add_argument("--order", type=_positive_int, required=True)

    p = add("phi", "the series Phi_{nu,mu}(hbar), optionally at sqrt(-1)*tau*hbar")
    p.add_argument("--nu", type=_partition, required=True)
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument("--order", "--hbar-order", dest="order", type=_nonneg_int, default=6)
    p.add_argument("--tau", type=int)

    p = add("hurwitz", "double Hurwitz numbers H_{chi,nu,mu} with at most --order simple branch points")
    p.add_argument("--nu", type=_partition, required=True)
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument("--order", type=_nonneg_int, default=4)
    p.add_argument("--check", action="store_true", help="compare with the permutation count")

    p = add("schur", "s_lam at the union of rays (T, T q_{a-1}, ..., T q_1...q_{a-1}), T = (1, t, t^2, ...)")
    p.add_argument("--lam", type=_partition, required=True)
    p.add_argument("--a", type=_positive_int, default=1)
    p.add_argument("--order", "--t-order", dest="order", type=_nonneg_fraction, default=Fraction(8))
    p.add_argument("--check", action="store_true", help="compare with Jacobi-Trudi (and the hook formula for a=1)")

    p = add("vertex", "one-leg orbifold refined vertex in t, or the R-series in hbar")
    p.add_argument("--a", type=_positive_int, default=1)
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument(
        "--order", "--t-order", dest="order", type=_nonneg_fraction, default=Fraction(6),
        help="t-order of the Schur sum, before the t^{|mu|/2} prefactor",
    )
    p.add_argument("--hbar-order", type=_nonneg_int, help="expand in hbar instead (t = e^{i hbar})")
    p.add_argument("--tau", type=int, help="with --hbar-order: the framed R-series R_mu(hbar; tau)")
    p.add_argument("--check", action="store_true")

    p = add("ikv", "IKV refined vertex C_{lam mu nu}(t, q)")
    p.add_argument("--lam", type=_partition, default=Partition())
    p.add_argument("--mu", type=_partition, default=Partition())
    p.add_argument("--nu", type=_partition, default=Partition())
    p.add_argument("--order", type=_nonneg_fraction, default=Fraction(6))
    p.add_argument("--check", action="store_true", help="compare with the closed one-leg form")

    p = add("football", "local football partition function by gluing")
    p.add_argument("--a", type=_positive_int, default=1)
    p.add_argument("--b", type=_positive_int, default=1)
    p.add_argument("--q-order", type=_nonneg_int, default=3)
    p.add_argument("--order", "--t-order", dest="order", type=_nonneg_fraction, default=Fraction(6))
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--check", action="store_true", help="compare with the product formula")

    p = add("conifold", "resolved conifold partition function (a = b = 1)")
    p.add_argument("--q-order", type=_positive_int, default=3)
    p.add_argument("--order", "--t-order", dest="order", type=_nonneg_fraction, default=Fraction(6))
    p.add_argument("--log", action="store_true", help="print log Z from the closed form")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("selfcheck", help="run every acceptance identity", description="run every acceptance identity")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _series_payload(s: MultiSeries, fmt: str):
    return s.to_json() if fmt == "json" else s.to_text()


def _check(ok: bool, what: str):
    if not ok:
        raise CheckFailed(what)


def cmd_partition(args):
    if args.mu is None:
        if args.order is None:
            raise ValueError("give --mu or --order")
        return {"size": args.order, "partitions": [str(p) for p in partitions(args.order)]}
    mu = args.mu
    return {
        "partition": str(mu),
        "size": mu.size,
        "length": mu.length,
        "conjugate": str(conjugate(mu)),
        "z": z_factor(mu),
        "kappa": kappa(mu),
        "hooks": sorted(hooks(mu), reverse=True),
        "n": n_stat(mu),
        "dimension": dimension(mu),
    }


def cmd_chartable(args):
    return char_table(args.order).to_json()


def cmd_phi(args):
    if args.tau is None:
        s = phi(args.nu, args.mu, args.order)
    else:
        trunc = TruncationSpec.of(hbar=args.order)
        s = phi_at(args.nu, args.mu, MultiSeries.var("hbar", trunc) * (I * args.tau))
    return {"nu": str(args.nu), "mu": str(args.mu), "series": _series_payload(s, args.format)}


def cmd_hurwitz(args):
    nu, mu = args.nu, args.mu
    rows = []
    for r in range(args.order + 1):
        if (r - len(nu) - len(mu)) % 2:
            continue  # odd Euler characteristic: H vanishes by parity
        h = hurwitz_number_r(r, nu, mu)
        row = {"chi": -r + len(nu) + len(mu), "r": r, "nu": str(nu), "mu": str(mu), "H": str(h)}
        if args.check:
            bf = brute_force_hurwitz(r, nu, mu)
            row["brute_force"] = str(bf)
            _check(bf == h, f"Burnside vs permutation count at r={r}")
        rows.append(row)
    return rows


def cmd_schur(args):
    trunc = TruncationSpec.of(t=args.order)
    alphabet = GeometricRay("t") if args.a == 1 else twisted_rays(args.a)
    s = schur(args.lam, alphabet, trunc)
    if args.check:
        _check(s == jacobi_trudi(args.lam, alphabet, trunc), "character expansion vs Jacobi-Trudi")
        if args.a == 1:
            _check(s == hook_principal(args.lam, trunc), "character expansion vs hook formula")
    return {"lam": str(args.lam), "a": args.a, "series": _series_payload(s, args.format)}


def cmd_vertex(args):
    a, mu = args.a, args.mu
    if args.hbar_order is not None:
        if args.tau is not None:
            s = r_series(a, mu, args.tau, args.hbar_order)
            if args.check:
                _check(s == r_series_from_closed(a, mu, args.tau, args.hbar_order), "R-series framing identity")
        else:
            s = r_series_closed(a, mu, args.hbar_order)
            if args.check:
                _check(s == vertex_in_hbar(a, mu, args.hbar_order), "vertex at t = e^{i hbar} vs R-series")
    else:
        if args.tau is not None:
            raise ValueError("--tau needs --hbar-order")
        order = args.order + Fraction(mu.size, 2)
        s = refined_vertex(a, mu, order)
        if args.check:
            mirror = vertex_at_infinity(a, mu, order)
            renamed = mirror.rename({"q": "t", **{f"s_{k}": f"q_{k}" for k in range(1, a)}})
            _check(s == renamed, "vertex vs mirrored vertex at infinity")
            if a == 1:
                _check(s == smooth_vertex(mu, order), "vertex vs smooth form")
    return {"a": a, "mu": str(mu), "series": _series_payload(s, args.format)}


def cmd_ikv(args):
    s = ikv_vertex(args.lam, args.mu, args.nu, args.order)
    if args.check:
        legs = [(n, p) for n, p in (("lam", args.lam), ("mu", args.mu), ("nu", args.nu)) if p]
        if len(legs) > 1:
            raise ValueError("--check compares with the closed one-leg forms; give at most one nonempty leg")
        leg, part = legs[0] if legs else ("lam", Partition())
        _check(s == ikv_one_leg(leg, part, args.order), "general vs one-leg closed form")
    return {"lam": str(args.lam), "mu": str(args.mu), "nu": str(args.nu), "series": _series_payload(s, args.format)}


def cmd_football(args):
    params = FootballParams(args.a, args.b, args.q_order, args.order, args.threads)
    s = football_sum(params)
    if args.check:
        _check(s == football_product(params), "glued sum vs product formula")
        _check(s == football_direct_product(params), "glued sum vs multiplied-out product")
    return {"a": args.a, "b": args.b, "series": _series_payload(s, args.format)}


def cmd_conifold(args):
    params = FootballParams(1, 1, args.q_order, args.order, args.threads)
    if args.log:
        s = conifold_log(args.q_order, args.order)
        if args.check:
            _check(s == log_series(football_sum(params)), "closed log vs log of the glued sum")
    else:
        s = football_sum(params)
        if args.check:
            _check(s == football_product(params), "glued sum vs product formula")
    return {"log": args.log, "series": _series_payload(s, args.format)}


COMMANDS = {
    "partition": cmd_partition,
    "chartable": cmd_chartable,
    "phi": cmd_phi,
    "hurwitz": cmd_hurwitz,
    "schur": cmd_schur,
    "vertex": cmd_vertex,
    "ikv": cmd_ikv,
    "football": cmd_football,
    "conifold": cmd_conifold,
}


def _emit(result, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(result, indent=2) + "\n")
        return
    if isinstance(result, dict) and "series" in result:
        head = " ".join(f"{k}={v}" for k, v in result.items() if k != "series")
        out.write((head + "\n" if head else "") + result["series"] + "\n")
    elif isinstance(result, list):
        for row in result:
            out.write(" ".join(f"{k}={v}" for k, v in row.items()) + "\n")
    elif isinstance(result, dict) and "values" in result:
        out.write("  ".join(result["partitions"]) + "\n")
        for p, row in zip(result["partitions"], result["values"]):
            out.write(p + ": " + " ".join(str(v) for v in row) + "\n")
    else:
        for k, v in result.items():
            out.write(f"{k}: {v}\n")


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selfcheck":
        results = run_all(threads=args.threads, stop_on_failure=True)
        if args.format == "json":
            payload = [{"criterion": r.number, "name": r.name, "passed": r.ok, "cases": r.cases, "failure": r.failure} for r in results]
            out.write(json.dumps(payload, indent=2) + "\n")
        else:
            for r in results:
                out.write(r.line(timing=False) + "\n")
        return 0 if all(r.ok for r in results) else 1
    try:
        result = COMMANDS[args.command](args)
    except CheckFailed as exc:
        print(f"orbivertex {args.command}: check failed: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"orbivertex {args.command}: resource limit: {exc}", file=sys.stderr)
        return 2
    except (ValueError, SeriesDomainError, PrecisionLoss) as exc:
        print(f"orbivertex {args.command}: error: {exc}", file=sys.stderr)
        return 2
    _emit(result, args.format, out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
