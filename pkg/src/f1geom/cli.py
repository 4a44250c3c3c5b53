"""Command-line entry point.

Exit status: 0 on success, 1 when a verification tolerance is breached,
2 on bad arguments or unusable input files.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .monoid import FinMonoid, MonoidError, load, spec_space
from .scheme import DescriptorError, counting_polynomial, parse_descriptor, points_over_f1n, proj_line_points, realize
from .zeta import DivergenceError, TorsionError, eval_divisor, soule_limit, zeta_from_scheme

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _descriptor(text: str):
    """A scheme descriptor given inline (``affine:2``, JSON) or as a path to a descriptor file."""
    path = Path(text)
    if path.is_file():
        try:
            return parse_descriptor(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{text}: not valid JSON ({exc})") from None
    return parse_descriptor(text)


def _monoid(path: str):
    try:
        return load(path)
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None


def _grid(text: str) -> np.ndarray:
    try:
        a, b, h = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must look like a:b:h, got {text!r}") from None
    if not 1 < a < b or h <= 0:
        raise UsageError("grid needs 1 < a < b and h > 0")
    k = int(round((b - a) / h))
    return np.round(a + h * np.arange(k + 1), 10)


def _fmt_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


# --- subcommands ------------------------------------------------------------

def cmd_spec(args) -> int:
    x = spec_space(_monoid(args.monoid))
    print(f"points: {len(x.points)}")
    for pid, g in zip(x.points, x.stalk_units):
        print(f"  {pid}  dim {g.rank}  units {g}")
    print("opens:")
    for u in x.opens:
        print("  [" + ", ".join(x.points[i] for i in sorted(u)) + "]")
    return EXIT_OK


def cmd_count(args) -> int:
    x = realize(_descriptor(args.scheme))
    poly = counting_polynomial(x)
    if args.n is not None:
        print(points_over_f1n(x, args.n))
        return EXIT_OK
    if args.all_upto is not None:
        for n in range(1, args.all_upto + 1):
            print(f"{n} {points_over_f1n(x, n)}")
    print(f"N(x) = {poly}" if poly.torsion_free else "N(x): not a polynomial (torsion in the unit groups)")
    return EXIT_OK


def cmd_zeta(args) -> int:
    x = realize(_descriptor(args.scheme))
    d = zeta_from_scheme(x)
    print(d)
    if args.soule_check is None:
        return EXIT_OK
    s = args.soule_check
    limit = soule_limit(counting_polynomial(x), s)
    exact = eval_divisor(d, s)
    rel = abs(limit - exact) / abs(exact)
    print(f"s = {s:g}: Soule limit {limit:.10f}, divisor {exact:.10f}, relative error {rel:.2e}")
    return EXIT_OK if rel <= 1e-3 else EXIT_FAIL


def cmd_p1(args) -> int:
    m = _monoid(args.monoid)
    if not isinstance(m, FinMonoid):
        raise UsageError("p1 needs an explicit monoid table")
    pts = proj_line_points(m)
    print(f"|P1(M)| = {len(pts.points)} (2|M| - |M*| = {2 * m.size - len(m.unit_set)})")
    print("part     e1(a)  e2(b)  range")
    for p in pts.points:
        a = m.labels[p.chart1] if p.chart1 is not None else "-"
        b = m.labels[p.chart2] if p.chart2 is not None else "-"
        rng = _fmt_set(f"({m.labels[u]},{m.labels[v]})" for u, v in sorted(p.range))
        print(f"{p.part:<8} {a:<6} {b:<6} {rng}")
    part = pts.partition()
    print(f"e1 only {part['e1']}, e2 only {part['e2']}, overlap {part['overlap']}")
    return EXIT_OK


def cmd_zeros(args) -> int:
    from .analytic.zeros import zeros_cached

    table = zeros_cached(args.count, args.cache)
    for k, t in enumerate(table.heights, 1):
        print(f"{k} {t:.10f}")
    return EXIT_OK


def cmd_explicit(args) -> int:
    from .analytic.explicit import curve_csv, curve_rows
    from .analytic.zeros import zeros_cached

    grid = _grid(args.grid)
    table = zeros_cached(args.pairs, args.cache)
    text = curve_csv(curve_rows(table, args.pairs, grid))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
        print(f"wrote {len(grid)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .analytic.explicit import density_check, mellin_check, zero_sum_identities
    from .analytic.zeros import zeros_cached
    from .verification import DENSITY_BAND, MELLIN_TOL, OMEGA_TOL, format_report, run_all

    ok = True
    if args.suite == "all":
        results = run_all(args.cache)
        print(format_report(results))
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if args.suite == "identities":
        rows = zero_sum_identities(zeros_cached(args.pairs, args.cache), args.pairs)
        print(f"{'identity':<28} {'partial sum':>14} {'target':>14} {'residual':>10}")
        for r in rows:
            print(f"{r.name:<28} {r.value:>14.10f} {r.target:>14.10f} {r.residual:>10.2e}")
            ok &= r.residual <= OMEGA_TOL
    elif args.suite == "mellin":
        print(f"{'s':>4} {'lhs':>14} {'rhs':>14} {'residual':>10}")
        for s, tol in MELLIN_TOL.items():
            r = mellin_check(s, 1e5)
            print(f"{s:>4g} {r.lhs:>14.10f} {r.rhs:>14.10f} {r.residual:>10.2e}")
            ok &= r.residual <= tol
    else:
        rep = density_check()
        print(f"{'eps':>8} {'ratio':>10}")
        for e, r in zip(rep.eps, rep.ratios):
            print(f"{e:>8.0e} {r:>10.6f}")
        ok = rep.approaching_one and DENSITY_BAND[0] <= rep.ratios[-1] <= DENSITY_BAND[1]
    print("within tolerance" if ok else "TOLERANCE BREACHED")
    return EXIT_OK if ok else EXIT_FAIL


# --- parser -----------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _pairs(text: str) -> int:
    v = _positive(text)
    if v > 1000:
        raise argparse.ArgumentTypeError("at most 1000 zeros are supported")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="f1geom", description="Geometry over F1 and the counting function of Spec Z.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("spec", help="prime spectrum of a monoid file")
    q.add_argument("--monoid", required=True)
    q.set_defaults(func=cmd_spec)

    q = sub.add_parser("count", help="points over F1^n and the counting polynomial")
    q.add_argument("--scheme", required=True, help="P1, affine:n, torus:r, mu:d, JSON or descriptor file")
    g = q.add_mutually_exclusive_group()
    g.add_argument("--n", type=_positive)
    g.add_argument("--all-upto", type=_positive)
    q.set_defaults(func=cmd_count)

    q = sub.add_parser("zeta", help="zeta divisor of a torsion-free scheme")
    q.add_argument("--scheme", required=True)
    q.add_argument("--soule-check", type=float, metavar="S")
    q.set_defaults(func=cmd_zeta)

    q = sub.add_parser("p1", help="points of the projective line over a monoid")
    q.add_argument("--monoid", required=True)
    q.set_defaults(func=cmd_p1)

    q = sub.add_parser("zeros", help="zeros of zeta on the critical line")
    q.add_argument("--count", type=_pairs, required=True)
    q.add_argument("--cache")
    q.set_defaults(func=cmd_zeros)

    q = sub.add_parser("explicit", help="CSV of J(u) and its zero approximation J_m(u)")
    q.add_argument("--pairs", type=_pairs, required=True)
    q.add_argument("--grid", required=True, metavar="A:B:H")
    q.add_argument("--out", required=True, help="output CSV path, or - for stdout")
    q.add_argument("--cache")
    q.set_defaults(func=cmd_explicit)

    q = sub.add_parser("verify", help="residual reports; nonzero exit on a tolerance breach")
    q.add_argument("suite", nargs="?", default="all", choices=["identities", "mellin", "density", "all"])
    q.add_argument("--pairs", type=_pairs, default=500, help="zero pairs for the identities suite")
    q.add_argument("--cache")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DescriptorError, MonoidError, TorsionError, DivergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
