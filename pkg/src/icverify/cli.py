"""Command-line front end.

    icverify eval --c -1 --n 2 --x 1/2
    icverify table --c 0 --n 2 --grid uniform:0:5:51 --format csv
    icverify check --n-max 30 [--deep] [--seed S] [--format json|csv] [-o FILE]
    icverify entropy --n 3 --x 1/3
    icverify scan --c 1 --n 1/2 --grid uniform:0:5:201

Exit status: 0 all checks pass, 1 a check failed, 2 usage/config/I-O error.
The default interval precision (bits) comes from ICVERIFY_PRECISION.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction
import csv
import io
import json
from math import comb
import sys

from . import convexity_checks, entropy, exact_core, family_numeric, legendre_ratio
from .exact_core import DomainError
from .family_numeric import FamilyConfig, TruncationError
from .grids import DEFAULT_SEED, GridSpec, default_t_grid, default_x_grid, induction_t_grid, parse_grid, sample
from .intervals import DEFAULT_PRECISION
from .report import Tally, emit_report, enc, fmt_value, merge_reports

DEFAULT_N_MAX = 30
DEEP_N_MAX = 100


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: object = None
    n_max: int = DEFAULT_N_MAX
    c: int = -1
    x: Fraction | None = None
    grid: tuple = ()
    seed: int = DEFAULT_SEED
    precision: int = DEFAULT_PRECISION
    trunc_tol: float = family_numeric.DEFAULT_TRUNC_TOL
    x_max: Fraction = family_numeric.DEFAULT_X_MAX
    format: str = "json"
    output: str | None = None


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _n_value(text):
    v = _fraction(text)
    return int(v) if v.denominator == 1 else v


def build_parser():
    p = argparse.ArgumentParser(prog="icverify", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="starting interval precision in bits (env ICVERIFY_PRECISION)")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="index of coincidence at one point")
    e.add_argument("--c", type=int, choices=(-1, 0, 1), default=-1)
    e.add_argument("--n", type=_n_value, required=True)
    e.add_argument("--x", type=_fraction, required=True)
    e.add_argument("--x-max", type=_fraction, default=family_numeric.DEFAULT_X_MAX)
    e.add_argument("--trunc-tol", type=float, default=family_numeric.DEFAULT_TRUNC_TOL)

    t = sub.add_parser("table", parents=[common], help="tabulate S over a grid")
    t.add_argument("--c", type=int, choices=(-1, 0, 1), default=-1)
    t.add_argument("--n", type=_n_value, required=True)
    t.add_argument("--grid", required=True, help="e.g. uniform:0:5:51 or random:0:1:100:7")
    t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    t.add_argument("--x-max", type=_fraction, default=family_numeric.DEFAULT_X_MAX)
    t.add_argument("--trunc-tol", type=float, default=family_numeric.DEFAULT_TRUNC_TOL)

    c = sub.add_parser("check", parents=[common], help="run the full verification suite",
                       description="Runs every check in a fixed order. Defaults: n_max=30 "
                                   "(about 20 s); --deep uses n_max=100 (a few minutes). "
                                   "Polynomials are capped at n=%d." % exact_core.N_MAX)
    c.add_argument("--n-max", type=int, default=None)
    c.add_argument("--deep", action="store_true", help=f"n_max={DEEP_N_MAX}")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--uniform", type=int, default=257, help="uniform x-grid size")
    c.add_argument("--randoms", type=int, default=100, help="seeded random rationals")

    en = sub.add_parser("entropy", parents=[common], help="order-2 Renyi/Tsallis entropies")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--x", type=_fraction, required=True)

    s = sub.add_parser("scan", parents=[common], help="numeric log-convexity scan of S_{n,c}")
    s.add_argument("--c", type=int, choices=(-1, 0, 1), required=True)
    s.add_argument("--n", type=_n_value, required=True)
    s.add_argument("--grid", default="uniform:0:5:201")
    s.add_argument("--x-max", type=_fraction, default=family_numeric.DEFAULT_X_MAX)
    s.add_argument("--trunc-tol", type=float, default=family_numeric.DEFAULT_TRUNC_TOL)
    return p


def run_suite(n_max, seed=DEFAULT_SEED, precision=None, uniform=257, randoms=100):
    """The full check list, in canonical order."""
    if not 1 <= n_max <= exact_core.N_MAX:
        raise DomainError(f"n_max must lie in [1, {exact_core.N_MAX}]")
    xg = default_x_grid(seed, uniform, randoms)
    reports = [merge_reports("symmetry", [exact_core.check_symmetry(n) for n in range(1, n_max + 1)])]

    central = Tally("central_value", sampler="explicit:1/2")
    for n in range(1, n_max + 1):
        v = exact_core.build_squared_binomial_poly(n)(Fraction(1, 2))
        want = Fraction(comb(2 * n, n), 4**n)
        central.record(v == want, n, Fraction(1, 2), v, want, margin=-abs(v - want), value=v)
    reports.append(central.report())

    reports.append(exact_core.check_heun(n_max, xg))
    reports.append(legendre_ratio.check_ratio_bound(n_max, default_t_grid(), precision))
    reports.append(legendre_ratio.check_induction_step(
        n_max, (GridSpec("explicit", values=(Fraction(1),)), induction_t_grid()), precision))
    reports.append(legendre_ratio.check_log_derivative(n_max, xg))
    reports.append(legendre_ratio.check_cross_identity(n_max, xg))
    reports.append(convexity_checks.check_sandwich(n_max, xg, precision))
    reports.append(convexity_checks.check_eq3(n_max, xg))
    reports.append(convexity_checks.assemble_logconvexity_verdict(n_max, xg, uniform))
    reports.append(entropy.check_renyi_concavity(n_max, xg))
    reports.append(entropy.check_tsallis_logconcavity(n_max, xg))
    return reports


def _rows_out(header, rows, fmt, meta):
    if fmt == "json":
        doc = dict(meta)
        doc["rows"] = [dict(zip(header, (enc(v) for v in r))) for r in rows]
        return (json.dumps(doc, indent=2) + "\n").encode()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", delimiter="," if fmt == "csv" else " ")
    if fmt == "csv":
        w.writerow(header)
    w.writerows([fmt_value(v) for v in r] for r in rows)
    return buf.getvalue().encode()


def _family(args):
    return FamilyConfig(args.c, args.n, x_max=args.x_max, trunc_tol=args.trunc_tol)


def _ic_row(cfg, x):
    v = family_numeric.index_of_coincidence(cfg, x)
    row = [x, v.value, v.tail_bound]
    if cfg.c == -1:
        row.append(v.exact)
    return row


def dispatch(args):
    """Return (exit status, payload bytes)."""
    if args.command == "eval":
        cfg = _family(args)
        v = family_numeric.index_of_coincidence(cfg, args.x)
        fmt = args.format or "text"
        if fmt == "text":
            parts = [fmt_value(v.exact)] if v.exact is not None else []
            parts.append(repr(v.value))
            if cfg.c != -1:
                parts.append(f"tail_bound={v.tail_bound!r}")
            return 0, (" ".join(parts) + "\n").encode()
        header = ["x", "S", "tail_bound"] + (["exact"] if cfg.c == -1 else [])
        meta = {"command": "eval", "c": cfg.c, "n": enc(cfg.n)}
        return 0, _rows_out(header, [_ic_row(cfg, args.x)], fmt, meta)

    if args.command == "table":
        cfg = _family(args)
        pts = sample(parse_grid(args.grid, args.seed))
        rows = [_ic_row(cfg, x) for x in pts]
        header = ["x", "S", "tail_bound"] + (["exact"] if cfg.c == -1 else [])
        meta = {"command": "table", "c": cfg.c, "n": enc(cfg.n), "grid": args.grid, "seed": args.seed}
        return 0, _rows_out(header, rows, args.format or "csv", meta)

    if args.command == "check":
        n_max = args.n_max if args.n_max is not None else (DEEP_N_MAX if args.deep else DEFAULT_N_MAX)
        reports = run_suite(n_max, args.seed, args.precision, args.uniform, args.randoms)
        fmt = args.format or "json"
        if fmt == "text":
            lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} points={r.points_checked} "
                     f"violations={r.violations}" for r in reports]
            payload = ("\n".join(lines) + "\n").encode()
        else:
            payload = emit_report(reports, fmt, suite=f"check n_max={n_max}",
                                  seed=args.seed, precision=args.precision)
        return (0 if all(r.passed for r in reports) else 1), payload

    if args.command == "entropy":
        pt = entropy.entropies(args.n, args.x, args.precision)
        lo, hi = (float(pt.renyi2.a), float(pt.renyi2.b))
        fmt = args.format or "text"
        if fmt == "text":
            return 0, f"tsallis2={fmt_value(pt.tsallis2)} renyi2=[{lo!r}, {hi!r}]\n".encode()
        header = ["x", "tsallis2", "renyi2_lo", "renyi2_hi"]
        meta = {"command": "entropy", "n": args.n, "precision": args.precision}
        return 0, _rows_out(header, [[pt.x, pt.tsallis2, lo, hi]], fmt, meta)

    if args.command == "scan":
        cfg = _family(args)
        grid = parse_grid(args.grid)
        rep = family_numeric.scan_logconvexity_numeric(cfg, grid)
        fmt = args.format or "json"
        if fmt == "text":
            payload = f"{'PASS' if rep.passed else 'FAIL'} {rep.name} points={rep.points_checked} ({rep.note})\n"
            return (0 if rep.passed else 1), payload.encode()
        return (0 if rep.passed else 1), emit_report([rep], fmt, suite="scan", seed=None,
                                                     precision=None)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad usage
    try:
        status, payload = dispatch(args)
    except (DomainError, UsageError, TruncationError, ValueError) as exc:
        print(f"icverify: error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except OSError as exc:
        print(f"icverify: cannot write output: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
