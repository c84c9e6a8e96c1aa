"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys

from .catalog import PiecewiseQuadratic1D, PowerAbs, ScaledSum
from .descriptor import parse_descriptor
from .oracle import alpha_sample_nd, ratio
from .palindromic import closed_form_alpha, closed_form_root, factor_check
from .symmetry import (
    DEFAULT_TOL,
    Interval,
    alpha_of,
    alpha_power,
    bregman_ratio_1d,
    stationarity_poly,
)
from .sweep import format_float, sweep, write_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _g17(x: float) -> str:
    return format(x, ".17g")


def _vector(v) -> str:
    return "[" + ", ".join(format_float(t) for t in v) + "]"


def _streams(out, err):
    # resolved per call so redirected sys.stdout/sys.stderr are honoured
    return (sys.stdout if out is None else out), (sys.stderr if err is None else err)


def _parse(text, err):
    try:
        return parse_descriptor(text)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=err)
        return None


def cmd_alpha(args, out=None, err=None) -> int:
    out, err = _streams(out, err)
    f = _parse(args.descriptor, err)
    if f is None:
        return EXIT_USAGE
    res = alpha_of(f, args.tol)
    if isinstance(res, Interval):
        print(f"interval: [{_g17(res.lo)}, {_g17(res.hi)}]", file=out)
        return EXIT_OK
    print(f"alpha: {_g17(res.alpha)}", file=out)
    print(f"method: {res.method.value}", file=out)
    if res.u0 is not None:
        print(f"u0: {_g17(res.u0)}", file=out)
        print(f"iterations: {res.iterations}", file=out)
        print(f"residual: {_g17(res.residual)}", file=out)
    return EXIT_OK


def cmd_sweep(args, out=None, err=None) -> int:
    out, err = _streams(out, err)
    try:
        rows = sweep(args.p_min, args.p_max, args.points, args.spacing, args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    if args.out == "-":
        write_csv(rows, out)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=err)
        return EXIT_IO
    print(f"wrote {len(rows)} rows to {args.out}", file=out)
    return EXIT_OK


def verification_checks(closed_forms_only=False):
    """Yield (name, passed, detail) for the built-in consistency checks."""
    for p in (2, 3, 4, 6, 8, 10):
        exact = closed_form_alpha(p)
        numeric = alpha_power(p).alpha
        yield (f"closed-form p={p}", abs(exact - numeric) <= 1e-10,
               f"closed={_g17(exact)} bisection={_g17(numeric)}")
    if closed_forms_only:
        return
    for p in range(4, 21, 2):
        yield f"factorization p={p}", factor_check(p), "g_p = (u+1)^4 h1 h2 exactly"
    for p in (4, 6, 8, 10):
        u0 = closed_form_root(p)
        res = abs(stationarity_poly(p, u0))
        a = 1.0 / bregman_ratio_1d(p, -u0)
        ok = 0.0 < u0 < 1.0 and res <= 1e-10 and abs(a - alpha_power(p).alpha) <= 1e-10
        yield f"factor root p={p}", ok, f"u0={_g17(u0)} |g_p(u0)|={res:.3g}"
    for num, den in ((4, 3), (3, 2), (5, 4), (6, 5)):
        p = num / den
        q = num / (num - den)
        a, b = alpha_power(p).alpha, alpha_power(q).alpha
        yield (f"conjugacy p={num}/{den}", abs(a - b) <= 1e-12,
               f"alpha(p)={_g17(a)} alpha(p/(p-1))={_g17(b)}")
    h = ScaledSum(((1.0, PowerAbs(4.0 / 3.0, 0.75)), (1.0, PiecewiseQuadratic1D(1.0, 1e-7)),
                   (1.0, PowerAbs(4.0, 0.25))))
    r = ratio(h, 1e-3, -5e-2)
    yield ("counterexample", r < 0.2676 < 2.0 - math.sqrt(3.0),
           f"ratio={_g17(r)} < 0.2676 < 2-sqrt(3)")


def cmd_verify(args, out=None, err=None) -> int:
    out, err = _streams(out, err)
    failed = []
    for name, ok, detail in verification_checks(args.closed_forms):
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=out)
        if not ok:
            failed.append(name)
    if failed:
        print(f"failed: {', '.join(failed)}", file=err)
        return EXIT_FAIL
    return EXIT_OK


def cmd_oracle(args, out=None, err=None) -> int:
    out, err = _streams(out, err)
    f = _parse(args.descriptor, err)
    if f is None:
        return EXIT_USAGE
    try:
        est = alpha_sample_nd(f, args.samples, args.seed, args.refine)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    print(f"alpha_hat: {_g17(est.alpha_hat)}", file=out)
    print(f"witness_x: {_vector(est.witness_x)}", file=out)
    print(f"witness_y: {_vector(est.witness_y)}", file=out)
    print(f"samples: {est.samples}", file=out)
    print(f"seed: {est.seed}", file=out)
    res = alpha_of(f)
    if isinstance(res, Interval):
        print(f"interval: [{_g17(res.lo)}, {_g17(res.hi)}]", file=out)
    else:
        print(f"alpha: {_g17(res.alpha)}", file=out)
        print(f"gap: {_g17(est.alpha_hat - res.alpha)}", file=out)
    return EXIT_OK


def _positive_float(text):
    v = float(text)
    if not v > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bregsym", description="Symmetry coefficients of Legendre reference functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="symmetry coefficient of a described function")
    p.add_argument("descriptor", help='e.g. "abs_pow(p=4)"')
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("sweep", help="write alpha(|.|^p) over a grid of p as CSV")
    p.add_argument("--p-min", type=float, default=2.0)
    p.add_argument("--p-max", type=float, default=1000.0)
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check closed forms, factorizations and the counterexample")
    p.add_argument("--closed-forms", action="store_true",
                   help="only compare closed forms against bisection")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="sampled brute-force estimate")
    p.add_argument("descriptor")
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--refine", type=_nonneg_int, default=40)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
