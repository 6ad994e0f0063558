"""Command-line interface.

Exit codes: 0 success (or probable prime), 1 negative answer (composite,
not Carmichael, bound violated), 2 usage error, 3 domain/parse/validation
error, 4 capacity error, 5 unexpected internal error. Data goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import secrets
import sys
from fractions import Fraction

from . import carmichael as cm
from . import local_model as lm
from . import stats
from .errors import CapacityError, DomainError, ParseError, ValidationError, ZDeepError
from .primality import Algorithm, run_test

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_DATA, EXIT_CAPACITY, EXIT_INTERNAL = range(6)


def _int(text):
    """Integer argument; accepts exact forms like 1e6 or 10**6."""
    text = text.strip()
    try:
        if "**" in text:
            base, exp = text.split("**")
            return int(base) ** int(exp)
        if "e" in text.lower():
            mant, exp = text.lower().split("e")
            value = Fraction(mant) * 10 ** int(exp)
            if value.denominator != 1:
                raise ValueError
            return int(value)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _seed(args, err):
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=err)
    return args.seed


def _records_from_source(args):
    """(records, x) for the --bfile / --bundled / --limit source flags."""
    if args.limit is not None:
        method = getattr(args, "method", "sieve")
        if method == "search":
            values = cm.search_carmichaels(args.limit)
        else:
            values = list(cm.iter_carmichaels(args.limit, workers=args.workers,
                                              capacity=args.capacity))
        return cm.records_from_values(values), args.limit
    if args.bundled:
        values = cm.ingest_oeis_bfile(cm.bundled_bfile())
    else:
        with open(args.bfile) as fh:
            values = cm.ingest_oeis_bfile(fh)
    return cm.records_from_values(values), (values[-1] if values else 0)


def _add_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--bfile", metavar="PATH", help="OEIS b-file of Carmichael numbers")
    src.add_argument("--bundled", action="store_true",
                     help="use the bundled first 10000 Carmichael numbers")
    src.add_argument("--limit", type=_int, metavar="N", help="enumerate Carmichaels <= N")
    p.add_argument("--method", choices=["sieve", "search"], default="sieve",
                   help="enumerator used with --limit")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--capacity", type=_int, default=cm.DEFAULT_CAPACITY)


def cmd_test(args, out, err):
    if args.n >= 1 << 64:
        raise CapacityError(f"{args.n} exceeds the 64-bit range")
    seed = _seed(args, err)
    verdict = run_test(args.n, args.algo, rounds=args.rounds, seed=seed, z=args.z,
                       units_only=args.units_only)
    print(verdict.value, file=out)
    return EXIT_OK if verdict.passed else EXIT_NO


def cmd_enumerate(args, out, err):
    if args.method == "search":
        values = cm.search_carmichaels(args.limit)
    else:
        values = cm.iter_carmichaels(args.limit, workers=args.workers, capacity=args.capacity)
    sink = open(args.output, "w", newline="") if args.output else out
    try:
        if args.format == "bfile":
            cm.write_bfile(values, sink, header=f"Carmichael numbers <= {args.limit}")
        else:
            cm.write_records_csv((cm.DepthRecord.from_n(n) for n in values), sink)
    finally:
        if args.output:
            sink.close()
    return EXIT_OK


def cmd_depth(args, out, err):
    try:
        rec = cm.DepthRecord.from_n(args.n)
    except ValidationError:
        print(f"{args.n}: not a Carmichael number", file=out)
        return EXIT_NO
    print(f"n: {rec.n}", file=out)
    print(f"factors: {' * '.join(map(str, rec.primes))}", file=out)
    print(f"num_prime_factors: {rec.num_prime_factors}", file=out)
    print(f"nu2_n_minus_1: {rec.nu2_n_minus_1}", file=out)
    print(f"max_nu2_p_minus_1: {rec.max_nu2_p_minus_1}", file=out)
    print(f"exact_depth: {rec.exact_depth}", file=out)
    return EXIT_OK


def cmd_depth_table(args, out, err):
    records, _ = _records_from_source(args)
    table = cm.build_depth_table(records, args.max_z)
    out.write(table.render())
    if args.ratios:
        for z, observed, predicted in cm.ratio_report(table):
            print(f"z={z} observed={observed:.6f} predicted={predicted:.6f}", file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            cm.write_records_csv(records, fh)
    return EXIT_OK


def cmd_check_bound(args, out, err):
    records, x = _records_from_source(args)
    if args.x is not None:
        if args.x > x:
            raise DomainError(f"records only cover n <= {x}")
        x = args.x
    audits = cm.audit_bounds(records, x, args.k_max, args.z_max)
    bad = [a for a in audits if a.violated]
    for a in bad:
        print(f"violation: k={a.k} z={a.z} observed={a.observed} bound={float(a.bound):.6f}",
              file=out)
    print(f"x={x} checks={len(audits)} violations={len(bad)}", file=out)
    return EXIT_NO if bad else EXIT_OK


def _simulate_rows(rs, samples, seed, max_z, workers, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(lm.report_header(max_z))
    for r in rs:
        st = lm.monte_carlo(r, samples, seed, max_z, workers=workers)
        w.writerow(lm.report_row(st))


def cmd_korselt_prob(args, out, err):
    if args.exact:
        p = lm.exact_korselt_prob(args.r)
        text = str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"
        print(f"{text} = {float(p):.6f}", file=out)
        return EXIT_OK
    seed = _seed(args, err)
    _simulate_rows([args.r], args.simulate, seed, args.max_z, args.workers, out)
    return EXIT_OK


def cmd_simulate(args, out, err):
    seed = _seed(args, err)
    _simulate_rows(args.r, args.samples, seed, args.max_z, args.workers, out)
    return EXIT_OK


def cmd_poisson(args, out, err):
    lam = stats.erdos_kac_lambda(args.n) if args.n is not None else args.lam
    m = stats.truncated_moments(stats.PoissonModel(lam, args.threshold))
    print(f"lambda: {lam:.6g}", file=out)
    print(f"partial_mean: {m.partial_mean:.6g}", file=out)
    print(f"tail_prob: {m.tail_prob:.6g}", file=out)
    print(f"conditional_mean: {m.conditional_mean:.6g}", file=out)
    return EXIT_OK


def cmd_ingest(args, out, err):
    with open(args.path) as fh:
        values = cm.ingest_oeis_bfile(fh)
    print(f"terms: {len(values)}", file=out)
    if values:
        print(f"last: {values[-1]}", file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            cm.write_records_csv(cm.records_from_values(values), fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zdeep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="probabilistic primality test")
    p.add_argument("n", type=_int)
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default="mr")
    p.add_argument("--z", type=int, default=0, help="depth for --algo zmr")
    p.add_argument("--rounds", type=int, default=40)
    p.add_argument("--seed", type=int)
    p.add_argument("--units-only", action="store_true",
                   help="redraw bases that share a factor with n")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("enumerate", help="list Carmichael numbers up to a bound")
    p.add_argument("--limit", type=_int, required=True)
    p.add_argument("--method", choices=["sieve", "search"], default="sieve")
    p.add_argument("--format", choices=["csv", "bfile"], default="csv")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--capacity", type=_int, default=cm.DEFAULT_CAPACITY)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("depth", help="exact depth of one Carmichael number")
    p.add_argument("n", type=_int)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("depth-table", help="cumulative depth counts by number of prime factors")
    _add_source(p)
    p.add_argument("--max-z", type=int)
    p.add_argument("--csv", metavar="PATH", help="also write the records as CSV")
    p.add_argument("--ratios", action="store_true", help="print C_z/C next to 2^-z")
    p.set_defaults(func=cmd_depth_table)

    p = sub.add_parser("check-bound", help="audit the divisor bound 1 + x/(2^z k f(k))")
    _add_source(p)
    p.add_argument("--x", type=_int)
    p.add_argument("--k-max", type=int, default=1000)
    p.add_argument("--z-max", type=int, default=4)
    p.set_defaults(func=cmd_check_bound)

    p = sub.add_parser("korselt-prob", help="probability that an r-tuple is 2-Korselt")
    p.add_argument("--r", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--simulate", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-z", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_korselt_prob)

    p = sub.add_parser("simulate", help="Monte Carlo over the local 2-adic model")
    p.add_argument("--r", type=int, nargs="+", required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-z", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("poisson", help="Poisson prediction of the mean prime-factor count")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=float)
    src.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--threshold", type=int, default=3)
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("ingest", help="validate an OEIS b-file of Carmichael numbers")
    p.add_argument("path")
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except CapacityError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CAPACITY
    except (DomainError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    except (ZDeepError, Exception) as exc:  # noqa: BLE001 - map to exit code
        print(f"internal error: {exc!r}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
