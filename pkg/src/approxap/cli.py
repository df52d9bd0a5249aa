"""Command-line entry point: every operation behind one executable.

Structured output: near-miss and cube scans emit CSV; everything else
emits line-delimited JSON records whose field names match the library
types, so long scans stream and parse back losslessly.

Exit codes: 0 success, 1 invalid input (including unknown flags),
2 capability error (the request is beyond the exact-computation range).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from . import constellations, decomposition, near_miss, vdw
from .ap_core import ArithProgression, ApproxMatch, RationalExponent
from .errors import ApproxAPError, CapabilityError, InvalidArgumentError
from .integer_sets import IntegerSet, density_profile, load_set, make_powers, make_primes
from .progression_free import compute_r_k
from ._parallel import default_workers


def _build_set(source: str, limit: int | None, fmt: str, column: str | None) -> IntegerSet:
    if source == "primes":
        if limit is None:
            raise InvalidArgumentError("builtin set 'primes' needs --limit")
        return make_primes(limit)
    if source.startswith("powers:"):
        t = int(source.split(":", 1)[1])
        if limit is None:
            raise InvalidArgumentError(f"builtin set '{source}' needs --limit")
        return make_powers(t, limit)
    loaded = load_set(Path(source), format=fmt, column=column)
    if loaded.duplicates:
        print(f"note: dropped {loaded.duplicates} duplicate value(s)", file=sys.stderr)
    return loaded.set


def _open_out(path: str | None) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w")


def _emit(fh: TextIO, record: dict) -> None:
    fh.write(json.dumps(record) + "\n")


def _match_record(match: ApproxMatch) -> dict:
    return {
        "start": match.progression.start,
        "gap": match.progression.gap,
        "length": match.progression.length,
        "distance": match.distance,
        "alpha": str(match.alpha),
        "within": match.within,
    }


def _report_record(report: decomposition.DecompositionReport) -> dict:
    return {
        "n": report.n,
        "outcome": report.outcome,
        "witness": _match_record(report.witness) if report.witness else None,
        "witness_level": report.witness_level,
        "levels": [
            {
                "level": s.level,
                "parents": s.parents,
                "sub_length": s.sub_length,
                "modulus": s.modulus,
                "sub_intervals": s.sub_intervals,
                "occupied": s.occupied,
                "over_occupied_classes": s.over_occupied_classes,
                "discarded_elements": s.discarded_elements,
            }
            for s in report.levels
        ],
        "bound_value": str(report.bound_value),
        "actual_count": report.actual_count,
        "gap_over_n": str(report.gap_over_n) if report.gap_over_n is not None else None,
        "m": report.plan.m,
        "m_prime": report.plan.m_prime,
    }


def _add_set_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--set", required=True, help="builtin 'primes' | 'powers:t' | file path")
    sp.add_argument("--limit", type=int, default=None, help="limit for builtin sets")
    sp.add_argument("--format", default="newline-decimal",
                    choices=["newline-decimal", "csv-column"])
    sp.add_argument("--column", default=None, help="column name for csv-column files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="approxap",
        description="Approximate arithmetic progressions in integer sets: "
        "search, certificates, and near-miss statistics.",
    )
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: AAP_WORKERS or CPU count)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property trials")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    # the same options are also accepted after the subcommand; SUPPRESS keeps
    # the subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    sp = add_command("density", "power-log density profile of a set")
    _add_set_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--gamma", type=float, required=True)

    sp = add_command("rk", "exact r_k(N) with an extremal witness")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--k", type=int, default=3)

    sp = add_command("search", "direct window search for an approximate progression")
    _add_set_args(sp)
    sp.add_argument("--n", type=int, required=True, help="window exponent")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--alpha", required=True, help="rational exponent p/q")
    sp.add_argument("--gap-min", type=int, default=1)
    sp.add_argument("--gap-max", type=int, default=None)
    sp.add_argument("--factor", type=int, default=2, choices=[1, 2],
                    help="accept D <= factor * gap^alpha")

    sp = add_command("certify", "window certificates over a range of exponents")
    _add_set_args(sp)
    sp.add_argument("--n-range", required=True, help="window exponents, e.g. 10..20")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--alpha", required=True, help="rational exponent p/q")
    sp.add_argument("--epsilon", default=None, help="occupancy budget, e.g. 1/16")
    sp.add_argument("--gamma", type=float, default=2.0)

    sp = add_command("upgrade", "color an approximate progression and extract an exact one")
    _add_set_args(sp)
    sp.add_argument("--start", type=int, required=True)
    sp.add_argument("--gap", type=int, required=True)
    sp.add_argument("--length", type=int, required=True, help="points in the progression")
    sp.add_argument("--k", type=int, required=True, help="target exact progression length")
    sp.add_argument("--C", type=int, required=True, help="uncertainty bound")

    sp = add_command("nearmiss", "near-miss statistic f_t(b) scan, CSV output")
    sp.add_argument("--t", required=True, help="comma-separated powers, e.g. 3,4,5")
    sp.add_argument("--b-max", type=int, required=True)

    sp = add_command("cubes", "solutions of x^3+y^3-2z^3 in {±1,±2}")
    sp.add_argument("--limit", type=int, required=True)

    sp = add_command("constellation", "dilated-translate pattern search in a planar set")
    sp.add_argument("--set", required=True, help="file of x,y integer pairs")
    sp.add_argument("--pattern", required=True, help="pattern points 'x0,y0;x1,y1;...'")
    sp.add_argument("--alpha", required=True, help="rational exponent p/q")
    sp.add_argument("--delta0", type=int, required=True)
    sp.add_argument("--window", required=True, help="x0,y0,x1,y1")

    return parser


def _parse_range(text: str) -> range:
    try:
        lo_str, hi_str = text.split("..", 1)
        lo, hi = int(lo_str), int(hi_str)
    except ValueError:
        raise InvalidArgumentError(f"cannot parse range {text!r}; expected a..b") from None
    if hi < lo:
        raise InvalidArgumentError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _cmd_density(args: argparse.Namespace, out: TextIO) -> int:
    A = _build_set(args.set, args.limit if args.limit is not None else args.n,
                   args.format, args.column)
    prof = density_profile(A, args.n, args.gamma)
    _emit(out, {
        "n": prof.n,
        "count": prof.count,
        "gamma": prof.gamma,
        "threshold": prof.threshold,
        "satisfied": prof.satisfied,
    })
    return 0


def _cmd_rk(args: argparse.Namespace, out: TextIO) -> int:
    result = compute_r_k(args.N, args.k)
    out.write(f"r={result.r} witness={','.join(map(str, result.witness))}\n")
    return 0


def _cmd_search(args: argparse.Namespace, out: TextIO) -> int:
    A = _build_set(args.set, args.limit, args.format, args.column)
    alpha = RationalExponent.parse(args.alpha)
    match = decomposition.exhaustive_search(
        A, args.n, args.k, alpha,
        gap_min=args.gap_min, gap_max=args.gap_max, factor=args.factor,
    )
    _emit(out, {"n": args.n, "factor": args.factor,
                "match": _match_record(match) if match else None})
    return 0


def _cmd_certify(args: argparse.Namespace, out: TextIO, workers: int) -> int:
    A = _build_set(args.set, args.limit, args.format, args.column)
    alpha = RationalExponent.parse(args.alpha)
    n_range = _parse_range(args.n_range)
    if args.epsilon is not None:
        epsilon = Fraction(args.epsilon)
        config = decomposition.CertificateConfig(epsilon=epsilon, k=args.k, gamma=args.gamma)
    else:
        config = decomposition.CertificateConfig.with_default_epsilon(
            alpha, args.gamma, n_range, k=args.k
        )
    scan = decomposition.scan_windows(A, n_range, config, alpha, workers=workers)
    by_n = {r.n: r for r in scan.reports}
    skipped = dict(scan.skipped)
    for n in n_range:
        if n in by_n:
            _emit(out, _report_record(by_n[n]))
        else:
            _emit(out, {"n": n, "outcome": "skipped", "reason": skipped.get(n, "unknown")})
    print(
        f"witness windows: {scan.witness_windows}/{len(scan.reports)}; "
        f"empirical c = {scan.empirical_c}",
        file=sys.stderr,
    )
    return 0


def _cmd_upgrade(args: argparse.Namespace, out: TextIO) -> int:
    A = _build_set(args.set, args.limit, args.format, args.column)
    P = ArithProgression(args.start, args.gap, args.length)
    colored = vdw.color(P, A, args.C)
    exact = vdw.extract_exact(colored, args.k)
    _emit(out, {
        "offsets": list(colored.offsets),
        "colors_used": colored.colors_used,
        "extracted": (
            {"start": exact.start, "gap": exact.gap, "length": exact.length}
            if exact else None
        ),
    })
    return 0


def _cmd_nearmiss(args: argparse.Namespace, out: TextIO, workers: int) -> int:
    try:
        ts = [int(tok) for tok in args.t.split(",") if tok.strip()]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse --t {args.t!r}") from None
    if not ts:
        raise InvalidArgumentError("--t must name at least one power")
    records = []
    for t in sorted(ts):
        records.extend(near_miss.scan(t, args.b_max, workers=workers))
    near_miss.write_csv(records, out)
    print(f"empirical inf f = {near_miss.empirical_infimum(records):.6g}", file=sys.stderr)
    return 0


def _cmd_cubes(args: argparse.Namespace, out: TextIO) -> int:
    out.write("x,y,z,value\n")
    for x, y, z, v in near_miss.cube_identity_search(args.limit):
        out.write(f"{x},{y},{z},{v}\n")
    return 0


def _cmd_constellation(args: argparse.Namespace, out: TextIO) -> int:
    A = constellations.load_planar_set(args.set)
    pattern = constellations.Pattern2D.parse(args.pattern)
    alpha = RationalExponent.parse(args.alpha)
    try:
        coords = tuple(int(tok) for tok in args.window.split(","))
        x0, y0, x1, y1 = coords
    except ValueError:
        raise InvalidArgumentError(f"cannot parse --window {args.window!r}") from None
    match = constellations.search_constellation(A, pattern, alpha, args.delta0, (x0, y0, x1, y1))
    _emit(out, {
        "match": (
            {"delta": match.delta, "shift": list(match.shift),
             "distance": match.distance, "alpha": str(match.alpha)}
            if match else None
        ),
    })
    return 0


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; the contract here is 1 for invalid input
        return 0 if exc.code == 0 else 1

    workers = args.workers if args.workers is not None else default_workers()
    out = _open_out(args.out)
    try:
        if args.command == "density":
            return _cmd_density(args, out)
        if args.command == "rk":
            return _cmd_rk(args, out)
        if args.command == "search":
            return _cmd_search(args, out)
        if args.command == "certify":
            return _cmd_certify(args, out, workers)
        if args.command == "upgrade":
            return _cmd_upgrade(args, out)
        if args.command == "nearmiss":
            return _cmd_nearmiss(args, out, workers)
        if args.command == "cubes":
            return _cmd_cubes(args, out)
        if args.command == "constellation":
            return _cmd_constellation(args, out)
        raise InvalidArgumentError(f"unknown command {args.command!r}")
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return 2
    except (ApproxAPError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if out is not sys.stdout:
            out.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
