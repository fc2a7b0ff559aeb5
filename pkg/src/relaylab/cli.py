"""Command-line interface: ``relaylab <subcommand> ...``.

Exit status: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import experiments as ex
from .channel import DomainError, Geometry, SnrTriple, load_scenario, snr_from_geometry
from .export import (fmt, sweep_summary, to_jsonable, write_json, write_rows,
                     write_sweep_csv, write_sweep_svg)
from .gaps import gap_report
from .rates import solve_cdf, solve_direct, solve_pdf

EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 1, 2, 3

RATE_FIELDS = ("scheme", "rate", "alpha", "beta", "binding")
GAP_FIELDS = ("r_cdf", "r_pdf", "g", "g_bar", "regime")
BOUND_FIELDS = ("r_pdf_ub", "g_bar_ub", "lemma5_bound", "g_ub")


class UsageError(Exception):
    pass


def _channel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--l01", type=float, help="source-relay SNR (linear)")
    p.add_argument("--l02", type=float, help="source-destination SNR (linear)")
    p.add_argument("--l12", type=float, help="relay-destination SNR (linear)")
    p.add_argument("--scenario", help="JSON geometry file (instead of --l01/--l02/--l12)")


def _format_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--precision", type=int, default=12, help="significant digits")


def _threads_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (RELAYLAB_THREADS overrides; default all)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relaylab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate", help="decode-forward and direct rates for one channel")
    _channel_args(p)
    p.add_argument("--scheme", choices=("cdf", "pdf", "direct", "all"), default="all")
    _format_args(p)

    p = sub.add_parser("gap", help="gap, normalized gap and bounds for one channel")
    _channel_args(p)
    p.add_argument("--bounds", action="store_true", help="include closed-form bound columns")
    _format_args(p)

    p = sub.add_parser("sweep", help="normalized gap over a grid of relay positions")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--svg", help="SVG heatmap output path")
    p.add_argument("--summary", help="JSON summary output path")
    p.add_argument("--no-region", action="store_true", help="do not restrict to lambda01 > lambda02")
    for name, default in (("p0", 100.0), ("p1", 100.0), ("n1", 1.0), ("n2", 1.0)):
        p.add_argument(f"--{name}", type=float, default=default)
    _threads_arg(p)

    p = sub.add_parser("scan-power", help="gap bounds while scaling both powers by P")
    p.add_argument("--scenario", help="JSON geometry file (default: built-in asymptotic geometry)")
    p.add_argument("--p", type=float, nargs="+", default=[1e-6, 1e-3, 1.0, 1e3, 1e6])
    _format_args(p)
    _threads_arg(p)

    p = sub.add_parser("scan-proximity", help="gap bounds as the relay approaches an endpoint")
    p.add_argument("--kind", choices=[k.value for k in ex.Proximity], default="RelayNearSource")
    p.add_argument("--d", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3, 1e-4])
    p.add_argument("--scenario", help="JSON geometry file (default: built-in asymptotic geometry)")
    _format_args(p)
    _threads_arg(p)

    p = sub.add_parser("search-bound", help="largest normalized gap over lambda01, lambda02")
    p.add_argument("--l12", type=float, nargs="+", default=[1e1, 1e2, 1e3, 1e4, 1e5])
    _format_args(p)
    _threads_arg(p)

    p = sub.add_parser("verify", help="randomized and oracle verification suites")
    p.add_argument("--suite", choices=("theorem", "oracle", "asymptotics", "all"), default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=None,
                   help="samples (default 10000 for theorem, 200 for oracle)")
    _threads_arg(p)
    return parser


def _snr_from_args(args) -> SnrTriple:
    raw = [args.l01, args.l02, args.l12]
    if args.scenario is not None:
        if any(v is not None for v in raw):
            raise UsageError("give either --scenario or --l01/--l02/--l12, not both")
        return snr_from_geometry(load_scenario(args.scenario))
    for flag, v in zip(("--l01", "--l02", "--l12"), raw):
        if v is None:
            raise UsageError(f"missing {flag} (or --scenario)")
    return SnrTriple(*raw)


def _emit(rows: Sequence[dict], columns: Sequence[str], fmt_name: str, precision: int, out) -> None:
    if fmt_name == "json":
        payload = rows[0] if len(rows) == 1 else list(rows)
        json.dump(to_jsonable(payload), out, indent=2)
        out.write("\n")
    elif fmt_name == "csv":
        write_rows(out, columns, ([r.get(c) for c in columns] for r in rows), precision)
    else:
        cells = [[fmt(r.get(c), precision) for c in columns] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def cmd_rate(args, out) -> int:
    s = _snr_from_args(args)
    solvers = {"cdf": solve_cdf, "pdf": solve_pdf, "direct": solve_direct}
    schemes = ("pdf", "cdf", "direct") if args.scheme == "all" else (args.scheme,)
    rows = [{"scheme": k, **solvers[k](s).to_dict()} for k in schemes]
    _emit(rows, RATE_FIELDS, args.format, args.precision, out)
    return 0


def _report_row(report, bounds: bool) -> dict:
    d = report.to_dict()
    keep = GAP_FIELDS + (BOUND_FIELDS if bounds else ())
    return {k: d[k] for k in keep}


def cmd_gap(args, out) -> int:
    s = _snr_from_args(args)
    row = _report_row(gap_report(s), args.bounds)
    cols = GAP_FIELDS + (BOUND_FIELDS if args.bounds else ())
    _emit([row], cols, args.format, args.precision, out)
    return 0


def cmd_sweep(args, out) -> int:
    base = Geometry(source=(0.0, 0.0), relay=(0.0, 0.5), destination=(0.0, 1.0),
                    p0=args.p0, p1=args.p1, n1=args.n1, n2=args.n2)
    spec = ex.SweepSpec(base=base, step=args.step, region_filter=not args.no_region)
    result = ex.position_sweep(spec, threads=args.threads)
    try:
        if args.out:
            write_sweep_csv(result, args.out)
        if args.svg:
            write_sweep_svg(result, args.svg)
        if args.summary:
            write_json(sweep_summary(result), args.summary)
    except OSError as exc:
        print(f"relaylab: cannot write output: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out.write(f"max_g_bar {fmt(result.max_g_bar)} at {result.argmax} "
              f"({len(result.records)} points)\n")
    return 0


def _scan_geometry(args) -> Geometry:
    return load_scenario(args.scenario) if args.scenario else ex.ASYMPTOTIC_GEOMETRY


def cmd_scan_power(args, out) -> int:
    geom = _scan_geometry(args)
    rows = [{"p": r.p, **_report_row(r.report, True)} for r in ex.power_scan(geom, args.p, args.threads)]
    _emit(rows, ("p",) + GAP_FIELDS + BOUND_FIELDS, args.format, args.precision, out)
    return 0


def cmd_scan_proximity(args, out) -> int:
    geom = _scan_geometry(args)
    scan = ex.proximity_scan(args.kind, args.d, geom, args.threads)
    rows = [{"d": d, **_report_row(r, True)} for d, r in scan]
    _emit(rows, ("d",) + GAP_FIELDS + BOUND_FIELDS, args.format, args.precision, out)
    return 0


def cmd_search_bound(args, out) -> int:
    found = ex.bound_approach_search(args.l12, threads=args.threads)
    rows = [r._asdict() for r in found]
    _emit(rows, ("lambda12", "lambda01", "lambda02", "g_bar"), args.format, args.precision, out)
    return 0


def cmd_verify(args, out) -> int:
    suites = ("theorem", "oracle", "asymptotics") if args.suite == "all" else (args.suite,)
    summary: dict[str, Any] = {}
    failed = 0
    for name in suites:
        if name == "theorem":
            res = ex.theorem_fuzz(args.seed, args.samples or 10_000, args.threads).to_dict()
            h = ex.h_minimum_check()
            res["h_minimum"] = h
            failed += res["violations"] + (not h["ok"])
        elif name == "oracle":
            res = ex.oracle_suite(args.seed, args.samples or 200)
            failed += res["violations"]
        else:
            res = ex.asymptotic_suite()
            failed += res["violations"]
        summary[name] = res
    summary["ok"] = failed == 0
    json.dump(to_jsonable(summary), out, indent=2)
    out.write("\n")
    return 0 if failed == 0 else EXIT_VERIFY


COMMANDS = {
    "rate": cmd_rate, "gap": cmd_gap, "sweep": cmd_sweep, "scan-power": cmd_scan_power,
    "scan-proximity": cmd_scan_proximity, "search-bound": cmd_search_bound, "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"relaylab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"relaylab {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
