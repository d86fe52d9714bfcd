"""Command-line front end.

Commands: eval, table, simulate, verify-series, verify-measures, cross-check.
Widths are accepted only as exact rational strings ("1/6", "0.25"), never as
binary floats, so exact mode never inherits parser rounding.  Exit codes:
0 success, 2 usage or domain error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import genseries, measures, montecarlo, scanprob
from .exactnum import DomainError, format_rational

SCHEMA = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

_KINDS = {k.value: k for k in scanprob.ScanKind}


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r}") from exc


def _emit_json(payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(payload, indent=2, sort_keys=True))


def _emit_csv(rows: list[dict]) -> None:
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    query = scanprob.ScanQuery(_KINDS[args.stat], args.N, parse_rational(args.w), args.mode)
    value = scanprob.evaluate(query)
    exact = scanprob.evaluate(scanprob.ScanQuery(query.kind, query.N, query.w, "exact"))
    payload = {
        "command": "eval",
        "stat": args.stat,
        "N": args.N,
        "w": format_rational(query.w),
        "mode": args.mode,
        "p": format_rational(exact.p),
        "p_float": float(value.p),
        "survival": format_rational(exact.survival),
        "regime": value.regime.value,
        "active_terms": value.active_terms,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(f"{args.stat}  N={args.N}  w={format_rational(query.w)}")
        print(f"  P = {payload['p']}  (~{payload['p_float']:.12g})")
        print(f"  survival = {payload['survival']}  regime = {payload['regime']}")
    return EXIT_OK


def _cmd_table(args) -> int:
    n_list = [int(s) for s in args.N.split(",")]
    w_grid = [parse_rational(s) for s in args.w.split(",")]
    rows = scanprob.tabulate(_KINDS[args.stat], n_list, w_grid)
    if args.format == "json":
        _emit_json({"command": "table", "rows": rows})
    else:
        _emit_csv(rows)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = montecarlo.SimConfig(args.N, args.k, args.samples, args.seed, args.streams)
    w_grid = [float(parse_rational(s)) for s in args.w.split(",")]
    estimates = montecarlo.empirical_cdf(config, args.kind, w_grid)
    rows = [vars(e) for e in estimates]
    for row in rows:
        row.update(N=args.N, k=args.k, kind=args.kind, seed=args.seed, streams=args.streams)
    if args.format == "json":
        _emit_json({"command": "simulate", "rows": rows})
    else:
        _emit_csv(rows)
    return EXIT_OK


def _report_exit(report, fmt: str, extra: dict | None = None) -> int:
    if fmt == "json":
        payload = {"command": report.suite, "report": report.to_dict()}
        payload.update(extra or {})
        _emit_json(payload)
    else:
        print(report.render_text())
    return EXIT_OK if report.passed else EXIT_VERIFY


def _cmd_verify_series(args) -> int:
    report = genseries.verify_series_suite(args.order)
    return _report_exit(report, args.format)


def _cmd_verify_measures(args) -> int:
    from .report import Report

    combined = Report("verify-measures")
    for sub in (
        measures.continuity_report(args.n_max),
        measures.support_report(args.n_max),
        measures.transform_crosscheck_report(args.n_max),
    ):
        combined.checks.extend(sub.checks)
    oracle_rep, rows = measures.oracle_report(args.n_max, args.samples, args.seed)
    combined.checks.extend(oracle_rep.checks)
    if args.format == "json":
        payload = {"command": "verify-measures", "report": combined.to_dict(), "rows": rows}
        _emit_json(payload)
    else:
        print(combined.render_text())
        _emit_csv(rows)
    return EXIT_OK if combined.passed else EXIT_VERIFY


def _cmd_cross_check(args) -> int:
    from .report import Report

    report = Report("cross-check")
    grid = [Fraction(j, 2 * (args.grid + 1)) for j in range(1, args.grid + 1)]

    overlap_ok = all(scanprob.pc_nm1(4, w).p == scanprob.pc_3(4, w).p for w in grid)
    report.add("overlap_pc_nm1_equals_pc_3_at_N4", overlap_ok, {"points": len(grid)})

    for kind in scanprob.ScanKind:
        mismatch = None
        for N in range(3, args.n_max + 1):
            thr = scanprob.threshold(kind, N)
            upper = min(thr, Fraction(1))
            for j in range(1, 21):
                w = upper * Fraction(j, 21)
                if not 0 < w < thr:
                    continue
                direct = scanprob._EVALUATORS[kind](N, w).p
                via_measure = scanprob.measure_to_probability(kind, N, w).p
                if direct != via_measure:
                    mismatch = (N, str(w), str(direct), str(via_measure))
                    break
            if mismatch:
                break
        report.add(
            f"pathway_equivalence_{kind.value}",
            mismatch is None,
            {"n_max": args.n_max},
            "exact agreement" if mismatch is None else f"discrepancy {mismatch}",
        )

    boundary_ok = True
    for kind in scanprob.ScanKind:
        for N in range(3, min(args.n_max, 10) + 1):
            for j in range(2, 2 * N):
                try:
                    gap = scanprob.floor_boundary_gap(kind, N, j)
                except DomainError:
                    continue
                if gap != 0:
                    boundary_ok = False
    report.add("piece_boundary_continuity", boundary_ok, {"n_max": args.n_max})
    return _report_exit(report, args.format)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scanstat",
        description="Exact distributions of continuous linear and circular scan statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one CDF value exactly")
    p.add_argument("--stat", choices=sorted(_KINDS), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--w", required=True, help='exact rational width, e.g. "1/6" or "0.25"')
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("table", help="tabulate a CDF over N and w grids")
    p.add_argument("--stat", choices=sorted(_KINDS), required=True)
    p.add_argument("--N", required=True, help="comma-separated list, e.g. 3,5,8")
    p.add_argument("--w", required=True, help="comma-separated rationals, e.g. 1/10,1/5")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("simulate", help="empirical CDF of the window statistic")
    p.add_argument("--kind", choices=["linear", "circular"], required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--w", required=True, help="comma-separated rationals")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--streams", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("verify-series", help="run the symbolic identity suites")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=_cmd_verify_series)

    p = sub.add_parser("verify-measures", help="closed forms vs sampling oracles")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=_cmd_verify_measures)

    p = sub.add_parser("cross-check", help="probability-level identities and pathways")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--grid", type=int, default=20)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(fn=_cmd_cross_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, scanprob.VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY if isinstance(exc, scanprob.VerificationError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
