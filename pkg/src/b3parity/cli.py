"""Command-line entry points.

Subcommands:
  pclass         classify primes into the witness class, report densities
  verify         run one congruence campaign (see --theorem)
  conjecture-n2  compare the closed-form primitive-count formula with
                 brute-force enumeration
  series         build a parity series and write it to a cache file
  certify        recompute the certification table and verify the
                 congruences it certifies against the coefficient series

One JSON report goes to stdout; diagnostics go to stderr. Exit code 0 means
no violations, 1 means a violation was found, 2 means the request was
unusable or inapplicable. PARTITION_CACHE_DIR enables the on-disk series
cache. --csv writes the report's table as CSV plus a PNG figure alongside.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from b3parity import campaigns, certify
from b3parity.cache import save_series
from b3parity.campaigns import INAPPLICABLE, VERIFIED_TO_BOUND, VIOLATION, CampaignReport

# series lengths beyond this need an explicit --long
LONG_CAP = 30_000_000


def _eprint(*args) -> None:
    print(*args, file=sys.stderr)


def _emit(report: CampaignReport, args) -> int:
    print(json.dumps(report.as_json()))
    if getattr(args, "csv", None):
        from b3parity.report import export_report

        paths = export_report(report, args.csv)
        _eprint(f"wrote {paths[0]} and {paths[1]}")
    if report.status == INAPPLICABLE:
        _eprint(f"inapplicable: {report.params.get('reason', 'see report')}")
        return 2
    return 1 if report.status == VIOLATION else 0


def cmd_pclass(args) -> int:
    summary = campaigns.prime_class_scan(args.limit)
    _eprint(
        f"classified {summary.total_primes} primes in {summary.elapsed_ms} ms; "
        f"class fraction {summary.fraction:.5f}"
    )
    return _emit(summary.as_report(), args)


def cmd_verify(args) -> int:
    n_max = args.n_max
    if n_max is None:
        n_max = campaigns.suggested_n_max(args.theorem, args.p)
        _eprint(f"using n_max = {n_max} (largest fitting the default series budget)")
    cap = None if args.long else LONG_CAP
    report = campaigns.run_theorem(args.theorem, args.p, n_max, length_cap=cap)
    if report.status == INAPPLICABLE and "over the cap" in report.params.get("reason", ""):
        _eprint("hint: rerun with --long to allow a larger series")
    return _emit(report, args)


def cmd_conjecture_n2(args) -> int:
    report = campaigns.conjecture_n2_scan(args.limit, args.interpretation)
    tallies = report.params["per_interpretation"]
    for tag, t in tallies.items():
        _eprint(f"interpretation ({tag}): {t['checked']} checked, {t['mismatches']} mismatches")
    return _emit(report, args)


def cmd_series(args) -> int:
    if args.limit < 1:
        _eprint("error: --limit must be >= 1")
        return 2
    if args.limit > LONG_CAP and not args.long:
        _eprint(f"error: lengths beyond {LONG_CAP} need --long")
        return 2
    t0 = time.perf_counter()
    series = campaigns.parity_series(args.kind, args.limit)
    build_ms = int((time.perf_counter() - t0) * 1000)
    save_series(series, args.out)
    _eprint(f"built {args.kind} series of length {series.truncation} in {build_ms} ms")
    report = CampaignReport(
        "series",
        {"kind": args.kind, "limit": args.limit, "out": args.out},
        series.truncation,
        [],
        VERIFIED_TO_BOUND,
        build_ms,
    )
    print(json.dumps(report.as_json()))
    return 0


def _verify_table_instances(rows, long: bool, violations: list) -> tuple[int, list[int]]:
    """Series-check the certified congruences for each table row; rows with
    p >= 223 only when long is set. Returns (instances checked, primes)."""
    todo = [row for row in rows if long or row.p <= 103]
    if not todo:
        return 0, []
    instances = []
    for row in todo:
        for t in (row.t0, row.A * row.p + row.t0):
            instances.append((row.p, certify.standard_instance(row.p, t)))
    needed = max(certify.required_truncation(inst) for _, inst in instances)
    _eprint(f"building series of length {needed} for {len(instances)} instance checks")
    series = campaigns.parity_series("b", needed)
    checked = 0
    for p, inst in instances:
        verdict = certify.verify_instance(inst, series=series)
        checked += verdict.checked
        if verdict.status != certify.CERTIFIED:
            for n, idx, value in verdict.violations:
                violations.append(
                    {
                        "inputs": {"p": p, "t": inst.t, "n": n, "index": idx},
                        "observed": {"coefficient_mod_2": value},
                    }
                )
            if not verdict.violations:
                violations.append(
                    {
                        "inputs": {"p": p, "t": inst.t},
                        "observed": {"status": verdict.status, "reasons": list(verdict.reasons)},
                    }
                )
    return checked, sorted({p for p, _ in instances})


def cmd_certify(args) -> int:
    t0 = time.perf_counter()
    primes = certify.TABLE_PRIMES if args.table else (args.p,)
    violations: list[dict] = []
    rows = []
    expected = {row.p: row for row in certify.expected_table()}
    for p in primes:
        row = certify.compute_table_row(p)
        rows.append(row)
        want = expected.get(p)
        if want is not None and row != want:
            violations.append(
                {
                    "inputs": {"p": p},
                    "observed": {"computed": row.as_dict(), "expected": want.as_dict()},
                }
            )
    checked = len(rows)
    verified_primes: list[int] = []
    if not args.rows_only:
        n_inst, verified_primes = _verify_table_instances(rows, args.long, violations)
        checked += n_inst
    params = {
        "primes": list(primes),
        "rows_only": bool(args.rows_only),
        "series_checked_primes": verified_primes,
    }
    status = VIOLATION if violations else VERIFIED_TO_BOUND
    table = (
        ["p", "t0", "alpha_excluded", "A", "nu_floor"],
        [(r.p, r.t0, r.alpha_excluded, r.A, r.nu_floor) for r in rows],
    )
    report = CampaignReport(
        "certify",
        params,
        checked,
        violations,
        status,
        int((time.perf_counter() - t0) * 1000),
        table,
    )
    return _emit(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="b3parity",
        description="parity campaigns for 3-regular partition counts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_class = sub.add_parser("pclass", help="prime classification and density scan")
    p_class.add_argument("--limit", type=int, required=True, help="classify primes up to this bound")
    p_class.add_argument("--csv", help="write the per-prime table as CSV (+ PNG alongside)")
    p_class.set_defaults(func=cmd_pclass)

    p_verify = sub.add_parser("verify", help="verify one congruence family")
    p_verify.add_argument("--theorem", required=True, choices=campaigns.THEOREMS)
    p_verify.add_argument("--p", type=int, required=True, help="the prime parameter")
    p_verify.add_argument("--n-max", type=int, default=None, help="progression depth (default: fit the series budget)")
    p_verify.add_argument("--long", action="store_true", help="allow series beyond the default cap")
    p_verify.add_argument("--csv", help="write the per-lane table as CSV (+ PNG alongside)")
    p_verify.set_defaults(func=cmd_verify)

    p_n2 = sub.add_parser("conjecture-n2", help="closed-form count vs enumeration")
    p_n2.add_argument("--limit", type=int, required=True, help="scan m = 1 mod 24 up to this bound")
    p_n2.add_argument("--interpretation", choices=("a", "c", "all"), default="a")
    p_n2.add_argument("--csv", help="write the per-m table as CSV (+ PNG alongside)")
    p_n2.set_defaults(func=cmd_conjecture_n2)

    p_series = sub.add_parser("series", help="build a parity series and save it")
    p_series.add_argument("--kind", required=True, choices=campaigns.SERIES_KINDS)
    p_series.add_argument("--limit", type=int, required=True, help="number of coefficients")
    p_series.add_argument("--out", required=True, help="output file path")
    p_series.add_argument("--long", action="store_true", help="allow lengths beyond the default cap")
    p_series.set_defaults(func=cmd_series)

    p_cert = sub.add_parser("certify", help="recompute and check the certification table")
    which = p_cert.add_mutually_exclusive_group(required=True)
    which.add_argument("--table", action="store_true", help="all fourteen table rows")
    which.add_argument("--p", type=int, help="a single prime")
    p_cert.add_argument("--rows-only", action="store_true", help="skip the series checks")
    p_cert.add_argument("--long", action="store_true", help="series-check the large rows too")
    p_cert.add_argument("--csv", help="write the table as CSV (+ PNG alongside)")
    p_cert.set_defaults(func=cmd_certify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _eprint(f"error: {exc}")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
