"""CSV and figure export for campaign reports.

The CSV carries the report's tabular payload; a PNG rendering of the same
data is always written alongside it (same stem, .png suffix). Matplotlib is
imported lazily so library users who never export pay nothing.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from b3parity.campaigns import CampaignReport


def export_report(report: CampaignReport, csv_path) -> list[Path]:
    """Write the report's table as CSV and a PNG figure next to it.
    Returns the paths written, CSV first."""
    path = Path(csv_path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    headers, rows = _tabular(report)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(headers)
        writer.writerows(rows)
    png = path.with_suffix(".png")
    _render_figure(report, png)
    return [path, png]


def _tabular(report: CampaignReport) -> tuple[list[str], list[tuple]]:
    if report.table is not None:
        return report.table
    # fall back to the violation list so the export is never empty-handed
    rows = [
        (json.dumps(v.get("inputs", {}), sort_keys=True), json.dumps(v.get("observed"), sort_keys=True))
        for v in report.violations
    ]
    return ["inputs", "observed"], rows


def _render_figure(report: CampaignReport, png_path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8.0, 4.5), dpi=110)
    drawer = {
        "pclass": _draw_pclass,
        "conjecture-n2": _draw_n2,
        "certify": _draw_certify,
    }.get(report.campaign, _draw_lanes)
    drawer(ax, report)
    fig.tight_layout()
    fig.savefig(png_path)
    plt.close(fig)


def _draw_pclass(ax, report: CampaignReport) -> None:
    headers, rows = report.table
    ps = [r[0] for r in rows]
    running = []
    hits = 0
    for i, r in enumerate(rows, start=1):
        hits += int(r[2])
        running.append(hits / i)
    ax.plot(ps, running, lw=1.0, label="class fraction among primes <= x")
    ax.axhline(1 / 6, color="tab:red", ls="--", lw=1.0, label="1/6")
    ax.set_xlabel("x")
    ax.set_ylabel("fraction")
    ax.set_title(f"witness-class density up to {report.params.get('limit')}")
    ax.set_ylim(0, max(0.3, max(running[len(running) // 10 :] or [0.3]) * 1.2))
    ax.legend(loc="best", fontsize=8)


def _draw_n2(ax, report: CampaignReport) -> None:
    headers, rows = report.table
    ms = [r[0] for r in rows]
    oracle = [r[1] for r in rows]
    bad_a = [(m, o) for m, o, fa, _ in rows if fa != o]
    bad_c = [(m, o) for m, o, _, fc in rows if fc != o]
    ax.scatter(ms, oracle, s=4, label="enumerated count")
    if bad_a:
        ax.scatter(*zip(*bad_a), s=24, marker="x", color="tab:red", label="formula (a) mismatch")
    if bad_c:
        ax.scatter(*zip(*bad_c), s=24, marker="+", color="tab:orange", label="formula (c) mismatch")
    ax.set_xlabel("m")
    ax.set_ylabel("primitive representations")
    ax.set_title(f"closed-form count vs enumeration, m <= {report.params.get('limit')}")
    ax.legend(loc="best", fontsize=8)


def _draw_certify(ax, report: CampaignReport) -> None:
    headers, rows = report.table
    ps = [str(r[0]) for r in rows]
    nus = [r[4] for r in rows]
    bars = ax.bar(ps, nus, color="tab:blue")
    ax.bar_label(bars, fontsize=7)
    ax.set_xlabel("p")
    ax.set_ylabel("verification bound (floor of nu)")
    ax.set_title("certified progressions: finite check bound per prime")
    ax.tick_params(axis="x", labelrotation=60, labelsize=7)


def _draw_lanes(ax, report: CampaignReport) -> None:
    headers, rows = report.table if report.table else (["lane", "instances", "violations"], [])
    lanes = [str(r[0]) for r in rows]
    instances = [r[1] for r in rows]
    viol = [r[2] for r in rows]
    x = range(len(lanes))
    ax.bar(x, instances, color="tab:blue", label="instances checked")
    if any(viol):
        ax.bar(x, viol, color="tab:red", label="violations")
    if len(lanes) <= 40:
        ax.set_xticks(list(x), lanes, rotation=60, fontsize=7)
    else:
        ax.set_xlabel(f"{len(lanes)} lanes")
    ax.set_ylabel("instances")
    title = report.params.get("theorem", report.campaign)
    ax.set_title(f"{title}: p={report.params.get('p')}, {report.status}, {report.checked} checks")
    ax.legend(loc="best", fontsize=8)
