import csv

from b3parity.campaigns import (
    VERIFIED_TO_BOUND,
    CampaignReport,
    conjecture_n2_scan,
    prime_class_scan,
    witness_campaign,
)
from b3parity.report import export_report


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_export_lane_report(tmp_path):
    report = witness_campaign(29, 3)
    csv_path, png_path = export_report(report, tmp_path / "witness.csv")
    rows = read_csv(csv_path)
    assert rows[0] == ["alpha", "instances", "violations"]
    assert len(rows) == 1 + 28
    assert png_path.suffix == ".png"
    assert png_path.stat().st_size > 1000


def test_export_pclass_report(tmp_path):
    report = prime_class_scan(1000).as_report()
    csv_path, png_path = export_report(report, tmp_path / "pclass.csv")
    rows = read_csv(csv_path)
    assert rows[0][:3] == ["p", "residue_mod_24", "in_class"]
    assert len(rows) == 1 + 168
    assert png_path.exists()


def test_export_conjecture_report(tmp_path):
    report = conjecture_n2_scan(500, "all")
    csv_path, png_path = export_report(report, tmp_path / "n2.csv")
    rows = read_csv(csv_path)
    assert rows[0] == ["m", "oracle", "formula_a", "formula_c"]
    assert png_path.exists()


def test_export_certify_style(tmp_path):
    table = (
        ["p", "t0", "alpha_excluded", "A", "nu_floor"],
        [(29, 6, 1, 3, 14), (59, 27, 2, 1, 29)],
    )
    report = CampaignReport("certify", {}, 2, [], VERIFIED_TO_BOUND, 0, table)
    csv_path, png_path = export_report(report, tmp_path / "table.csv")
    assert read_csv(csv_path)[1] == ["29", "6", "1", "3", "14"]
    assert png_path.exists()


def test_export_without_table_falls_back_to_violations(tmp_path):
    report = CampaignReport(
        "verify",
        {"theorem": "witness", "p": 29},
        1,
        [{"inputs": {"n": 3}, "observed": {"parity": 1}}],
        "VIOLATION",
        0,
    )
    csv_path, png_path = export_report(report, tmp_path / "fallback.csv")
    rows = read_csv(csv_path)
    assert rows[0] == ["inputs", "observed"]
    assert len(rows) == 2
    assert png_path.exists()
