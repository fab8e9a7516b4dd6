"""
reports 모듈 테스트
"""

import json

import pytest

from qrap.core.arith import ResidueClassifier
from qrap.core.asymptotics import verify_range
from qrap.core.counting import count_pattern, count_support
from qrap.core.weil import char_sum
from qrap.errors import SpecFileError
from qrap.models import FamilySpec, ShiftPatternTarget
from qrap.reports import reports


def test_canonical_json():
    text = reports.dumps_canonical({"b": 1, "a": [1, 2]})
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": [1, 2], "b": 1}


def test_format_float():
    assert reports.format_float(1234567.0) == "1.23457e+06"
    assert reports.format_float(0.5) == "0.5"


# ────────────────────────────────
# 명세 파일
# ────────────────────────────────
def test_load_family_spec(tmp_path):
    path = tmp_path / "fam.json"
    path.write_text('{"kind": "ap", "a": [0, 0], "b": [1, 2], "s": 1}\n')
    assert reports.load_family_spec(path) == FamilySpec(kind="ap", a=(0, 0), b=(1, 2), s=1)


def test_spec_round_trip(tmp_path):
    spec = FamilySpec(kind="normalized", B=(1, 3), S=((0, 2), (1,)))
    path = tmp_path / "fam.json"
    reports.write_json(path, spec.to_document())
    assert reports.load_family_spec(path) == spec


def test_syntax_error_reports_line_and_column(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "kind": "shift",\n  "Z": [0, 1,]\n}\n')
    with pytest.raises(SpecFileError) as info:
        reports.load_family_spec(path)
    assert "line 3" in info.value.diagnostic
    assert "column" in info.value.diagnostic


def test_unknown_field_is_named(tmp_path):
    path = tmp_path / "typo.json"
    path.write_text('{"kind": "shift", "Z": [0, 1], "zz": 3}')
    with pytest.raises(SpecFileError) as info:
        reports.load_family_spec(path)
    assert "zz" in info.value.diagnostic


def test_wrong_type_is_named(tmp_path):
    path = tmp_path / "type.json"
    path.write_text('{"kind": "ap", "a": [0, "x"], "b": [1, 2], "s": 1}')
    with pytest.raises(SpecFileError) as info:
        reports.load_family_spec(path)
    assert "a.1" in info.value.diagnostic


def test_missing_field_for_kind(tmp_path):
    path = tmp_path / "missing.json"
    path.write_text('{"kind": "ap", "a": [0], "b": [1]}')
    with pytest.raises(SpecFileError) as info:
        reports.load_family_spec(path)
    assert "requires" in info.value.diagnostic


def test_missing_file(tmp_path):
    with pytest.raises(SpecFileError):
        reports.load_family_spec(tmp_path / "absent.json")


def test_top_level_must_be_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]")
    with pytest.raises(SpecFileError):
        reports.load_family_spec(path)


# ────────────────────────────────
# CSV
# ────────────────────────────────
def test_counts_csv(tmp_path):
    c7 = ResidueClassifier(7)
    shift = FamilySpec(kind="shift", Z=(0, 1))
    records = [count_pattern(c7, shift, (1, -1)), count_support(c7, shift, "nonresidue")]
    path = tmp_path / "counts.csv"
    assert reports.write_counts_csv(path, records) == 2
    rows = reports.read_csv(path)
    assert list(rows[0]) == list(reports.COUNT_COLUMNS)
    assert rows[0]["eps_or_eta"] == "+1;-1"
    assert rows[0]["mode"] == "pattern"
    assert rows[1]["eps_or_eta"] == "nonresidue"


def test_verification_files(tmp_path):
    report = verify_range(ShiftPatternTarget(Z=(0,), eps=(1,)), 3, 50, sampling="all")
    csv_path, summary_path = tmp_path / "v.csv", tmp_path / "v.json"
    reports.write_verification(csv_path, report, summary_path)

    rows = reports.read_csv(csv_path)
    assert [int(row["p"]) for row in rows] == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert rows[0]["predicted"] == "1.5"
    assert rows[0]["error"] == "0.5"
    assert rows[0]["pass"] == "true"
    assert rows[0]["pi_class"] == "all"

    summary = json.loads(summary_path.read_text())
    assert summary["coefficient"] == "1/2"
    assert summary["violations"] == 0
    assert summary["target"]["kind"] == "shift_pattern"
    assert summary_path.read_text().endswith("\n")


def test_weil_csv(tmp_path):
    c = ResidueClassifier(11)
    results = [char_sum(c, (0, 1)), char_sum(c, (0, 1), range_end=5)]
    path = tmp_path / "w.csv"
    reports.write_weil_csv(path, results)
    rows = reports.read_csv(path)
    assert rows[0]["N"] == ""
    assert rows[1]["N"] == "5"
    assert rows[0]["d"] == "2"
    assert rows[0]["within_bound"] == "true"


def test_stats_csv_blank_cells(tmp_path):
    path = tmp_path / "s.csv"
    reports.write_stats_csv(path, [{"p": 7, "s0_plus": 2, "s0_minus": 2, "s1_plus": 1, "s1_minus": 1}])
    row = reports.read_csv(path)[0]
    assert row["p"] == "7"
    assert row["n0"] == ""
