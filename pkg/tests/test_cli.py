import json

import pytest

from coda_ratios.cli import main

CONFIG_TEXT = """\
[analysis]
parts = TA, NCL, CL
sbp = (TA|(NCL|CL))
group_variable = brand

[ratios]
r1 = TA / NCL + CL
"""

CSV_TEXT = """\
firm_id,TA,NCL,CL,brand
f1,100,20,30,yes
f2,80,35,25,no
f3,120,50,10,yes
f4,90,15,45,no
f5,60,22,18,yes
f6,150,40,35,no
"""


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    (tmp_path / "firms.csv").write_text(CSV_TEXT, encoding="utf-8")
    (tmp_path / "analysis.ini").write_text(CONFIG_TEXT, encoding="utf-8")
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    return tmp_path


def _args(workdir, *extra):
    return [
        "--data", str(workdir / "firms.csv"),
        "--config", str(workdir / "analysis.ini"),
        *extra,
    ]


def test_analyze_to_stdout(workdir, capsys):
    assert main(["analyze", *_args(workdir)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["metadata"]["n"] == 6
    assert doc["metadata"]["timestamp"] == "2023-11-14T22:13:20Z"
    assert [v["name"] for v in doc["variables"]] == ["y1", "y1p", "y2", "y2p", "r1", "r1p"]


def test_analyze_to_json_file(workdir):
    out = workdir / "report.json"
    assert main(["analyze", *_args(workdir, "--out", str(out))]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["metadata"]["groups"] == [["no", 3], ["yes", 3]]


def test_analyze_to_csv_file(workdir):
    out = workdir / "report.csv"
    assert main(["analyze", *_args(workdir, "--out", str(out))]) == 0
    lines = out.read_text(encoding="utf-8").strip().split("\n")
    assert lines[0].startswith("variable,n,mean")
    assert len(lines) == 1 + 6


def test_analyze_svg(workdir):
    svg = workdir / "boxes.svg"
    out = workdir / "report.json"
    assert main(["analyze", *_args(workdir, "--out", str(out), "--svg", str(svg))]) == 0
    text = svg.read_text(encoding="utf-8")
    assert text.startswith("<svg ")
    assert text.count('data-variable="') == 6


def test_analyze_deterministic_bytes(workdir):
    out1 = workdir / "a.json"
    out2 = workdir / "b.json"
    assert main(["analyze", *_args(workdir, "--out", str(out1))]) == 0
    assert main(["analyze", *_args(workdir, "--out", str(out2))]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_analyze_timestamp_from_mtime(workdir, monkeypatch):
    import os

    monkeypatch.delenv("SOURCE_DATE_EPOCH")
    os.utime(workdir / "firms.csv", (1600000000, 1600000000))
    assert main(["analyze", *_args(workdir)]) == 0


def test_analyze_missing_file_exits_1(workdir, capsys):
    code = main(
        ["analyze", "--data", str(workdir / "nope.csv"), "--config", str(workdir / "analysis.ini")]
    )
    assert code == 1
    assert capsys.readouterr().err.startswith("error: ")


def test_analyze_bad_data_exits_1(workdir, capsys):
    (workdir / "bad.csv").write_text(
        "firm_id,TA,NCL,CL,brand\nf1,1,xyz,3,yes\n", encoding="utf-8"
    )
    code = main(
        ["analyze", "--data", str(workdir / "bad.csv"), "--config", str(workdir / "analysis.ini")]
    )
    assert code == 1
    assert "malformed" in capsys.readouterr().err


def test_analyze_bad_out_extension_exits_2(workdir):
    with pytest.raises(SystemExit) as excinfo:
        main(["analyze", *_args(workdir, "--out", "report.txt")])
    assert excinfo.value.code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["bogus"])
    assert excinfo.value.code == 2


def test_transform(workdir, capsys):
    assert main(["transform", *_args(workdir)]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "firm_id,y1,y2"
    assert len(lines) == 1 + 6
    firm_id, y1, y2 = lines[1].split(",")
    assert firm_id == "f1"
    float(y1), float(y2)  # repr floats parse


def test_validate_ok(workdir, capsys):
    assert main(["validate", *_args(workdir)]) == 0
    out = capsys.readouterr().out
    assert "OK: 6 firm(s), 3 part(s) (TA, NCL, CL)" in out
    assert "no: 3, yes: 3" in out


def test_validate_single_group_fails(workdir, capsys):
    (workdir / "one.csv").write_text(
        "firm_id,TA,NCL,CL,brand\nf1,1,2,3,yes\nf2,4,5,6,yes\n", encoding="utf-8"
    )
    code = main(
        ["validate", "--data", str(workdir / "one.csv"), "--config", str(workdir / "analysis.ini")]
    )
    assert code == 1
    assert "group" in capsys.readouterr().err


def test_demo_table1(capsys):
    assert main(["demo", "table1"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "firm,mg1,mg2,alpha_deg,ratio21,ratio12,ilr"
    assert len(lines) == 1 + 10
    first = lines[1].split(",")
    assert first[0] == "firm01"
    assert float(first[1]) == 0.5
    assert float(first[2]) == 4.0
    assert float(first[4]) == 8.0
    # the balanced firm sits exactly on the diagonal
    mid = lines[5].split(",")
    assert float(mid[3]) == 45.0
    assert float(mid[6]) == 0.0
