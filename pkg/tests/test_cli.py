import json
import subprocess
import sys

import pytest

from grape.cli import main
from grape.io import loads_diagram


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.csv"
    p.write_text("a,b,1\nb,c,2\na,c,3\nc,d,4\n")
    return p


def test_diagram_writes_json_and_svg(tmp_path, triangle):
    out, svg = tmp_path / "d.json", tmp_path / "d.svg"
    assert run("diagram", "--input", triangle, "--feature", "hub", "--mode", "steady", "--out", out, "--svg", svg) == 0
    d = loads_diagram(out.read_text())
    assert d.feature == "hub" and d.mode == "steady"
    assert svg.read_text().startswith("<svg")


def test_outputs_are_byte_identical(tmp_path, lesmis_csv):
    paths = []
    for i in range(2):
        out, svg = tmp_path / f"{i}.json", tmp_path / f"{i}.svg"
        run("diagram", "--input", lesmis_csv, "--feature", "whub", "--mode", "ranging",
            "--transform", "inverse", "--out", out, "--svg", svg)
        paths.append((out.read_bytes(), svg.read_bytes()))
    assert paths[0] == paths[1]


def test_hubs_text_and_json(capsys, lesmis_csv):
    assert run("hubs", "--input", lesmis_csv, "--feature", "hub", "--mode", "ranging",
               "--transform", "inverse", "--gap", "all", "--top", "3") == 0
    text = capsys.readouterr().out
    assert "Valjean" in text and len(text.strip().splitlines()) == 2 + 3
    assert run("hubs", "--input", lesmis_csv, "--feature", "hub", "--mode", "steady",
               "--transform", "inverse", "--gap", "1", "--json") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["hubs"] == ["Valjean"] and doc["selected"][0]["death"] == "inf"


def test_bottleneck_and_oracle_agree(tmp_path, triangle, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("diagram", "--input", triangle, "--feature", "matching", "--mode", "steady", "--out", a)
    run("diagram", "--input", triangle, "--feature", "hub", "--mode", "steady", "--out", b)
    capsys.readouterr()
    assert run("bottleneck", a, b) == 0
    fast = capsys.readouterr().out
    assert run("oracle", "bottleneck", a, b) == 0
    assert capsys.readouterr().out == fast


def test_oracle_counts(triangle, capsys):
    for kind in ("sigma", "rho"):
        assert run("oracle", kind, "--input", triangle, "--feature", "max-matching", "--u", 1.5, "--v", 3.5) == 0
        assert json.loads(capsys.readouterr().out)["agree"] is True


def test_oracle_pseudodistance_and_unbalanced(tmp_path, triangle, capsys):
    other = tmp_path / "other.csv"
    other.write_text("a,b,2\nb,c,1\na,c,3\nc,d,5\n")
    assert run("oracle", "pseudodistance", triangle, other) == 0
    assert float(capsys.readouterr().out) == 1.0
    assert run("oracle", "unbalanced", "--feature", "hub", "--mode", "steady", "--trials", "500") == 0
    assert json.loads(capsys.readouterr().out)["feature"] == "hub"


def test_track(tmp_path, lesmis_csv, triangle, capsys):
    assert run("track", "--inputs", lesmis_csv, triangle, "--feature", "hub", "--mode", "ranging", "--top", "6") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("lesmiserables: Valjean") and lines[1].startswith("tri:")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["diagram", "--input", "x.csv"],
        ["hubs", "--input", "x.csv", "--feature", "kernel", "--mode", "steady"],
        ["hubs", "--input", "x.csv", "--feature", "hub", "--mode", "steady", "--gap", "0"],
        ["oracle"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_data_errors_exit_2(tmp_path, triangle):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,1\nb,c,zz\n")
    assert run("diagram", "--input", bad, "--feature", "hub", "--mode", "steady", "--out", tmp_path / "o.json") == 2
    assert run("diagram", "--input", tmp_path / "missing.csv", "--feature", "hub", "--mode", "steady", "--out", "-") == 2
    zero = tmp_path / "zero.csv"
    zero.write_text("a,b,0\n")
    assert run("hubs", "--input", zero, "--feature", "hub", "--mode", "steady", "--transform", "inverse") == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"schema_version": 9}')
    assert run("bottleneck", broken, broken) == 2


def test_resource_cap_exits_3(tmp_path, triangle, monkeypatch):
    monkeypatch.setenv("GRAPE_MAX_SETS", "2")
    assert run("diagram", "--input", triangle, "--feature", "independent", "--mode", "steady", "--out", tmp_path / "o.json") == 3


def test_console_entry_point(triangle):
    proc = subprocess.run(
        [sys.executable, "-m", "grape.cli", "diagram", "--input", str(triangle), "--feature", "hub",
         "--mode", "ranging", "--out", "-"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert loads_diagram(proc.stdout).mode == "ranging"
    proc = subprocess.run([sys.executable, "-m", "grape.cli", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 1
