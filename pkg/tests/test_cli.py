import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from fencekit.cli import SWEEP_COLUMNS, main, run_sweep, sweep_csv

SQUARE = json.dumps({"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 8 and all(r["pass"] for r in rows)


def test_chord_json(capsys):
    code, out, _ = run(capsys, "chord", SQUARE, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["G"] == pytest.approx(2.0, abs=1e-8)
    assert data["kind"] == "chord"


def test_arc_writes_svg(capsys, tmp_path):
    path = tmp_path / "arc.svg"
    code, _, _ = run(capsys, "arc", SQUARE, "--svg", str(path))
    assert code == 0
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 2


def test_body_from_file(capsys, tmp_path):
    f = tmp_path / "hex.json"
    f.write_text(json.dumps({"kind": "regular-ngon", "n": 6}))
    code, out, _ = run(capsys, "centrosym", str(f), "--json")
    assert code == 0
    assert json.loads(out)["length"] == pytest.approx(3**0.5, abs=1e-9)


def test_constants_command(capsys):
    code, out, _ = run(capsys, "constants", SQUARE, "--alpha", "0.5,1", "--json")
    assert code == 0
    assert json.loads(out)["gamma_half"] == pytest.approx(2**0.5, abs=1e-6)


def test_chl_report(capsys):
    code, out, _ = run(capsys, "chl", "--report", "--json")
    assert code == 0
    assert json.loads(out)["area_gauss"] == pytest.approx(0.7981440005, abs=1e-9)


def test_auerbach_command(capsys):
    code, out, _ = run(capsys, "auerbach", "--samples", "512")
    assert code == 0
    assert "area" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["chord", "/no/such/file.json"],
        ["chord", "{not json"],
        ["chord", json.dumps({"vertices": [[0, 0], [0, 1], [1, 0]]})],
        ["frobnicate"],
        ["sweep", "--n", "0"],
        ["constants", SQUARE, "--alpha", "0.1"],
        ["chl", "--profile", "/no/such/profile.json"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_thread_count(capsys, monkeypatch):
    monkeypatch.setenv("FENCEKIT_THREADS", "many")
    code, _, err = run(capsys, "sweep", "--n", "1")
    assert code == 2 and "FENCEKIT_THREADS" in err


def test_sweep_is_reproducible(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("FENCEKIT_THREADS", "1")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "sweep", "--n", "3", "--seed", "7", "-o", str(a))[0] == 0
    assert run(capsys, "sweep", "--n", "3", "--seed", "7", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().splitlines()[0].split(",")
    assert header == SWEEP_COLUMNS


def test_sweep_does_not_depend_on_workers():
    serial = run_sweep(4, 3, 128, workers=1)
    pooled = run_sweep(4, 3, 128, workers=2)
    assert sweep_csv(serial) == sweep_csv(pooled)
    assert "wall_time" in sweep_csv(serial, timing=True).splitlines()[0]


def test_render_body(capsys):
    code, out, _ = run(capsys, "render", SQUARE, "--cuts", "chord")
    assert code == 0
    root = ET.fromstring(out.split("\n", 1)[1])
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 2


def test_render_rounded_triangle(capsys):
    code, out, _ = run(capsys, "render", "rounded-triangle", "--cuts", "arc")
    assert code == 0
    root = ET.fromstring(out.split("\n", 1)[1])
    assert len(root.findall("{http://www.w3.org/2000/svg}path")) == 13


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "fencekit.cli", "chord", SQUARE],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "G: 2" in proc.stdout
