import csv
import io
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from vacuum_mirror.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, RADIATION_HEADER, run
from vacuum_mirror.units import CODATA_2018

BENCHMARK = {
    "charge_multiple": 1,
    "mass_kg": CODATA_2018.electron_mass,
    "distance_m": 1e-6,
    "duration_s": 1.0,
    "omega_rad_per_s": 2.5 * CODATA_2018.light_speed / 1e-6,
    "intensity_W_per_cm2": 1.0,
}


def write_config(tmp_path, config, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_rates_csv(tmp_path):
    out = tmp_path / "rates.csv"
    assert run(["rates", "--xi-min", "0.1", "--xi-max", "10", "--steps", "100", "--out", str(out)]) == EXIT_OK
    rows = read_csv(out)
    assert rows[0] == ["xi", "R_z", "R_x"]
    assert len(rows) == 101
    assert float(rows[1][0]) == 0.1 and float(rows[-1][0]) == 10.0
    at_one = [r for r in rows[1:] if float(r[0]) == 1.0]
    assert at_one and float(at_one[0][2]) == 0.0
    assert b"\r\n" not in out.read_bytes()


def test_rates_round_trip_digits(tmp_path):
    out = tmp_path / "rates.csv"
    run(["rates", "--steps", "10", "--out", str(out)])
    from vacuum_mirror.rates import rate_longitudinal
    for row in read_csv(out)[1:]:
        assert float(row[1]) == rate_longitudinal(float(row[0]))


def test_rates_to_stdout(capsys):
    assert run(["rates", "--steps", "5"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "xi,R_z,R_x" and len(lines) == 6


def test_radiation_csv(tmp_path):
    out = tmp_path / "rad.csv"
    assert run(["radiation", "--xi-min", "0.05", "--xi-max", "20", "--steps", "400", "--out", str(out)]) == EXIT_OK
    rows = read_csv(out)
    assert tuple(rows[0]) == RADIATION_HEADER
    body = [[float(v) for v in r] for r in rows[1:]]
    assert all(r[6] > 0 and r[7] > 0 for r in body)
    at_one = [r for r in body if r[0] == 1.0][0]
    assert math.isfinite(at_one[5]) and at_one[7] == at_one[3]


def test_radiation_row_at_pi(capsys):
    assert run(["radiation", "--xi-min", str(math.pi), "--xi-max", "4", "--steps", "2"]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert float(rows[1][2]) == pytest.approx(2 * math.pi - 6 / math.pi, rel=1e-13)


@pytest.mark.parametrize("argv", [
    ["radiation", "--xi-min", "0", "--xi-max", "5"],
    ["radiation", "--xi-min", "5", "--xi-max", "1"],
    ["rates", "--steps", "1"],
    ["rates", "--xi-min", "nan"],
    ["rates", "--steps", "ten"],
    ["nonsense"],
    [],
    ["verify", "--suite", "bogus"],
    ["verify", "--tolerance", "-1"],
    ["figures"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err


def test_figures(tmp_path):
    outdir = tmp_path / "figs"
    assert run(["figures", "--which", "all", "--out", str(outdir)]) == EXIT_OK
    for n, header in ((1, ["xi", "R_z", "R_x"]), (2, ["xi", "S_z", "combined_z"]), (3, ["xi", "S_x", "combined_x"])):
        rows = read_csv(outdir / f"fig{n}.csv")
        assert rows[0] == header
        xs = [float(r[0]) for r in rows[1:]]
        assert 0.0 < xs[0] and xs == sorted(xs)
        root = ET.fromstring((outdir / f"fig{n}.svg").read_text())
        assert root.tag.endswith("svg")
        assert root.get("width") == "800" and root.get("height") == "500"
        lines = [el for el in root.iter() if el.tag.endswith("polyline")]
        assert len(lines) == 2
        for line in lines:
            assert len(line.get("points").split()) == len(rows) - 1
    assert float(read_csv(outdir / "fig1.csv")[-1][0]) == 10.0


def test_figures_single(tmp_path):
    assert run(["figures", "--which", "1", "--out", str(tmp_path)]) == EXIT_OK
    assert sorted(p.name for p in tmp_path.iterdir()) == ["fig1.csv", "fig1.svg"]


def test_estimate_benchmark(tmp_path, capsys):
    assert run(["estimate", "--config", write_config(tmp_path, BENCHMARK)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == "1"
    assert doc["validity_flags"] == []
    assert doc["inputs"]["distance_m"] == 1e-6
    assert doc["xi"] == pytest.approx(2.5, rel=1e-14)
    for axis in ("z", "x"):
        assert 0.3e-8 < abs(doc["delta_T"][axis]) < 3e-8
    assert list(doc) == sorted(doc)


def test_estimate_plasma_flag(tmp_path, capsys):
    config = dict(BENCHMARK, distance_m=0.05e-6)
    assert run(["estimate", "--config", write_config(tmp_path, config)]) == EXIT_OK
    assert "plasma_wavelength" in json.loads(capsys.readouterr().out)["validity_flags"]


@pytest.mark.parametrize("mutate,field", [
    (lambda c: c.pop("mass_kg"), "mass_kg"),
    (lambda c: c.update(distance_m=-1.0), "distance_m"),
    (lambda c: c.update(duration_s="long"), "duration_s"),
    (lambda c: c.update(colour=3), "colour"),
    (lambda c: c.update(peak_field_V_per_m=10.0), "peak_field_V_per_m"),
])
def test_estimate_config_errors(tmp_path, capsys, mutate, field):
    config = dict(BENCHMARK)
    mutate(config)
    assert run(["estimate", "--config", write_config(tmp_path, config)]) == EXIT_USAGE
    assert field in capsys.readouterr().err


def test_estimate_unreadable_config(tmp_path, capsys):
    assert run(["estimate", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["estimate", "--config", str(bad)]) == EXIT_USAGE


def test_estimate_out_of_model_bounds(tmp_path, capsys):
    config = dict(BENCHMARK, omega_rad_per_s=1e9, intensity_W_per_cm2=1e12)
    assert run(["estimate", "--config", write_config(tmp_path, config)]) == EXIT_USAGE
    assert "amplitude" in capsys.readouterr().err


def test_verify_residues(capsys):
    assert run(["verify", "--suite", "residues", "--tolerance", "1e-8"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["suite"] == "residues" and doc["passed"] is True
    assert doc["schema_version"] == "1"
    assert all({"id", "expected", "actual", "tolerance", "passed"} <= set(c) for c in doc["cases"])


def test_verify_failure_exit_code(capsys):
    assert run(["verify", "--suite", "residues", "--tolerance", "1e-300"]) == EXIT_FAILED
    captured = capsys.readouterr()
    assert json.loads(captured.out)["passed"] is False
    assert "failed" in captured.err


@pytest.mark.parametrize("suite", ["kernels", "radiation", "units"])
def test_verify_fast_suites(suite, capsys):
    assert run(["verify", "--suite", suite]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"] is True


def _outputs(tmp_path, tag):
    d = tmp_path / tag
    d.mkdir()
    config = write_config(tmp_path, BENCHMARK, f"{tag}.json")
    commands = [
        ["rates", "--out", str(d / "rates.csv")],
        ["radiation", "--out", str(d / "radiation.csv")],
        ["figures", "--which", "all", "--out", str(d / "figs")],
        ["estimate", "--config", config, "--out", str(d / "estimate.json")],
        ["verify", "--suite", "residues", "--out", str(d / "verify.json")],
    ]
    for argv in commands:
        assert run(argv) == EXIT_OK
    return {p.relative_to(d): p.read_bytes() for p in sorted(d.rglob("*")) if p.is_file()}


def test_determinism(tmp_path):
    first = _outputs(tmp_path, "a")
    second = _outputs(tmp_path, "b")
    assert len(first) == 10
    assert first == second


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "vacuum_mirror", "rates", "--steps", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "xi,R_z,R_x"
    proc = subprocess.run([sys.executable, "-m", "vacuum_mirror", "frobnicate"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and "usage" in proc.stderr
