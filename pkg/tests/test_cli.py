import csv
import json
import math
from pathlib import Path

import pytest

from dcscatter import cli, quad

CONFIGS = Path(__file__).resolve().parents[1] / "demos" / "configs"


def write(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def read_csv(path):
    lines = Path(path).read_text().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    rows = list(csv.DictReader([ln for ln in lines if not ln.startswith("#")]))
    return header, rows


POINT = """scenario = "point_mirror"
[drive]
Omega = 1.0
amplitude = 0.01
[quadrature]
rel_tol = 1e-10
"""


def test_point_mirror_run(tmp_path):
    assert cli.main(["run", write(tmp_path, POINT), "--out-dir", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "point_mirror.csv")
    assert header[0].startswith("# dcscatter") and "units=natural" in header[0]
    assert header[1].startswith("# units:")
    assert float(rows[0]["power"]) == pytest.approx(1e-4 / (12 * math.pi), rel=1e-10)
    assert rows[0]["status"] == "ok"
    summary = json.loads((tmp_path / "point_mirror.summary.json").read_text())
    assert summary["exit_code"] == 0
    assert summary["rel_tol"] == 1e-10
    assert summary["inputs"]["drive"]["Omega"] == 1.0


def test_output_is_deterministic(tmp_path):
    cfg = write(tmp_path, POINT)
    for d in ("a", "b"):
        assert cli.main(["run", cfg, "--out-dir", str(tmp_path / d)]) == 0
    assert ((tmp_path / "a" / "point_mirror.csv").read_bytes()
            == (tmp_path / "b" / "point_mirror.csv").read_bytes())


def test_override_and_tol(tmp_path):
    cfg = write(tmp_path, POINT)
    assert cli.main(["run", cfg, "--out-dir", str(tmp_path), "--set", "drive.Omega=2.0",
                     "--tol", "1e-9"]) == 0
    _, rows = read_csv(tmp_path / "point_mirror.csv")
    assert float(rows[0]["power"]) == pytest.approx(1e-4 * 16 / (12 * math.pi), rel=1e-9)
    summary = json.loads((tmp_path / "point_mirror.summary.json").read_text())
    assert summary["rel_tol"] == 1e-9


def test_parse_override():
    assert cli.parse_override("v=0.2") == ("parameters.v", 0.2)
    assert cli.parse_override("drive.Omega=3") == ("drive.Omega", 3)
    with pytest.raises(cli.ConfigError):
        cli.parse_override("novalue")


def test_waveguide_sweep_zero_below_threshold(tmp_path):
    assert cli.main(["run", str(CONFIGS / "waveguide_g_sweep.toml"), "--out-dir",
                     str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "waveguide_g.csv")
    assert len(rows) == 41
    for r in rows:
        nu, g = float(r["nu"]), float(r["g"])
        if nu <= 2 * math.pi:
            assert g == 0.0
        else:
            assert g > 0


def test_si_units(tmp_path):
    assert cli.main(["run", str(CONFIGS / "sphere_si.toml"), "--out-dir", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "sphere.csv")
    assert "power[W]" in header[1] and "Omega[rad/s]" in header[1]
    # 1 um sphere at 10 GHz with 1 nm amplitude, checked by hand in SI units
    assert float(rows[0]["power"]) == pytest.approx(2.13e-36, rel=0.01)
    assert float(rows[0]["Omega"]) == pytest.approx(2 * math.pi * 1e10)


def test_units_flag_switches_to_natural(tmp_path):
    assert cli.main(["run", str(CONFIGS / "sphere_si.toml"), "--out-dir", str(tmp_path),
                     "--units", "natural", "--set", "R=1.0", "--set", "drive.Omega=0.01",
                     "--set", "drive.amplitude=0.01"]) == 0
    header, rows = read_csv(tmp_path / "sphere.csv")
    assert "units=natural" in header[0]
    # small sphere: P = |c|^2 (W R)^6 / (30 pi)
    assert float(rows[0]["power"]) == pytest.approx(1e-4 * 1e-12 / (30 * math.pi), rel=1e-3)


@pytest.mark.parametrize("text,needle", [
    (POINT.replace("Omega = 1.0", "Omega = -1.0"), "drive"),
    ('scenario = "plate_friction"\n[parameters]\nv = 0.1\nd = 1.0\nbogus = 2\n', "bogus"),
    ('scenario = "teleporter"\n', "scenario"),
    ('scenario = "point_mirror"\n[drive\n', "line"),
])
def test_schema_errors_exit_2_without_output(tmp_path, capsys, text, needle):
    out = tmp_path / "out"
    assert cli.main(["run", write(tmp_path, text), "--out-dir", str(out)]) == 2
    err = capsys.readouterr().err
    assert "config error" in err and needle in err
    assert not out.exists()


def test_schema_error_reports_line(tmp_path, capsys):
    out = tmp_path / "out"
    assert cli.main(["run", str(CONFIGS / "bad_negative_d.toml"), "--out-dir", str(out)]) == 2
    assert "line 5: field 'parameters.d'" in capsys.readouterr().err
    assert not out.exists()


def test_sweep_validated_before_running(tmp_path):
    text = ('scenario = "waveguide_g"\n[parameters]\nnu = 1.0\n'
            '[sweep]\nparameter = "nu"\nvalues = [1.0, 2.0, -3.0]\n')
    out = tmp_path / "out"
    assert cli.main(["run", write(tmp_path, text), "--out-dir", str(out)]) == 2
    assert not out.exists()


def test_regime_violation_exit_3(tmp_path):
    strong = POINT.replace("amplitude = 0.01", "amplitude = 0.5")
    out = tmp_path / "out"
    assert cli.main(["run", write(tmp_path, strong), "--out-dir", str(out)]) == 3
    assert not out.exists()
    atom = """scenario = "atom_plate_friction"
[parameters]
a = 0.3
d = 1.0
v = 0.1
material_sphere = { model = "drude_lorentz", omega_p = 1.0, omega_0 = 0.5, gamma = 0.2 }
material_plate = { model = "drude_lorentz", omega_p = 1.0, omega_0 = 0.0, gamma = 0.1 }
"""
    assert cli.main(["run", write(tmp_path, atom), "--out-dir", str(out)]) == 3
    assert not out.exists()


def test_truncation_exit_4(tmp_path):
    text = 'scenario = "sphere"\n[parameters]\nR = 1.0\nl_max = 4\n[drive]\nOmega = 0.2\namplitude = 0.01\n'
    text = text.replace("Omega = 0.2", "Omega = 0.25").replace("R = 1.0", "R = 40.0")
    assert cli.main(["run", write(tmp_path, text), "--out-dir", str(tmp_path)]) == 4
    _, rows = read_csv(tmp_path / "sphere.csv")
    assert rows[0]["status"] == "truncated"
    summary = json.loads((tmp_path / "sphere.summary.json").read_text())
    assert summary["exit_code"] == 4
    assert any("TruncationWarning" in m for m in summary["messages"])


def test_nonconvergence_exit_4_with_partial_results(tmp_path, monkeypatch):
    real = cli._run_point
    calls = []

    def flaky(scenario, p, harmonics, rel_tol):
        calls.append(p["nu"])
        if len(calls) == 3:
            raise quad.QuadratureError("forced", partial=quad.QuadResult(0.5, 0.1, 7))
        return real(scenario, p, harmonics, rel_tol)

    monkeypatch.setattr(cli, "_run_point", flaky)
    text = ('scenario = "waveguide_g"\n[parameters]\nnu = 1.0\n'
            '[sweep]\nparameter = "nu"\nvalues = [7.0, 8.0, 9.0, 10.0]\n')
    assert cli.main(["run", write(tmp_path, text), "--out-dir", str(tmp_path)]) == 4
    _, rows = read_csv(tmp_path / "waveguide_g.csv")
    assert [r["status"] for r in rows] == ["ok", "ok", "nonconverged"]
    assert float(rows[2]["value"]) == 0.5
    summary = json.loads((tmp_path / "waveguide_g.summary.json").read_text())
    assert summary["exit_code"] == 4


def test_plate_friction_sweep_odd(tmp_path):
    text = """scenario = "plate_friction"
[parameters]
v = 0.1
d = 1.0
material_1 = { model = "drude_lorentz", omega_p = 1.0, omega_0 = 0.0, gamma = 0.1 }
material_2 = { model = "drude_lorentz", omega_p = 1.0, omega_0 = 0.0, gamma = 0.1 }
[sweep]
parameter = "v"
values = [-0.1, 0.0, 0.1]
"""
    assert cli.main(["run", write(tmp_path, text), "--out-dir", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "plate_friction.csv")
    f = [float(r["force_per_area"]) for r in rows]
    assert f[1] == 0.0 and f[0] == pytest.approx(-f[2], rel=1e-12) and f[2] > 0


def test_verify_exit_codes(capsys):
    assert cli.main(["verify", "--suite", "invariants"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") >= 13
    assert cli.main(["verify", "--suite", "coefficients", "--perturb",
                     "point_mirror_1_3pi=1.01"]) == 1
    assert cli.main(["verify", "--suite", "invariants", "--perturb", "nope=2"]) == 2
    assert cli.main(["verify", "--suite", "invariants", "--perturb", "bad"]) == 2
