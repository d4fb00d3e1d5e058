"""Command-line scenario runner.

    dcscatter run CONFIG [--set key=value]... [--out-dir DIR] [--tol RTOL] [--units natural|si]
    dcscatter verify --suite coefficients|invariants [--perturb ROW=FACTOR]

Exit codes: 0 success, 1 verification failure, 2 config/schema error, 3 physics-regime
violation, 4 quadrature non-convergence (partial results written and flagged).
"""

import argparse
import csv
import io
import json
import math
import re
import sys
import time
import warnings
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from scipy import constants

from . import __version__, radiate, scattering, stationary
from .exceptions import ModelConsistencyError, RegimeError, RegimeWarning, TruncationWarning
from .quad import QuadratureError

EXIT_OK, EXIT_VERIFY, EXIT_SCHEMA, EXIT_REGIME, EXIT_QUAD = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    """Schema violation; ``field`` and ``line`` locate it in the config file."""

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line

    def __str__(self):
        where = ""
        if self.line is not None:
            where += f"line {self.line}: "
        if self.field is not None:
            where += f"field '{self.field}': "
        return where + self.args[0]


# -- units -----------------------------------------------------------------------------
# Natural units hbar = c = 1 with lengths in metres when converting from SI: a frequency
# w [rad/s] becomes w / c [1/m] and a temperature T [K] becomes k_B T / (hbar c) [1/m].

HBAR_C = constants.hbar * constants.c
_TO_NATURAL = {
    "length": 1.0,
    "area": 1.0,
    "wavenumber": 1.0,
    "frequency": 1.0 / constants.c,
    "temperature": constants.k / HBAR_C,
    "velocity": 1.0 / constants.c,
    "dimensionless": 1.0,
}
# factor turning a natural-unit result into SI
_FROM_NATURAL = {
    "power": HBAR_C * constants.c,
    "force_per_area": HBAR_C,
    "force": HBAR_C,
    "torque": HBAR_C,
    "frequency": constants.c,
    "dimensionless": 1.0,
}
_UNIT_LABEL = {
    "natural": {"length": "1", "area": "1", "wavenumber": "1", "frequency": "1",
                "temperature": "1", "velocity": "c", "dimensionless": "1", "power": "1",
                "force_per_area": "1", "force": "1", "torque": "1"},
    "si": {"length": "m", "area": "m^2", "wavenumber": "1/m", "frequency": "rad/s",
           "temperature": "K", "velocity": "m/s", "dimensionless": "1", "power": "W",
           "force_per_area": "N/m^2", "force": "N", "torque": "J"},
}
_UNIT_LABEL["natural"].update({k: "hbar=c=1" for k in ("length", "frequency", "temperature",
                                                        "power", "force_per_area", "force",
                                                        "torque", "area", "wavenumber")})


# -- schema ----------------------------------------------------------------------------
# (kind, constraint, required, default); constraint in {"pos", "nonneg", "any", "subluminal"}

_MATERIAL = "material"
_DRIVE_SCENARIOS = {"point_mirror", "modulated_mirror", "line", "waveguide", "plate",
                    "corrugated_plate", "sphere", "disk"}

SCHEMA = {
    "point_mirror": {},
    "modulated_mirror": {"eps0": ("wavenumber", "pos", True, None)},
    "line": {"L": ("length", "pos", True, None)},
    "waveguide": {"L": ("length", "pos", True, None)},
    "plate": {"area": ("area", "pos", True, None)},
    "corrugated_plate": {"area": ("area", "pos", True, None),
                         "q": ("wavenumber", "vector2", True, None)},
    "sphere": {"R": ("length", "pos", True, None),
               "l_max": ("dimensionless", "int_pos", False, None)},
    "disk": {"R": ("length", "pos", True, None),
             "mode": ("dimensionless", ("oscillate", "orbit"), False, "oscillate"),
             "engine": ("dimensionless", ("small_body", "full"), False, "small_body")},
    "ellipse": {"R": ("length", "pos", True, None),
                "delta": ("length", "nonneg", True, None),
                "Omega_spin": ("frequency", "pos", True, None)},
    "waveguide_g": {"nu": ("dimensionless", "nonneg", True, None)},
    "rotating_sphere": {"a": ("length", "pos", True, None),
                        "Omega_rot": ("frequency", "nonneg", True, None),
                        "material": ("dimensionless", _MATERIAL, True, None),
                        "m_max": ("dimensionless", "int_pos", False, None),
                        "l_max": ("dimensionless", "int_pos", False, stationary.L_CAP)},
    "thermal_sphere": {"a": ("length", "pos", True, None),
                       "T": ("temperature", "nonneg", True, None),
                       "T_env": ("temperature", "nonneg", True, None),
                       "Omega_rot": ("frequency", "nonneg", False, 0.0),
                       "material": ("dimensionless", _MATERIAL, True, None),
                       "l_max": ("dimensionless", "int_pos", False, stationary.L_CAP)},
    "plate_friction": {"v": ("velocity", "subluminal", True, None),
                       "d": ("length", "pos", True, None),
                       "T1": ("temperature", "nonneg", False, 0.0),
                       "T2": ("temperature", "nonneg", False, 0.0),
                       "material_1": ("dimensionless", _MATERIAL, True, None),
                       "material_2": ("dimensionless", _MATERIAL, True, None),
                       "multiple_reflections": ("dimensionless", "bool", False, True)},
    "atom_plate_friction": {"a": ("length", "pos", True, None),
                            "d": ("length", "pos", True, None),
                            "v": ("velocity", "subluminal", True, None),
                            "T1": ("temperature", "nonneg", False, 0.0),
                            "T2": ("temperature", "nonneg", False, 0.0),
                            "material_sphere": ("dimensionless", _MATERIAL, True, None),
                            "material_plate": ("dimensionless", _MATERIAL, True, None),
                            "method": ("dimensionless", ("general", "zero_t"), False,
                                       "general"),
                            "l_max": ("dimensionless", "int_nonneg", False, 0)},
}

_TOP_KEYS = {"scenario", "units", "parameters", "drive", "quadrature", "sweep", "output"}
_MATERIAL_KEYS = {"dirichlet": set(), "vacuum": set(),
                  "drude_lorentz": {"omega_p", "omega_0", "gamma"}}


def _line_of(text, field):
    """1-based line of the assignment of the last component of a dotted ``field``."""
    if text is None:
        return None
    key = field.split(".")[-1]
    section = field.split(".")[0] if "." in field else None
    current = None
    for i, line in enumerate(text.splitlines(), 1):
        m = re.match(r"\s*\[([^\]]+)\]", line)
        if m:
            current = m.group(1).strip()
            continue
        if re.match(rf"\s*{re.escape(key)}\s*=", line) and (section is None or current == section
                                                             or field.count(".") > 1):
            return i
    return None


def _number(value, field, text):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field, _line_of(text, field))
    if not math.isfinite(value):
        raise ConfigError(f"must be finite, got {value!r}", field, _line_of(text, field))
    return float(value)


def _check_value(value, spec, field, text, units):
    kind, cons, _, _ = spec
    line = _line_of(text, field)
    if cons == _MATERIAL:
        return _parse_material(value, field, text, units)
    if cons == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"expected true/false, got {value!r}", field, line)
        return value
    if isinstance(cons, tuple):
        if value not in cons:
            raise ConfigError(f"must be one of {list(cons)}, got {value!r}", field, line)
        return value
    if cons in ("int_pos", "int_nonneg"):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"expected an integer, got {value!r}", field, line)
        if value < (1 if cons == "int_pos" else 0):
            raise ConfigError(f"must be {'>= 1' if cons == 'int_pos' else '>= 0'}, got {value}",
                              field, line)
        return value
    if cons == "vector2":
        if not isinstance(value, list) or len(value) != 2:
            raise ConfigError(f"expected a 2-vector [qx, qy], got {value!r}", field, line)
        return tuple(_number(x, field, text) * _TO_NATURAL[kind] for x in value)
    x = _number(value, field, text)
    if cons == "pos" and not x > 0:
        raise ConfigError(f"must be > 0, got {x}", field, line)
    if cons == "nonneg" and x < 0:
        raise ConfigError(f"must be >= 0, got {x}", field, line)
    factor = _TO_NATURAL[kind] if units == "si" else 1.0
    x *= factor
    if cons == "subluminal" and not abs(x) < 1:
        raise ConfigError(f"|v| must be below the speed of light, got {value}", field, line)
    return x


def _parse_material(value, field, text, units):
    line = _line_of(text, field)
    if not isinstance(value, dict) or "model" not in value:
        raise ConfigError("expected a table with a 'model' key", field, line)
    model = value["model"]
    if model not in _MATERIAL_KEYS:
        raise ConfigError(f"unknown material model {model!r}; expected one of "
                          f"{sorted(_MATERIAL_KEYS)}", field, line)
    extra = set(value) - {"model"} - _MATERIAL_KEYS[model]
    if extra:
        raise ConfigError(f"unknown material keys {sorted(extra)}", field, line)
    if model == "dirichlet":
        return scattering.PerfectDirichlet()
    if model == "vacuum":
        return scattering.Vacuum()
    missing = _MATERIAL_KEYS[model] - set(value)
    if missing:
        raise ConfigError(f"missing material keys {sorted(missing)}", field, line)
    f = _TO_NATURAL["frequency"] if units == "si" else 1.0
    vals = {k: _number(value[k], f"{field}.{k}", text) for k in ("omega_p", "omega_0", "gamma")}
    if vals["omega_p"] < 0 or vals["omega_0"] < 0 or vals["gamma"] < 0:
        raise ConfigError("Drude-Lorentz parameters must be non-negative", field, line)
    return scattering.DrudeLorentz(vals["omega_p"] * f, vals["omega_0"] * f, vals["gamma"] * f)


def _parse_drive(cfg, text, units, scenario):
    drive = cfg.get("drive")
    if drive is None:
        raise ConfigError("radiation scenarios need a [drive] table", "drive")
    if not isinstance(drive, dict):
        raise ConfigError("expected a table", "drive")
    known = {"Omega", "amplitude", "harmonics"}
    extra = set(drive) - known
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)}", "drive", _line_of(text, "drive"))
    fw = _TO_NATURAL["frequency"] if units == "si" else 1.0
    # amplitudes are lengths (metres) or, for the modulated mirror, a coupling strength
    # in 1/m: both carry unit factor 1 into natural units
    if "harmonics" in drive:
        if "Omega" in drive or "amplitude" in drive:
            raise ConfigError("give either harmonics or Omega/amplitude", "drive.harmonics",
                              _line_of(text, "drive.harmonics"))
        rows = drive["harmonics"]
        if not isinstance(rows, list) or not rows:
            raise ConfigError("expected a non-empty list of [Omega, re, (im)]",
                              "drive.harmonics", _line_of(text, "drive.harmonics"))
        harmonics = []
        for row in rows:
            if not isinstance(row, list) or len(row) not in (2, 3):
                raise ConfigError(f"harmonic entries are [Omega, re] or [Omega, re, im], "
                                  f"got {row!r}", "drive.harmonics",
                                  _line_of(text, "drive.harmonics"))
            vals = [_number(x, "drive.harmonics", text) for x in row]
            c = complex(vals[1], vals[2] if len(vals) == 3 else 0.0)
            harmonics.append((vals[0] * fw, c))
    else:
        for k in ("Omega", "amplitude"):
            if k not in drive:
                raise ConfigError("missing required key", f"drive.{k}")
        harmonics = [(_number(drive["Omega"], "drive.Omega", text) * fw,
                      _number(drive["amplitude"], "drive.amplitude", text))]
    freqs = [W for W, _ in harmonics]
    if any(not W > 0 for W in freqs):
        raise ConfigError("drive frequencies must be > 0", "drive", _line_of(text, "Omega"))
    if len(set(freqs)) != len(freqs):
        raise ConfigError("drive frequencies must be distinct", "drive")
    return harmonics


def _set_path(cfg, path, value):
    parts = path.split(".")
    node = cfg
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigError("cannot set a key below a non-table value", path)
    node[parts[-1]] = value


def _get_path(cfg, path):
    node = cfg
    for p in path.split("."):
        if not isinstance(node, dict) or p not in node:
            raise KeyError(path)
        node = node[p]
    return node


def parse_override(item):
    """``key=value`` with a TOML value (bare strings are accepted); undotted keys go to
    the ``parameters`` table."""
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not of the form key=value", item)
    key, raw = item.split("=", 1)
    key = key.strip()
    try:
        value = tomllib.loads(f"x = {raw.strip()}")["x"]
    except tomllib.TOMLDecodeError:
        value = raw.strip()
    top = key.split(".")[0]
    if top not in _TOP_KEYS:
        key = "parameters." + key
    return key, value


def load_config(path, overrides=(), tol=None, units=None):
    """Read, override and validate a config; returns ``(raw_config, text)``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        cfg = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        if line is None:
            m = re.search(r"line (\d+)", str(exc))
            line = int(m.group(1)) if m else None
        raise ConfigError(f"TOML syntax error: {exc}", line=line) from exc
    for item in overrides:
        key, value = parse_override(item)
        _set_path(cfg, key, value)
    if tol is not None:
        _set_path(cfg, "quadrature.rel_tol", tol)
    if units is not None:
        cfg["units"] = units
    return cfg, text


def validate(cfg, text=None):
    """Check the whole config (every sweep point) and return the list of run points.

    Each point is ``(sweep_value, params, harmonics, rel_tol)`` in natural units.
    """
    extra = set(cfg) - _TOP_KEYS
    if extra:
        key = sorted(extra)[0]
        raise ConfigError(f"unknown top-level key; expected one of {sorted(_TOP_KEYS)}",
                          key, _line_of(text, key))
    scenario = cfg.get("scenario")
    if scenario is None:
        raise ConfigError("missing required key", "scenario")
    if scenario not in SCHEMA:
        raise ConfigError(f"unknown scenario {scenario!r}; expected one of {sorted(SCHEMA)}",
                          "scenario", _line_of(text, "scenario"))
    units = cfg.get("units", "natural")
    if units not in ("natural", "si"):
        raise ConfigError(f"units must be 'natural' or 'si', got {units!r}", "units",
                          _line_of(text, "units"))
    quad_cfg = cfg.get("quadrature", {})
    if set(quad_cfg) - {"rel_tol"}:
        raise ConfigError(f"unknown keys {sorted(set(quad_cfg) - {'rel_tol'})}", "quadrature")
    rel_tol = None
    if "rel_tol" in quad_cfg:
        rel_tol = _number(quad_cfg["rel_tol"], "quadrature.rel_tol", text)
        if not 0 < rel_tol < 1:
            raise ConfigError("must lie in (0, 1)", "quadrature.rel_tol",
                              _line_of(text, "quadrature.rel_tol"))
    out = cfg.get("output", {})
    if set(out) - {"csv", "summary"}:
        raise ConfigError(f"unknown keys {sorted(set(out) - {'csv', 'summary'})}", "output")

    sweep = cfg.get("sweep")
    values = [None]
    sweep_path = None
    if sweep is not None:
        sweep_path = sweep.get("parameter")
        if not isinstance(sweep_path, str):
            raise ConfigError("sweep needs a 'parameter' path such as 'parameters.v'",
                              "sweep.parameter", _line_of(text, "sweep.parameter"))
        if "values" in sweep:
            values = sweep["values"]
            if not isinstance(values, list) or not values:
                raise ConfigError("expected a non-empty list", "sweep.values",
                                  _line_of(text, "sweep.values"))
        elif {"start", "stop", "num"} <= set(sweep):
            start = _number(sweep["start"], "sweep.start", text)
            stop = _number(sweep["stop"], "sweep.stop", text)
            num = sweep["num"]
            if isinstance(num, bool) or not isinstance(num, int) or num < 1:
                raise ConfigError("must be a positive integer", "sweep.num",
                                  _line_of(text, "sweep.num"))
            values = [start + (stop - start) * i / (num - 1) if num > 1 else start
                      for i in range(num)]
        else:
            raise ConfigError("sweep needs 'values' or 'start'/'stop'/'num'", "sweep")
        if set(sweep) - {"parameter", "values", "start", "stop", "num"}:
            raise ConfigError("unknown sweep keys", "sweep")
        if "." not in sweep_path:
            sweep_path = "parameters." + sweep_path

    points = []
    for val in values:
        c = json.loads(json.dumps(cfg))
        if sweep_path is not None:
            _set_path(c, sweep_path, val)
        params = _validate_params(c, scenario, text, units)
        harmonics = _parse_drive(c, text, units, scenario) if scenario in _DRIVE_SCENARIOS \
            else None
        if scenario not in _DRIVE_SCENARIOS and "drive" in c:
            raise ConfigError(f"scenario {scenario!r} takes no [drive] table", "drive",
                              _line_of(text, "drive"))
        points.append((val, params, harmonics, rel_tol))
    return scenario, units, sweep_path, points


def _validate_params(cfg, scenario, text, units):
    schema = SCHEMA[scenario]
    raw = cfg.get("parameters", {})
    if not isinstance(raw, dict):
        raise ConfigError("expected a table", "parameters")
    extra = set(raw) - set(schema)
    if extra:
        key = sorted(extra)[0]
        raise ConfigError(f"unknown parameter for scenario {scenario!r}; expected "
                          f"{sorted(schema)}", f"parameters.{key}",
                          _line_of(text, f"parameters.{key}"))
    params = {}
    for key, spec in schema.items():
        field = f"parameters.{key}"
        if key not in raw:
            if spec[2]:
                raise ConfigError("missing required parameter", field)
            params[key] = spec[3]
            continue
        params[key] = _check_value(raw[key], spec, field, text, units)
    return params


# -- dispatch --------------------------------------------------------------------------
# each runner returns (rows, cutoffs); a row maps column -> (value, unit kind)

def _radiation(scenario, p, harmonics, rel_tol):
    drive = scattering.DriveSpectrum(tuple(harmonics))
    cut = {}
    if scenario == "point_mirror":
        geo = radiate.Point1D()
    elif scenario == "modulated_mirror":
        geo = radiate.ModulatedMirror1D(p["eps0"])
    elif scenario == "line":
        geo = radiate.Line2D(p["L"])
    elif scenario == "waveguide":
        geo = radiate.WaveguideSegment(p["L"])
    elif scenario == "plate":
        geo = radiate.Plate3D(p["area"])
    elif scenario == "corrugated_plate":
        geo = radiate.CorrugatedPlate3D(p["area"], p["q"])
    elif scenario == "sphere":
        geo = radiate.Sphere3D(p["R"], p["l_max"])
        cut["l_max"] = p["l_max"] or max(radiate.default_l_max(W, p["R"]) for W, _ in harmonics)
    else:
        geo = radiate.Disk2D(p["R"], p["mode"])
    sc = radiate.GeometryScenario(geo, drive)
    if scenario == "disk" and (p["engine"] == "small_body" or p["mode"] == "orbit"):
        rows = []
        for W, c in harmonics:
            one = radiate.GeometryScenario(geo, scattering.DriveSpectrum(((W, c),)))
            r = radiate.small_body_power(one, rel_tol=rel_tol or 1e-10)
            rows.append({"Omega": (W, "frequency"), "power": (r.value, "power"),
                         "power_err": (r.abs_err, "power")})
        return rows, cut
    spec = radiate.radiated_power(sc, rel_tol=rel_tol)
    rows = [{"Omega": (e.Omega, "frequency"), "power": (e.power, "power"),
             "power_err": (e.abs_err, "power")} for e in spec.entries]
    return rows, cut


def _run_point(scenario, p, harmonics, rel_tol):
    kw = {} if rel_tol is None else {"rel_tol": rel_tol}
    if scenario in _DRIVE_SCENARIOS:
        return _radiation(scenario, p, harmonics, rel_tol)
    if scenario == "ellipse":
        geo = radiate.Ellipse2D(p["R"], p["delta"], p["Omega_spin"])
        r = radiate.small_body_power(radiate.GeometryScenario(geo), **kw)
        return [{"Omega": (p["Omega_spin"], "frequency"), "power": (r.value, "power"),
                 "power_err": (r.abs_err, "power"), "torque": (r.torque, "torque")}], {}
    if scenario == "waveguide_g":
        return [{"g": (radiate.waveguide_g(p["nu"]), "dimensionless")}], {}
    if scenario == "rotating_sphere":
        body = stationary.RotatingBody(p["a"], p["material"], p["Omega_rot"])
        r = stationary.rotating_power(body, m_max=p["m_max"], l_max=p["l_max"], **kw)
        return [{"power": (r.value, "power"), "power_err": (r.abs_err, "power"),
                 "tail": (r.tail, "power")}], {"l_max": p["l_max"], "m_max": p["m_max"]}
    if scenario == "thermal_sphere":
        body = stationary.RotatingBody(p["a"], p["material"], p["Omega_rot"])
        motion = "rotation" if p["Omega_rot"] > 0 else "none"
        r = stationary.thermal_radiation_power(body, p["T"], p["T_env"], motion,
                                               l_max=p["l_max"], **kw)
        return [{"power": (r.value, "power"), "power_err": (r.abs_err, "power"),
                 "tail": (r.tail, "power")}], {"l_max": p["l_max"]}
    if scenario == "plate_friction":
        sc = stationary.PlatePairScenario(p["material_1"], p["material_2"], p["v"], p["d"],
                                          p["T1"], p["T2"])
        r = stationary.plate_friction(sc, multiple_reflections=p["multiple_reflections"], **kw)
        return [{"force_per_area": (r.value, "force_per_area"),
                 "force_per_area_err": (r.abs_err, "force_per_area")}], {}
    if scenario == "atom_plate_friction":
        sc = stationary.AtomPlateScenario(p["a"], p["d"], p["v"], p["material_sphere"],
                                          p["material_plate"], p["T1"], p["T2"])
        r = stationary.atom_plate_friction(sc, method=p["method"], l_max=p["l_max"], **kw)
        return [{"force": (r.value, "force"), "force_err": (r.abs_err, "force")}], \
            {"l_max": p["l_max"]}
    raise ConfigError(f"unknown scenario {scenario!r}", "scenario")


def _convert(value, kind, units):
    if value is None:
        return None
    if units == "si":
        return value * _FROM_NATURAL.get(kind, 1.0) if kind in _FROM_NATURAL else value
    return value


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return repr(float(x))


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)


def execute(cfg, text=None, out_dir=".", stream=sys.stdout):
    """Validate and run a config dict, writing CSV and summary files; returns exit code."""
    t0 = time.perf_counter()
    scenario, units, sweep_path, points = validate(cfg, text)
    out_dir = Path(out_dir)
    out_cfg = cfg.get("output", {})
    csv_path = out_dir / out_cfg.get("csv", f"{scenario}.csv")
    summary_path = out_dir / out_cfg.get("summary", f"{scenario}.summary.json")

    rows, cutoffs, messages = [], {}, []
    code = EXIT_OK
    for sweep_value, params, harmonics, rel_tol in points:
        status = "ok"
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            warnings.simplefilter("error", RegimeWarning)
            try:
                point_rows, cut = _run_point(scenario, params, harmonics, rel_tol)
            except (RegimeWarning, RegimeError, ModelConsistencyError) as exc:
                msg = f"regime violation: {exc}"
                print(f"error: {msg}", file=sys.stderr)
                return EXIT_REGIME
            except QuadratureError as exc:
                partial = exc.partial
                val = getattr(partial, "value", None)
                point_rows = [{"value": (val, "dimensionless")}]
                cut = {}
                status = "nonconverged"
                messages.append(f"quadrature did not converge: {exc}")
                code = EXIT_QUAD
        for w in caught:
            if issubclass(w.category, TruncationWarning):
                status = "truncated"
                code = EXIT_QUAD
            messages.append(f"{w.category.__name__}: {w.message}")
        cutoffs.update(cut)
        for r in point_rows:
            row = {}
            if sweep_path is not None:
                row[sweep_column(sweep_path)] = (sweep_value, _sweep_kind(scenario, sweep_path))
            row.update(r)
            row["status"] = (status, None)
            rows.append(row)
        if code == EXIT_QUAD and status == "nonconverged":
            break

    columns = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    kinds = {}
    for r in rows:
        for k, (_, kind) in r.items():
            kinds.setdefault(k, kind)
    labels = _UNIT_LABEL[units]

    out_dir.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    buf.write(f"# dcscatter {__version__} scenario={scenario} units={units}\n")
    buf.write("# units: " + ", ".join(
        f"{c}[{labels.get(kinds[c], '1') if kinds[c] else '-'}]" for c in columns) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        out = []
        for c in columns:
            if c not in r:
                out.append("")
                continue
            value, kind = r[c]
            if kind is None:
                out.append(value)
            elif c == sweep_column(sweep_path):
                # sweep values are echoed in the input units
                out.append(_fmt(value) if not isinstance(value, str) else value)
            else:
                out.append(_fmt(_convert(value, kind, units)))
        writer.writerow(out)
    csv_path.write_text(buf.getvalue(), encoding="utf-8")

    report = {
        "version": __version__,
        "scenario": scenario,
        "units": units,
        "inputs": cfg,
        "results": [{c: v if k is None or c == sweep_column(sweep_path)
                     else _convert(v, k, units) for c, (v, k) in r.items()} for r in rows],
        "result_units": {c: (labels.get(kinds[c], "1") if kinds[c] else None) for c in columns},
        "cutoffs": cutoffs,
        "rel_tol": points[0][3],
        "messages": messages,
        "exit_code": code,
        "wall_time_s": time.perf_counter() - t0,
        "csv": str(csv_path),
    }
    summary_path.write_text(json.dumps(_json_safe(report), indent=2, sort_keys=True) + "\n",
                            encoding="utf-8")
    print(f"wrote {csv_path} and {summary_path}", file=stream)
    for m in messages:
        print(f"warning: {m}", file=sys.stderr)
    return code


def sweep_column(path):
    """CSV column of a sweep: the parameter name, or the dotted path outside [parameters]."""
    if not path:
        return None
    return path[len("parameters."):] if path.startswith("parameters.") else path


def _sweep_kind(scenario, path):
    parts = path.split(".")
    if parts[0] == "parameters" and len(parts) == 2:
        spec = SCHEMA[scenario].get(parts[1])
        if spec is not None:
            return spec[0]
    if parts[0] == "drive" and parts[-1] == "Omega":
        return "frequency"
    return "dimensionless"


def cmd_run(args):
    try:
        cfg, text = load_config(args.config, args.set or (), args.tol, args.units)
        return execute(cfg, text, args.out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def cmd_verify(args):
    from . import verify
    perturb = {}
    for item in args.perturb or ():
        if "=" not in item:
            print(f"bad --perturb {item!r}; expected ROW=FACTOR", file=sys.stderr)
            return EXIT_SCHEMA
        row, factor = item.split("=", 1)
        try:
            perturb[row.strip()] = float(factor)
        except ValueError:
            print(f"bad --perturb factor {factor!r}", file=sys.stderr)
            return EXIT_SCHEMA
    try:
        ok = verify.run_suite(args.suite, perturb=perturb)
    except KeyError as exc:
        print(f"unknown row in --perturb: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    ap = argparse.ArgumentParser(prog="dcscatter", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario config")
    run.add_argument("config")
    run.add_argument("--set", action="append", metavar="KEY=VALUE",
                     help="override a config value (repeatable); bare keys go to [parameters]")
    run.add_argument("--out-dir", default=".")
    run.add_argument("--tol", type=float, default=None, help="quadrature rel_tol override")
    run.add_argument("--units", choices=("natural", "si"), default=None)
    run.set_defaults(func=cmd_run)
    ver = sub.add_parser("verify", help="run the acceptance battery")
    ver.add_argument("--suite", choices=("coefficients", "invariants"), required=True)
    ver.add_argument("--perturb", action="append", metavar="ROW=FACTOR",
                     help="multiply a row's reference value (fault injection)")
    ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
