"""Run configuration: JSON parsing, validation and figure presets."""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .cavity import CavityFieldState, coherent, custom, fock
from .dressed import PhysicalParams
from .raman_nath import MomentumGrid


class ConfigError(ValueError):
    pass


PARAM_FIELDS = {
    "g": "g", "lambda": "lam", "delta": "delta", "phi_L": "phi_L", "phi_c": "phi_c",
    "gamma": "gamma", "kappa": "kappa", "k": "k", "epsilon": "epsilon", "uL0": "uL0",
    "t_int": "t_int", "delta_z": "delta_z", "v_z": "v_z",
}
PARAM_SHORTCUTS = {"d", "gt"}
TOP_KEYS = {"schema_version", "figure", "config", "params", "field", "k_dx", "momentum_grid",
            "oracle", "sweep", "phase_convention", "threshold", "levels"}
ORACLE_KEYS = {"epsilon", "dt", "linearized", "center_x", "epsilon_list"}
SWEEP_NAMES = set(PARAM_FIELDS) | PARAM_SHORTCUTS | {"k_dx"}

# Preset parameters; phases default to zero and delta > 0 (d fixes only delta^2).
FIGURES = {
    "3a": {"config": "A", "params": {"d": 1.0, "gt": 50.0}, "k_dx": 1.0, "field": {"fock": 0}},
    "3b": {"config": "A", "params": {"d": 0.6, "gt": 50.0}, "k_dx": 1.0, "field": {"fock": 0}},
    "4a": {"config": "B", "params": {"d": 1.0, "gt": 50.0}, "k_dx": 1.0, "field": {"fock": 0}},
    "4b": {"config": "B", "params": {"d": 1.5, "gt": 50.0}, "k_dx": 1.0, "field": {"fock": 0}},
}


@dataclass(frozen=True, eq=False)
class RunConfig:
    config_tag: str
    raw_params: dict
    params: PhysicalParams
    field_spec: dict
    field: CavityFieldState
    k_dx: float
    momentum_grid: MomentumGrid | None = None
    oracle: dict = field(default_factory=dict)
    sweep: tuple[tuple[str, tuple[float, ...]], ...] = ()
    phase_convention: str = "uniform"
    threshold: float = 5.0
    levels: dict = field(default_factory=lambda: {"omega_g": 0.0, "omega_e": 0.0})
    figure: str | None = None

    def with_overrides(self, overrides: dict) -> "RunConfig":
        raw = dict(self.raw_params)
        k_dx = self.k_dx
        for name, value in overrides.items():
            if name == "k_dx":
                k_dx = _positive(value, "k_dx")
                continue
            # a shortcut and the field it derives cannot both be set
            for a, b in (("d", "lambda"), ("gt", "t_int")):
                if name == a:
                    raw.pop(b, None)
                elif name == b:
                    raw.pop(a, None)
            raw[name] = value
        return replace(self, raw_params=raw, params=build_params(raw), k_dx=k_dx)


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{what} must be finite")
    return value


def _positive(value, what: str) -> float:
    value = _number(value, what)
    if value <= 0:
        raise ConfigError(f"{what} must be positive, got {value}")
    return value


def _complex(value, what: str) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"{what} must be [re, im], got {value!r}")
        return complex(_number(value[0], what), _number(value[1], what))
    return complex(_number(value, what))


def _check_keys(obj, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def build_params(raw: dict) -> PhysicalParams:
    _check_keys(raw, set(PARAM_FIELDS) | PARAM_SHORTCUTS, "params")
    values = {}
    for key, name in PARAM_FIELDS.items():
        if key in raw:
            values[name] = None if key == "v_z" and raw[key] is None else _number(raw[key], f"params.{key}")
    if "d" in raw:
        if "lambda" in raw:
            raise ConfigError("params: give either 'd' or 'lambda', not both")
        d = _number(raw["d"], "params.d")
        if d < 0:
            raise ConfigError("params.d must be non-negative")
        values.setdefault("delta", 1.0)
        values.setdefault("uL0", 1.0)
        if values["delta"] == 0 or values["uL0"] <= 0:
            raise ConfigError("params.d needs non-zero delta and positive uL0")
        values["lam"] = math.sqrt(d) * abs(values["delta"]) / (2.0 * values["uL0"])
    if "gt" in raw:
        if "t_int" in raw:
            raise ConfigError("params: give either 'gt' or 't_int', not both")
        values["t_int"] = _number(raw["gt"], "params.gt") / values.get("g", 1.0)
    try:
        return PhysicalParams(**values)
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from None


def build_field(spec: dict) -> CavityFieldState:
    if not isinstance(spec, dict):
        raise ConfigError("field must be a JSON object")
    kinds = [k for k in ("fock", "coherent", "custom") if k in spec]
    if len(kinds) != 1:
        raise ConfigError("field needs exactly one of 'fock', 'coherent', 'custom'")
    kind = kinds[0]
    try:
        if kind == "fock":
            _check_keys(spec, {"fock", "n_max"}, "field")
            n = spec["fock"]
            n_max = spec.get("n_max", n)
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (n, n_max)):
                raise ConfigError("field.fock and field.n_max must be integers")
            return fock(n, n_max)
        if kind == "coherent":
            _check_keys(spec, {"coherent", "tail_tol"}, "field")
            tol = _number(spec.get("tail_tol", 1e-12), "field.tail_tol")
            return coherent(_complex(spec["coherent"], "field.coherent"), tol)
        _check_keys(spec, {"custom"}, "field")
        amps = spec["custom"]
        if not isinstance(amps, list):
            raise ConfigError("field.custom must be a list of amplitudes")
        return custom([_complex(v, "field.custom entry") for v in amps])
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"field: {exc}") from None


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in over.items():
        if key == "params" and isinstance(value, dict) and isinstance(out.get("params"), dict):
            params = out["params"]
            for k, v in value.items():
                for a, b in (("d", "lambda"), ("gt", "t_int")):
                    if k == a:
                        params.pop(b, None)
                    elif k == b:
                        params.pop(a, None)
                params[k] = v
        else:
            out[key] = copy.deepcopy(value)
    return out


def parse_config(doc: dict, figure: str | None = None) -> RunConfig:
    """Validate a config document; a figure preset (CLI flag or 'figure' key) is applied first."""
    _check_keys(doc, TOP_KEYS, "config")
    if doc.get("schema_version", 1) != 1:
        raise ConfigError(f"unsupported schema_version {doc['schema_version']!r}")
    figure = figure or doc.get("figure")
    if figure is not None:
        if figure not in FIGURES:
            raise ConfigError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
        doc = _merge(FIGURES[figure], {k: v for k, v in doc.items() if k != "figure"})

    tag = doc.get("config", "A")
    if tag not in ("A", "B"):
        raise ConfigError(f"config must be 'A' or 'B', got {tag!r}")
    raw_params = dict(doc.get("params", {}))
    params = build_params(raw_params)
    field_spec = doc.get("field", {"fock": 0})
    field_state = build_field(field_spec)
    k_dx = _positive(doc.get("k_dx", 1.0), "k_dx")

    grid = None
    if "momentum_grid" in doc:
        g = doc["momentum_grid"]
        _check_keys(g, {"p_min", "p_max", "n_points"}, "momentum_grid")
        try:
            grid = MomentumGrid(_number(g["p_min"], "p_min"), _number(g["p_max"], "p_max"),
                                int(g["n_points"]))
        except KeyError as exc:
            raise ConfigError(f"momentum_grid missing {exc}") from None
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"momentum_grid: {exc}") from None

    oracle = doc.get("oracle", {})
    _check_keys(oracle, ORACLE_KEYS, "oracle")
    for key in ("epsilon", "dt", "center_x"):
        if key in oracle:
            _number(oracle[key], f"oracle.{key}")
    if "dt" in oracle:
        _positive(oracle["dt"], "oracle.dt")
    if oracle.get("epsilon", 0.0) < 0:
        raise ConfigError("oracle.epsilon must be non-negative")
    if "epsilon_list" in oracle:
        eps = oracle["epsilon_list"]
        if not isinstance(eps, list):
            raise ConfigError("oracle.epsilon_list must be a list")
        vals = [_number(e, "oracle.epsilon_list entry") for e in eps]
        if vals != sorted(vals) or any(v < 0 for v in vals):
            raise ConfigError("oracle.epsilon_list must be non-negative and ascending")
    if not isinstance(oracle.get("linearized", False), bool):
        raise ConfigError("oracle.linearized must be true or false")

    axes = []
    for i, axis in enumerate(doc.get("sweep", [])):
        _check_keys(axis, {"name", "values"}, f"sweep[{i}]")
        name, values = axis.get("name"), axis.get("values")
        if name not in SWEEP_NAMES:
            raise ConfigError(f"sweep[{i}]: cannot sweep {name!r}")
        if not isinstance(values, list) or not values:
            raise ConfigError(f"sweep[{i}].values must be a non-empty list")
        axes.append((name, tuple(_number(v, f"sweep[{i}] value") for v in values)))

    convention = doc.get("phase_convention", "uniform")
    if convention not in ("uniform", "literal", "uniform_plus"):
        raise ConfigError(f"unknown phase_convention {convention!r}")
    threshold = _number(doc.get("threshold", 5.0), "threshold")
    if threshold <= 1:
        raise ConfigError("threshold must exceed 1")
    levels = doc.get("levels", {})
    _check_keys(levels, {"omega_g", "omega_e"}, "levels")
    levels = {"omega_g": _number(levels.get("omega_g", 0.0), "levels.omega_g"),
              "omega_e": _number(levels.get("omega_e", 0.0), "levels.omega_e")}

    return RunConfig(tag, raw_params, params, field_spec, field_state, k_dx, grid, dict(oracle),
                     tuple(axes), convention, threshold, levels, figure)


def load_config(path: str | Path | None, figure: str | None = None) -> RunConfig:
    if path is None:
        if figure is None:
            raise ConfigError("need --config or --figure")
        return parse_config({}, figure)
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(doc, figure)
