"""Run configuration: JSON file values, overridden by command-line flags."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from . import spectra
from .kinematics import DecayingZonal, Elliptic, Hyperbolic, ShearFlowSpec, ZonalOnly
from .numerics import RealGrid1D


class ConfigError(ValueError):
    pass


# key -> (expected type, default)
FIELDS: dict[str, tuple[type, Any]] = {
    "flow": (str, "zonal"),
    "omega_z": (float, 2.0),
    "omega_s": (float, None),
    "tau0": (float, None),
    "model": (str, "delta"),
    "a": (float, 0.0),
    "b": (float, 1.0),
    "phi": (float, 1.0),
    "alpha": (float, 100.0),
    "nu": (float, 0.1),
    "t_grid": (list, [0.0, 6.0, 11]),
    "omega_grid": (list, None),
    "output": (str, None),
    "format": (str, "csv"),
    "seed": (int, 0),
}

FLOWS = ("zonal", "hyperbolic", "elliptic", "decaying")
MODELS = ("delta", "constant", "gaussian", "aniso")


@dataclass(frozen=True)
class RunConfig:
    flow: ShearFlowSpec
    model: spectra.SpectrumModel
    nu: float
    t_grid: RealGrid1D
    omega_grid: RealGrid1D | None
    output_path: str | None
    format: str
    seed: int
    raw: Mapping[str, Any]


def _coerce(key: str, value, kind: type):
    if value is None:
        return None
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected a number, got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return value
    if kind is str:
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected a string, got {value!r}")
        return value
    if kind is list:
        if not isinstance(value, (list, tuple)) or len(value) != 3:
            raise ConfigError(f"{key}: expected [start, stop, count], got {value!r}")
        lo, hi, n = value
        if isinstance(n, bool) or not isinstance(n, int):
            raise ConfigError(f"{key}: count must be an integer, got {n!r}")
        for v in (lo, hi):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{key}: bounds must be numbers, got {value!r}")
        return [float(lo), float(hi), n]
    raise AssertionError(kind)


def _grid(key, v):
    if v is None:
        return None
    try:
        return RealGrid1D(*v)
    except ValueError as e:
        raise ConfigError(f"{key}: {e}") from None


def build_flow(d: Mapping[str, Any]) -> ShearFlowSpec:
    kind, wz, ws = d["flow"], d["omega_z"], d["omega_s"]
    try:
        if kind == "zonal":
            return ZonalOnly(wz)
        if kind == "hyperbolic":
            return Hyperbolic(wz, wz if ws is None else ws)
        if kind == "elliptic":
            return Elliptic(wz, wz if ws is None else ws)
        if kind == "decaying":
            if d["tau0"] is None:
                raise ConfigError("tau0: required for the decaying flow")
            return DecayingZonal(wz, d["tau0"])
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(f"flow: {e}") from None
    raise ConfigError(f"flow: unknown value {kind!r}; choose from {', '.join(FLOWS)}")


def build_model(d: Mapping[str, Any]) -> spectra.SpectrumModel:
    kind = d["model"]
    try:
        if kind == "delta":
            return spectra.Delta(d["a"], d["b"], d["phi"])
        if kind == "constant":
            return spectra.Constant(d["phi"])
        if kind == "gaussian":
            return spectra.GaussianIso(d["alpha"], d["phi"])
        if kind == "aniso":
            return spectra.AnisoConstant(d["phi"])
    except ValueError as e:
        raise ConfigError(f"model: {e}") from None
    raise ConfigError(f"model: unknown value {kind!r}; choose from {', '.join(MODELS)}")


def load_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Resolve defaults, then file values, then non-``None`` overrides."""
    merged = {k: default for k, (_, default) in FIELDS.items()}
    sources = []
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        sources.append(data)
    sources.append({k: v for k, v in (overrides or {}).items() if v is not None})
    for src in sources:
        for key, value in src.items():
            if key not in FIELDS:
                raise ConfigError(f"{key}: unknown configuration key")
            merged[key] = _coerce(key, value, FIELDS[key][0])
    if merged["nu"] < 0:
        raise ConfigError("nu: viscosity must be >= 0")
    if merged["format"] not in ("csv", "json"):
        raise ConfigError(f"format: expected csv or json, got {merged['format']!r}")
    return RunConfig(
        flow=build_flow(merged),
        model=build_model(merged),
        nu=merged["nu"],
        t_grid=_grid("t_grid", merged["t_grid"]),
        omega_grid=_grid("omega_grid", merged["omega_grid"]),
        output_path=merged["output"],
        format=merged["format"],
        seed=merged["seed"],
        raw=dict(merged),
    )
