"""Run configuration: JSON parsing, validation and the bundled configs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .model import LevelModel, LevelSpec, ModelError, expand_omega
from .sweep import ParameterGrid

DEFAULT_WINDOW = (0.0, 2.0)
BUNDLED = ("fig1_n3", "fig1_n4", "fig1_n5", "fig1_n6", "fig1_pair12", "hermitian_n4")


class ConfigError(ValueError):
    """Invalid configuration; message names the offending field."""


@dataclass(frozen=True)
class Tolerances:
    tol_resid: float = 1e-10
    tol_defect: float = 1e-8
    gap_tol: float | None = None
    rigidity_tol: float = 0.2


@dataclass(frozen=True)
class RunConfig:
    model: LevelModel
    grid: ParameterGrid
    window: tuple = DEFAULT_WINDOW
    tolerances: Tolerances = field(default_factory=Tolerances)
    name: str = "run"
    out_dir: str | None = None
    fmt: str = "csv"

    def with_overrides(self, *, steps=None, a_start=None, a_end=None, window=None):
        grid = self.grid
        try:
            grid = ParameterGrid(
                grid.a_start if a_start is None else float(a_start),
                grid.a_end if a_end is None else float(a_end),
                grid.steps if steps is None else int(steps),
            )
        except ValueError as exc:
            raise ConfigError(f"sweep: {exc}") from exc
        win = self.window if window is None else _window(window, "--window")
        return replace(self, grid=grid, window=win)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a real number, got {value!r}")
    if not np.isfinite(value):
        raise ConfigError(f"{where}: must be finite")
    return float(value)


def _complex(value, where: str) -> complex:
    if isinstance(value, dict):
        extra = set(value) - {"re", "im"}
        if extra:
            raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
        return complex(_number(value.get("re", 0.0), f"{where}.re"),
                       _number(value.get("im", 0.0), f"{where}.im"))
    return complex(_number(value, where))


def _window(value, where: str) -> tuple:
    if isinstance(value, str):
        value = value.split(",")
        try:
            value = [float(v) for v in value]
        except ValueError:
            raise ConfigError(f"{where}: expected 'lo,hi'") from None
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{where}: expected [E_min, E_max]")
    lo, hi = (_number(v, where) for v in value)
    if not lo < hi:
        raise ConfigError(f"{where}: need E_min < E_max, got [{lo}, {hi}]")
    return (lo, hi)


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ConfigError(f"{where}{key}: missing")
    return doc[key]


def parse_config(doc: dict, name: str = "run") -> RunConfig:
    """Validate a config document and build a :class:`RunConfig`.

    Every block is checked before anything is computed.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config: expected a JSON object")
    levels_doc = _require(doc, "levels", "")
    if not isinstance(levels_doc, list) or len(levels_doc) < 2:
        raise ConfigError("levels: need a list of at least 2 levels")
    levels = []
    for i, lv in enumerate(levels_doc):
        where = f"levels[{i}]"
        if not isinstance(lv, dict):
            raise ConfigError(f"{where}: expected an object")
        extra = set(lv) - {"alpha", "beta", "half_gamma"}
        if extra:
            raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
        levels.append(LevelSpec(
            _number(_require(lv, "alpha", where + "."), where + ".alpha"),
            _number(lv.get("beta", 0.0), where + ".beta"),
            _number(lv.get("half_gamma", 0.0), where + ".half_gamma"),
        ))
    n = len(levels)

    omega_doc = _require(doc, "omega", "")
    if isinstance(omega_doc, list):
        if len(omega_doc) != n or any(not isinstance(r, list) or len(r) != n
                                      for r in omega_doc):
            raise ConfigError(f"omega: expected a scalar or a {n}x{n} array")
        omega = np.array([[_complex(v, f"omega[{i}][{j}]") for j, v in enumerate(row)]
                          for i, row in enumerate(omega_doc)])
    else:
        omega = expand_omega(_complex(omega_doc, "omega"), n)
    try:
        model = LevelModel(tuple(levels), omega)
    except ModelError as exc:
        raise ConfigError(f"omega: {exc}") from exc

    sweep_doc = _require(doc, "sweep", "")
    if not isinstance(sweep_doc, dict):
        raise ConfigError("sweep: expected an object")
    steps = _require(sweep_doc, "steps", "sweep.")
    if isinstance(steps, bool) or not isinstance(steps, int):
        raise ConfigError(f"sweep.steps: expected an integer, got {steps!r}")
    try:
        grid = ParameterGrid(_number(_require(sweep_doc, "a_start", "sweep."), "sweep.a_start"),
                             _number(_require(sweep_doc, "a_end", "sweep."), "sweep.a_end"),
                             steps)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"sweep: {exc}") from exc

    window = _window(doc["window"], "window") if "window" in doc else DEFAULT_WINDOW

    tol_doc = doc.get("tolerances", {})
    if not isinstance(tol_doc, dict):
        raise ConfigError("tolerances: expected an object")
    known = Tolerances.__dataclass_fields__
    extra = set(tol_doc) - set(known)
    if extra:
        raise ConfigError(f"tolerances: unknown keys {sorted(extra)}")
    tols = {}
    for key, val in tol_doc.items():
        if val is None and key == "gap_tol":
            continue
        tols[key] = _number(val, f"tolerances.{key}")
        if tols[key] <= 0:
            raise ConfigError(f"tolerances.{key}: must be positive")

    out_doc = doc.get("outputs", {})
    if not isinstance(out_doc, dict):
        raise ConfigError("outputs: expected an object")
    fmt = out_doc.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"outputs.format: expected 'csv' or 'json', got {fmt!r}")

    return RunConfig(model, grid, window, Tolerances(**tols),
                     str(doc.get("name", name)), out_doc.get("dir"), fmt)


def load_config(source: str) -> RunConfig:
    """Load a config from a file path or a bundled config name."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
        name = path.stem
    elif source in BUNDLED:
        text = resources.files("epsweep.configs").joinpath(f"{source}.json").read_text()
        name = source
    else:
        raise ConfigError(f"config: no such file or bundled config {source!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from exc
    return parse_config(doc, name)
