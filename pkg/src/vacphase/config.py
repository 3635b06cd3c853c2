"""Experiment and sweep configuration, parsed from JSON-compatible mappings."""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigInvalid, IoFailure
from .geometry import TURN_FACTORS, HelixSpec
from .media import GyroelectricTensor
from .phase_engine import OrderingMode, PhotonOccupation

TIME_MODES = ("seconds", "cycles_of_R")

DEFAULTS = {
    "helix": {"turn_factor": "4pi"},
    "ordering": "symmetric",
    "time": {"mode": "cycles_of_R", "value": 1.0},
    "oracle": {"steps_per_cycle": 200, "samples": 10_000, "tolerance": 1e-6},
    "occupation": {"n_R": 0, "n_L": 0},
}

SCHEMA = {
    "helix": {"pitch_m", "radius_m", "turn_factor"},
    "medium": {"eps1", "eps2", "eps3"},
    "occupation": {"n_R", "n_L"},
    "ordering": None,
    "time": {"mode", "value"},
    "oracle": {"steps_per_cycle", "samples", "tolerance"},
}

NUMERIC_LEAVES = (
    "helix.pitch_m",
    "helix.radius_m",
    "medium.eps1",
    "medium.eps2",
    "medium.eps3",
    "occupation.n_R",
    "occupation.n_L",
    "time.value",
    "oracle.steps_per_cycle",
    "oracle.samples",
    "oracle.tolerance",
)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool) or (
        isinstance(v, float) and v.is_integer()
    )


def _number(section, key, path):
    if key not in section:
        raise ConfigInvalid(path, "missing required key")
    v = section[key]
    if not _is_number(v):
        raise ConfigInvalid(path, f"expected a finite number, got {v!r}")
    return float(v)


def _integer(section, key, path, minimum):
    v = section.get(key)
    if not (_is_number(v) and _is_int(v)):
        raise ConfigInvalid(path, f"expected an integer, got {v!r}")
    if v < minimum:
        raise ConfigInvalid(path, f"must be >= {minimum}, got {v!r}")
    return int(v)


@dataclass(frozen=True)
class OracleSettings:
    steps_per_cycle: int = 200
    samples: int = 10_000
    tolerance: float = 1e-6


@dataclass(frozen=True)
class ExperimentConfig:
    helix: HelixSpec
    medium: GyroelectricTensor
    occupation: PhotonOccupation
    ordering: OrderingMode
    time_mode: str
    time_value: float
    oracle: OracleSettings = field(default_factory=OracleSettings)
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_dict(cls, data) -> ExperimentConfig:
        if not isinstance(data, dict):
            raise ConfigInvalid("", "configuration must be an object")
        for key in data:
            if key not in SCHEMA:
                raise ConfigInvalid(key, "unknown key")
        merged = copy.deepcopy(DEFAULTS)
        for key, value in data.items():
            if SCHEMA[key] is None:
                merged[key] = value
                continue
            if not isinstance(value, dict):
                raise ConfigInvalid(key, "expected an object")
            for sub in value:
                if sub not in SCHEMA[key]:
                    raise ConfigInvalid(f"{key}.{sub}", "unknown key")
            merged.setdefault(key, {}).update(value)
        for key in ("helix", "medium"):
            if key not in data:
                raise ConfigInvalid(key, "missing required section")

        h = merged["helix"]
        pitch = _number(h, "pitch_m", "helix.pitch_m")
        if not pitch > 0:
            raise ConfigInvalid("helix.pitch_m", f"must be > 0, got {pitch!r}")
        radius = _number(h, "radius_m", "helix.radius_m")
        if radius < 0:
            raise ConfigInvalid("helix.radius_m", f"must be >= 0, got {radius!r}")
        if h["turn_factor"] not in TURN_FACTORS:
            raise ConfigInvalid("helix.turn_factor", f"expected '4pi' or '2pi', got {h['turn_factor']!r}")
        helix = HelixSpec.from_label(pitch, radius, h["turn_factor"])

        m = merged["medium"]
        eps = [_number(m, k, f"medium.{k}") for k in ("eps1", "eps2", "eps3")]
        if not eps[2] > 0:
            raise ConfigInvalid("medium.eps3", f"must be > 0, got {eps[2]!r}")
        medium = GyroelectricTensor(*eps)

        occ = merged["occupation"]
        occupation = PhotonOccupation(
            _integer(occ, "n_R", "occupation.n_R", 0), _integer(occ, "n_L", "occupation.n_L", 0)
        )

        try:
            ordering = OrderingMode(merged["ordering"])
        except (ValueError, TypeError):
            raise ConfigInvalid(
                "ordering", f"expected 'normal' or 'symmetric', got {merged['ordering']!r}"
            ) from None

        t = merged["time"]
        if t["mode"] not in TIME_MODES:
            raise ConfigInvalid("time.mode", f"expected one of {TIME_MODES}, got {t['mode']!r}")
        t_value = _number(t, "value", "time.value")
        if t_value < 0:
            raise ConfigInvalid("time.value", f"must be >= 0, got {t_value!r}")

        o = merged["oracle"]
        oracle = OracleSettings(
            _integer(o, "steps_per_cycle", "oracle.steps_per_cycle", 8),
            _integer(o, "samples", "oracle.samples", 16),
            _number(o, "tolerance", "oracle.tolerance"),
        )
        if not oracle.tolerance > 0:
            raise ConfigInvalid("oracle.tolerance", "must be > 0")

        return cls(helix, medium, occupation, ordering, t["mode"], t_value, oracle, raw=merged)


@dataclass(frozen=True)
class SweepAxis:
    path: str
    values: tuple


@dataclass(frozen=True)
class SweepSpec:
    base: dict
    axes: tuple[SweepAxis, ...]

    @classmethod
    def from_dict(cls, data) -> SweepSpec:
        if not isinstance(data, dict):
            raise ConfigInvalid("", "sweep specification must be an object")
        for key in data:
            if key not in ("base", "axes"):
                raise ConfigInvalid(key, "unknown key")
        if "base" not in data:
            raise ConfigInvalid("base", "missing required section")
        base = data["base"]
        ExperimentConfig.from_dict(base)
        axes = data.get("axes")
        if not isinstance(axes, list) or not 1 <= len(axes) <= 2:
            raise ConfigInvalid("axes", "expected a list of 1 or 2 axes")
        parsed = []
        for i, axis in enumerate(axes):
            where = f"axes[{i}]"
            if not isinstance(axis, dict) or set(axis) != {"path", "values"}:
                raise ConfigInvalid(where, "axis needs exactly 'path' and 'values'")
            path = axis["path"]
            if path not in NUMERIC_LEAVES:
                raise ConfigInvalid(f"{where}.path", f"{path!r} is not a numeric config leaf")
            parsed.append(SweepAxis(path, _axis_values(axis["values"], f"{where}.values")))
        if len({a.path for a in parsed}) != len(parsed):
            raise ConfigInvalid("axes", "axis paths must be distinct")
        return cls(base, tuple(parsed))

    def points(self):
        """Grid points in row-major order as (axis values, config dict)."""
        grids = [a.values for a in self.axes]
        for idx in np.ndindex(*[len(g) for g in grids]):
            values = tuple(g[i] for g, i in zip(grids, idx))
            cfg = copy.deepcopy(self.base)
            for axis, v in zip(self.axes, values):
                section, key = axis.path.split(".")
                cfg.setdefault(section, {})[key] = v
            yield values, cfg


def _axis_values(spec, where):
    if isinstance(spec, list):
        if len(spec) < 2:
            raise ConfigInvalid(where, "need at least 2 values")
        for j, v in enumerate(spec):
            if not _is_number(v):
                raise ConfigInvalid(f"{where}[{j}]", f"expected a number, got {v!r}")
        return tuple(spec)
    if isinstance(spec, dict):
        if set(spec) != {"start", "stop", "count"}:
            raise ConfigInvalid(where, "linear grid needs exactly start, stop, count")
        start = _number(spec, "start", f"{where}.start")
        stop = _number(spec, "stop", f"{where}.stop")
        count = _integer(spec, "count", f"{where}.count", 2)
        return tuple(float(v) for v in np.linspace(start, stop, count))
    raise ConfigInvalid(where, "expected a list or {start, stop, count}")


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid("", f"{path} is not valid JSON: {exc}") from exc
