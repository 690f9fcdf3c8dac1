"""Strict JSON encoding of configurations and verification reports.

Cycle records::

    {"type": "sphere", "center": [...], "radius": r}        # r signed
    {"type": "hyperplane", "normal": [...], "offset": d, "orientation": 1 | -1}
    {"type": "point", "coords": [...]}
    {"type": "infinity"}                                    # the point at infinity

A document is ``{"dimension": n, "cycles": [...], "label": "..."}`` with
``label`` optional.  Unknown fields anywhere are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .apollonius import Configuration
from .cycles import Cycle, Hyperplane, PointAtInfinity, PointSphere, Sphere
from .errors import ParseError, ValidationError

_CYCLE_FIELDS = {
    "sphere": ({"type", "center", "radius"}, set()),
    "hyperplane": ({"type", "normal", "offset"}, {"orientation"}),
    "point": ({"type", "coords"}, set()),
    "infinity": ({"type"}, set()),
}
_DOC_FIELDS = ({"dimension", "cycles"}, {"label"})


@dataclass(frozen=True)
class ConfigDocument:
    dimension: int
    cycles: tuple
    label: str | None = None
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def to_configuration(self) -> Configuration:
        if len(self.cycles) != self.dimension + 2:
            raise ValidationError(
                f"a configuration in R^{self.dimension} needs {self.dimension + 2} cycles, "
                f"got {len(self.cycles)}",
                path="cycles",
            )
        return Configuration(self.dimension, self.cycles, self.label or "")

    @classmethod
    def from_configuration(cls, cfg: Configuration) -> "ConfigDocument":
        return cls(cfg.dim, tuple(cfg.cycles), cfg.label or None)


# -- parsing ------------------------------------------------------------------


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


def _load(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant, object_pairs_hook=_no_dupes)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, col=exc.colno) from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _no_dupes(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate field {k!r}")
        out[k] = v
    return out


def _check_fields(obj, required, optional, path):
    if not isinstance(obj, dict):
        raise ValidationError("expected an object", path=path or "$")
    missing = required - obj.keys()
    if missing:
        raise ValidationError(f"missing field {sorted(missing)[0]!r}", path=path or "$")
    unknown = obj.keys() - required - optional
    if unknown:
        name = sorted(unknown)[0]
        raise ValidationError(f"unknown field {name!r}", path=_join(path, name))


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _number(x, path) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError("expected a number", path=path)
    val = float(x)
    if not math.isfinite(val):
        raise ValidationError("number is not finite", path=path)
    return val


def _vector(x, n, path) -> tuple[float, ...]:
    if not isinstance(x, list):
        raise ValidationError("expected an array of numbers", path=path)
    if len(x) != n:
        raise ValidationError(f"expected {n} coordinates, got {len(x)}", path=path)
    return tuple(_number(v, _join(path, i)) for i, v in enumerate(x))


def parse_cycle(obj, n: int, path: str = "", notes: list | None = None) -> Cycle:
    if not isinstance(obj, dict):
        raise ValidationError("expected a cycle object", path=path or "$")
    kind = obj.get("type")
    if kind not in _CYCLE_FIELDS:
        raise ValidationError(
            f"type must be one of {sorted(_CYCLE_FIELDS)}", path=_join(path, "type")
        )
    _check_fields(obj, *_CYCLE_FIELDS[kind], path)
    if kind == "sphere":
        center = _vector(obj["center"], n, _join(path, "center"))
        radius = _number(obj["radius"], _join(path, "radius"))
        if radius == 0.0:
            raise ValidationError(
                'radius 0 is not a sphere; use {"type": "point", "coords": [...]}',
                path=_join(path, "radius"),
            )
        return Sphere(center, radius)
    if kind == "hyperplane":
        normal = np.asarray(_vector(obj["normal"], n, _join(path, "normal")))
        offset = _number(obj["offset"], _join(path, "offset"))
        orient = obj.get("orientation", 1)
        if isinstance(orient, bool) or orient not in (1, -1):
            raise ValidationError("orientation must be 1 or -1", path=_join(path, "orientation"))
        length = float(np.linalg.norm(normal))
        if length == 0.0:
            raise ValidationError("normal must be nonzero", path=_join(path, "normal"))
        if abs(length - 1.0) > 1e-12:
            if notes is not None:
                notes.append(f"{_join(path, 'normal')}: normalized from length {length!r}")
            return Hyperplane.through(normal, offset, int(orient))
        return Hyperplane(tuple(normal), offset, int(orient))
    if kind == "point":
        return PointSphere(_vector(obj["coords"], n, _join(path, "coords")))
    return PointAtInfinity(n)


def parse_config(text: str) -> ConfigDocument:
    return config_from_obj(_load(text))


def config_from_obj(obj: Any) -> ConfigDocument:
    _check_fields(obj, *_DOC_FIELDS, "")
    n = obj["dimension"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError("dimension must be a positive integer", path="dimension")
    cycles = obj["cycles"]
    if not isinstance(cycles, list):
        raise ValidationError("expected an array of cycles", path="cycles")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise ValidationError("label must be a string", path="label")
    notes: list[str] = []
    parsed = tuple(parse_cycle(c, n, f"cycles[{i}]", notes) for i, c in enumerate(cycles))
    return ConfigDocument(n, parsed, label, tuple(notes))


def load_json(text: str):
    """Strict JSON load (no NaN, no duplicate keys) with ParseError context."""
    return _load(text)


# -- serialization ------------------------------------------------------------


def _num(x: float):
    return float(x)


def cycle_to_obj(c: Cycle) -> dict:
    if isinstance(c, Sphere):
        return {"type": "sphere", "center": [_num(x) for x in c.center],
                "radius": _num(c.signed_radius)}
    if isinstance(c, Hyperplane):
        return {"type": "hyperplane", "normal": [_num(x) for x in c.unit_normal],
                "offset": _num(c.offset), "orientation": int(c.orientation)}
    if isinstance(c, PointSphere):
        return {"type": "point", "coords": [_num(x) for x in c.coords]}
    if isinstance(c, PointAtInfinity):
        return {"type": "infinity"}
    raise TypeError(f"not a cycle: {c!r}")


def config_to_obj(doc: ConfigDocument | Configuration) -> dict:
    if isinstance(doc, Configuration):
        doc = ConfigDocument.from_configuration(doc)
    out = {"dimension": doc.dimension, "cycles": [cycle_to_obj(c) for c in doc.cycles]}
    if doc.label is not None:
        out["label"] = doc.label
    return out


def dumps(obj) -> str:
    """Deterministic JSON text; floats use the shortest round-tripping repr."""
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def serialize(doc: ConfigDocument | Configuration) -> str:
    return dumps(config_to_obj(doc))


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        # JSON has no infinities; an infinite residual is reported as null
        return v if math.isfinite(v) else None
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    return x


# -- reports ------------------------------------------------------------------

THEOREMS = ("first_level", "two_step", "inscribed", "scenario")


@dataclass(frozen=True)
class Residual:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and self.value <= self.tolerance


@dataclass(frozen=True)
class ReportDocument:
    theorem: str
    residuals: tuple[Residual, ...]
    tolerances: dict
    tool_version: str
    point: tuple[float, ...] | None = None
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}")
        object.__setattr__(self, "residuals", tuple(self.residuals))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    def to_obj(self) -> dict:
        return {
            "theorem": self.theorem,
            "pass": self.passed,
            "point": None if self.point is None else [float(x) for x in self.point],
            "residuals": [
                {"name": r.name, "value": r.value, "tolerance": r.tolerance, "pass": r.passed}
                for r in self.residuals
            ],
            "tolerances": dict(self.tolerances),
            "tool_version": self.tool_version,
            "seed": self.seed,
            "details": self.details,
        }

    def to_json(self) -> str:
        return dumps(self.to_obj())


def report_from_obj(obj: dict) -> ReportDocument:
    """Inverse of :meth:`ReportDocument.to_obj`; checks that ``pass`` agrees
    with the residuals."""
    fields_ = {"theorem", "pass", "point", "residuals", "tolerances", "tool_version",
               "seed", "details"}
    _check_fields(obj, fields_ - {"seed", "details", "point"}, {"seed", "details", "point"}, "")
    residuals = tuple(
        Residual(r["name"], math.inf if r["value"] is None else float(r["value"]),
                 float(r["tolerance"]))
        for r in obj["residuals"]
    )
    doc = ReportDocument(
        theorem=obj["theorem"],
        residuals=residuals,
        tolerances=obj["tolerances"],
        tool_version=obj["tool_version"],
        point=None if obj.get("point") is None else tuple(obj["point"]),
        seed=obj.get("seed"),
        details=obj.get("details") or {},
    )
    if doc.passed != obj["pass"]:
        raise ValidationError("pass flag disagrees with residuals", path="pass")
    return doc
