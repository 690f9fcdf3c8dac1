"""Default numerical tolerances.

All relative thresholds live in one frozen record.  ``APOLLONIUS_TOL`` may
override it: either a bare float (replaces ``verify``) or a JSON object
with any subset of the field names.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

ENV_VAR = "APOLLONIUS_TOL"


@dataclass(frozen=True)
class Tolerances:
    rank: float = 1e-10          # relative singular-value cutoff
    quadric: float = 1e-9        # |(X|X)| <= quadric * |X|^2
    discriminant: float = 1e-12  # pencil double-root threshold, relative
    projective: float = 1e-8     # largest 2x2 minor, relative
    hyperplane: float = 1e-10    # |v| <= hyperplane * |X| classifies v = 0
    point_sphere: float = 1e-9   # |r| <= point_sphere * scale classifies r = 0
    isotropic: float = 1e-12     # |(P|P)| <= isotropic * |P|^2
    at_infinity: float = 1e-10   # |p_{n+2}| <= at_infinity * |P|
    tangency: float = 1e-9       # solution tangency post-condition
    verify: float = 1e-8         # default concurrency / inscribed tolerance

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)


DEFAULT = Tolerances()


def from_env(environ=None) -> Tolerances:
    """Default record with the environment override applied, if any."""
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_VAR)
    if not raw:
        return DEFAULT
    raw = raw.strip()
    try:
        return DEFAULT.replace(verify=float(raw))
    except ValueError:
        pass
    data = json.loads(raw)
    if not isinstance(data, dict):
        raise ValueError(f"{ENV_VAR} must be a float or a JSON object")
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"{ENV_VAR}: unknown tolerance fields {sorted(unknown)}")
    return DEFAULT.replace(**{k: float(v) for k, v in data.items()})
