"""Oriented cycles in R^n and their Lie coordinates.

Orientation convention: a sphere's signed radius is positive for the
outward normal.  A hyperplane ``unit_normal . x = offset`` carries an
``orientation`` of +1 or -1 which multiplies the r-coordinate of its lift.
With this convention a sphere and a hyperplane are in oriented contact
exactly when ``unit_normal . center - offset == orientation * radius``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import config
from .errors import AtInfinity, DegenerateVector, DimensionMismatch, NotACycle
from .lie import LieVec, is_on_quadric, lie_form

_UNIT_TOL = 1e-12


def _point(values) -> tuple[float, ...]:
    return tuple(float(x) for x in values)


@dataclass(frozen=True)
class Sphere:
    center: tuple[float, ...]
    signed_radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _point(self.center))
        object.__setattr__(self, "signed_radius", float(self.signed_radius))
        if self.signed_radius == 0.0:
            raise ValueError("zero radius: use PointSphere")
        if len(self.center) < 1:
            raise ValueError("empty center")

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane ``unit_normal . x = offset``."""

    unit_normal: tuple[float, ...]
    offset: float
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "unit_normal", _point(self.unit_normal))
        object.__setattr__(self, "offset", float(self.offset))
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        norm = math.sqrt(sum(x * x for x in self.unit_normal))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"normal has length {norm}, expected 1")

    @classmethod
    def through(cls, normal, offset, orientation=1) -> "Hyperplane":
        """Build from a normal of any length, rescaling the offset with it."""
        nrm = np.asarray(normal, dtype=float)
        k = float(np.linalg.norm(nrm))
        if k == 0.0:
            raise ValueError("zero normal")
        return cls(tuple(nrm / k), float(offset) / k, orientation)

    @classmethod
    def from_points(cls, p, q, toward, orientation=1) -> "Hyperplane":
        """Planar line through p and q with normal pointing toward ``toward``."""
        p, q, toward = (np.asarray(x, dtype=float) for x in (p, q, toward))
        d = q - p
        normal = np.array([-d[1], d[0]])
        if np.dot(normal, toward - p) < 0:
            normal = -normal
        return cls.through(normal, float(np.dot(normal, p)), orientation)

    @property
    def dim(self) -> int:
        return len(self.unit_normal)


@dataclass(frozen=True)
class PointSphere:
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _point(self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class PointAtInfinity:
    """The Lie point [0:...:0:1], in contact with every hyperplane."""

    dimension: int

    @property
    def dim(self) -> int:
        return self.dimension


Cycle = Union[Sphere, Hyperplane, PointSphere, PointAtInfinity]


@dataclass(frozen=True)
class HomogeneousCenter:
    coords: tuple[float, ...]

    @property
    def at_infinity(self) -> bool:
        return self.coords[-1] == 0.0

    def affine(self, tol: float = config.DEFAULT.at_infinity) -> np.ndarray:
        v = self.coords[-1]
        if abs(v) <= tol * math.sqrt(sum(x * x for x in self.coords)):
            raise AtInfinity("homogeneous center is a point at infinity")
        return np.asarray(self.coords[:-1]) / v


def reverse(c: Cycle) -> Cycle:
    """Same point set, opposite orientation."""
    if isinstance(c, Sphere):
        return Sphere(c.center, -c.signed_radius)
    if isinstance(c, Hyperplane):
        return Hyperplane(c.unit_normal, c.offset, -c.orientation)
    return c


def lift(c: Cycle) -> LieVec:
    if isinstance(c, Sphere):
        m = np.asarray(c.center)
        r = c.signed_radius
        return LieVec(np.concatenate([[r], m, [1.0, 0.5 * (r * r - m @ m)]]))
    if isinstance(c, Hyperplane):
        return LieVec(
            np.concatenate([[float(c.orientation)], c.unit_normal, [0.0, -c.offset]])
        )
    if isinstance(c, PointSphere):
        p = np.asarray(c.coords)
        return LieVec(np.concatenate([[0.0], p, [1.0, -0.5 * (p @ p)]]))
    if isinstance(c, PointAtInfinity):
        x = np.zeros(c.dimension + 3)
        x[-1] = 1.0
        return LieVec(x)
    raise TypeError(f"not a cycle: {c!r}")


def project(x, tol: config.Tolerances = config.DEFAULT) -> Cycle:
    """Inverse of :func:`lift` on the Lie quadric."""
    a = x.coords if isinstance(x, LieVec) else np.asarray(x, dtype=float)
    n = a.size - 3
    if not is_on_quadric(a, tol.quadric):
        raise NotACycle("vector is not on the Lie quadric")
    nrm = float(np.linalg.norm(a))
    r, c, v, w = a[0], a[1 : n + 1], a[n + 1], a[n + 2]
    if abs(v) > tol.hyperplane * nrm:
        center = c / v
        radius = r / v
        if abs(radius) <= tol.point_sphere * max(1.0, float(np.linalg.norm(center))):
            return PointSphere(tuple(center))
        return Sphere(tuple(center), radius)
    k = float(np.linalg.norm(c))
    if k <= tol.hyperplane * nrm:
        return PointAtInfinity(n)
    return Hyperplane(tuple(c / k), -w / k, 1 if r > 0 else -1)


def homogeneous_center(x, tol: float = 1e-14) -> HomogeneousCenter:
    a = x.coords if isinstance(x, LieVec) else np.asarray(x, dtype=float)
    n = a.size - 3
    hc = a[1 : n + 2]
    if np.max(np.abs(hc)) <= tol * np.linalg.norm(a):
        raise DegenerateVector("homogeneous center vanishes")
    return HomogeneousCenter(tuple(float(t) for t in hc))


def tangency_residual(a: Cycle, b: Cycle) -> float:
    """Lie form of the lifts, normalized by their Euclidean norms."""
    if a.dim != b.dim:
        raise DimensionMismatch("cycles of different dimension")
    x, y = lift(a), lift(b)
    return lie_form(x, y) / (x.norm * y.norm)


def cycle_scale(*cycles: Cycle) -> float:
    """max(1, |centers|, |radii|) over the operands."""
    s = 1.0
    for c in cycles:
        if isinstance(c, Sphere):
            s = max(s, float(np.linalg.norm(c.center)), abs(c.signed_radius))
        elif isinstance(c, PointSphere):
            s = max(s, float(np.linalg.norm(c.coords)))
        elif isinstance(c, Hyperplane):
            s = max(s, abs(c.offset))
    return s


def _as_ball(c):
    if isinstance(c, Sphere):
        return np.asarray(c.center), c.signed_radius
    return np.asarray(c.coords), 0.0


def euclidean_tangency_oracle(a: Cycle, b: Cycle, tol: float) -> bool:
    """Oriented contact decided from centers, radii and offsets alone."""
    if a.dim != b.dim:
        raise DimensionMismatch("cycles of different dimension")
    scale = cycle_scale(a, b)
    inf_a, inf_b = isinstance(a, PointAtInfinity), isinstance(b, PointAtInfinity)
    if inf_a or inf_b:
        other = b if inf_a else a
        return isinstance(other, (Hyperplane, PointAtInfinity))
    hyp_a, hyp_b = isinstance(a, Hyperplane), isinstance(b, Hyperplane)
    if hyp_a and hyp_b:
        na = a.orientation * np.asarray(a.unit_normal)
        nb = b.orientation * np.asarray(b.unit_normal)
        return float(np.linalg.norm(na - nb)) <= tol
    if hyp_a or hyp_b:
        plane, ball = (a, b) if hyp_a else (b, a)
        m, r = _as_ball(ball)
        signed_dist = float(np.dot(plane.unit_normal, m)) - plane.offset
        return abs(signed_dist - plane.orientation * r) <= tol * scale
    (m1, r1), (m2, r2) = _as_ball(a), _as_ball(b)
    return abs(float(np.linalg.norm(m1 - m2)) - abs(r1 - r2)) <= tol * scale
