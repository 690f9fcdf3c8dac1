"""Planar and spatial constructions exercising the concurrency theorems.

Each scenario builds a Configuration with the orientations its argument
needs and checks a handful of named geometric facts against independent
Euclidean computations (triangle centers, Descartes radii, least-squares
line intersections).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
from scipy.optimize import brentq

from . import config
from .apollonius import (
    Configuration,
    apollonius_pairs,
    center_of,
    compute_P,
    inscribed_sphere,
    line_through_centers,
    p_x_point,
    two_step_pairs,
    PrimeAssignment,
    verify_first_level,
    verify_inscribed,
    verify_second_level,
)
from .cycles import (
    Cycle,
    Hyperplane,
    PointSphere,
    Sphere,
    euclidean_tangency_oracle,
    lift,
    reverse,
)
from .errors import GenerationExhausted, InvalidParams
from .lie import lie_form, projective_equal

log = logging.getLogger(__name__)

SCENARIOS = (
    "circumcenter",
    "incenter",
    "outer_apollonius",
    "mixtilinear",
    "soddy_line",
    "gasket",
    "morita3d",
    "olympiad",
)

DEFAULT_TRIANGLE = ((0.0, 0.0), (4.0, 0.0), (0.0, 3.0))

_TRIANGLE_KEYS = frozenset({"triangle", "omega_center", "omega_radius"})
PARAM_KEYS: dict[str, frozenset] = {
    "circumcenter": _TRIANGLE_KEYS,
    "incenter": _TRIANGLE_KEYS,
    "outer_apollonius": _TRIANGLE_KEYS,
    "mixtilinear": frozenset({"triangle"}),
    "soddy_line": frozenset({"radii", "seed", "dim"}),
    "gasket": frozenset({"radii"}),
    "morita3d": frozenset({"radii"}),
    "olympiad": frozenset({"seed", "r1", "r2", "theta"}),
}


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    params: dict = field(default_factory=dict)
    dim: int | None = None

    def __post_init__(self):
        if self.name not in SCENARIOS:
            raise InvalidParams(f"unknown scenario {self.name!r}")
        if not isinstance(self.params, dict):
            raise InvalidParams("params must be a JSON object")
        unknown = set(self.params) - PARAM_KEYS[self.name]
        if unknown:
            raise InvalidParams(
                f"unknown parameters for {self.name}: {sorted(unknown)}",
                allowed=sorted(PARAM_KEYS[self.name]),
            )
        object.__setattr__(self, "params", dict(self.params))


@dataclass(frozen=True)
class Fact:
    name: str
    description: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.tolerance


@dataclass(frozen=True)
class ScenarioReport:
    name: str
    configuration: Configuration
    facts: tuple[Fact, ...]
    point: tuple[float, ...] | None = None
    notes: tuple[str, ...] = ()
    overlay: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.facts)

    @property
    def expected(self) -> dict[str, str]:
        return {f.name: f.description for f in self.facts}

    @property
    def results(self) -> dict[str, float]:
        return {f.name: f.residual for f in self.facts}


# -- Euclidean helpers (independent of the Lie machinery) ---------------------


def _triangle(params) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    verts = params.get("triangle", DEFAULT_TRIANGLE)
    try:
        a, b, c = (np.asarray(v, dtype=float) for v in verts)
    except (TypeError, ValueError) as exc:
        raise InvalidParams("triangle must be three 2D points") from exc
    if a.shape != (2,) or b.shape != (2,) or c.shape != (2,):
        raise InvalidParams("triangle must be three 2D points")
    area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = max(np.linalg.norm(b - a), np.linalg.norm(c - a), 1.0)
    if abs(area2) <= 1e-9 * scale * scale:
        raise InvalidParams("degenerate triangle")
    return a, b, c


def incenter(a, b, c) -> tuple[np.ndarray, float]:
    la, lb, lc = np.linalg.norm(b - c), np.linalg.norm(c - a), np.linalg.norm(a - b)
    center = (la * a + lb * b + lc * c) / (la + lb + lc)
    area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    return center, 2.0 * area / (la + lb + lc)


def circumcenter(a, b, c) -> np.ndarray:
    m = 2.0 * np.array([b - a, c - a])
    rhs = np.array([b @ b - a @ a, c @ c - a @ a])
    return np.linalg.solve(m, rhs)


def _inward_lines(a, b, c) -> tuple[Hyperplane, Hyperplane, Hyperplane]:
    """Sides BA, AC, CB with normals pointing into the triangle."""
    return (
        Hyperplane.from_points(b, a, c),
        Hyperplane.from_points(a, c, b),
        Hyperplane.from_points(c, b, a),
    )


def _inside(point, a, b, c, radius=0.0) -> bool:
    return all(
        np.dot(h.unit_normal, point) - h.offset > radius for h in _inward_lines(a, b, c)
    )


def point_line_distance(p, q1, q2) -> float:
    """Distance from p to the line through q1 and q2."""
    p, q1, q2 = (np.asarray(x, dtype=float) for x in (p, q1, q2))
    d = q2 - q1
    d = d / np.linalg.norm(d)
    w = p - q1
    return float(np.linalg.norm(w - np.dot(w, d) * d))


def lines_meet(segments) -> tuple[np.ndarray, float]:
    """Least-squares common point of lines given by point pairs, and the
    largest distance from it to any of the lines."""
    dim = len(segments[0][0])
    m = np.zeros((dim, dim))
    rhs = np.zeros(dim)
    for p, q in segments:
        p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
        u = (q - p) / np.linalg.norm(q - p)
        proj = np.eye(dim) - np.outer(u, u)
        m += proj
        rhs += proj @ p
    x = np.linalg.solve(m, rhs)
    return x, max(point_line_distance(x, p, q) for p, q in segments)


def tangent_simplex(radii) -> list[Sphere]:
    """n+1 mutually externally tangent spheres in R^n with the given radii.

    Centers come from classical multidimensional scaling of the distance
    matrix d_ij = r_i + r_j, which is always realizable.
    """
    r = np.asarray(radii, dtype=float)
    if np.any(r <= 0):
        raise InvalidParams("radii must be positive")
    k = r.size
    d2 = (r[:, None] + r[None, :]) ** 2
    np.fill_diagonal(d2, 0.0)
    j = np.eye(k) - np.ones((k, k)) / k
    gram = -0.5 * j @ d2 @ j
    w, v = np.linalg.eigh(gram)
    order = np.argsort(w)[::-1][: k - 1]
    if np.any(w[order] <= 0):
        raise InvalidParams("distance matrix is not realizable")
    pts = v[:, order] * np.sqrt(w[order])
    pts -= pts[0]
    return [Sphere(tuple(p), float(rad)) for p, rad in zip(pts, r)]


def _pick(cycles, predicate):
    for c in cycles:
        if predicate(c):
            return c
    raise InvalidParams("expected Apollonius solution not found")


def _same(c1: Cycle, c2: Cycle) -> bool:
    return projective_equal(lift(c1), lift(c2), 1e-8)


def _other_than(solutions, excluded: Cycle) -> Cycle:
    rest = [s for s in solutions if not _same(s, excluded)]
    if len(rest) != 1 or len(solutions) != 2:
        raise InvalidParams("Apollonius solutions do not contain the expected cycle")
    return rest[0]


# -- random generic configurations --------------------------------------------


def sample_configuration(
    n: int, seed: int, max_attempts: int = 10_000, tols: config.Tolerances = config.DEFAULT
) -> tuple[Configuration, int]:
    """Rejection-sample a generic configuration; returns it with the
    number of rejected draws."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    rng = np.random.default_rng(seed)
    for attempt in range(max_attempts):
        centers = rng.uniform(-1.0, 1.0, size=(n + 2, n))
        radii = rng.uniform(0.1, 0.4, size=n + 2) * rng.choice((-1.0, 1.0), size=n + 2)
        cfg = Configuration(
            n,
            tuple(Sphere(tuple(m), float(r)) for m, r in zip(centers, radii)),
            f"random n={n} seed={seed}",
        )
        if not cfg.certificate.generic:
            continue
        try:
            p = compute_P(cfg, tols).coords
        except Exception:
            continue
        norm = np.linalg.norm(p)
        if abs(lie_form(p, p)) <= 1e-4 * norm * norm:
            continue
        if abs(p[n + 1]) <= 1e-4 * norm:
            continue
        log.debug("random configuration n=%d seed=%d after %d rejections", n, seed, attempt)
        return cfg, attempt
    raise GenerationExhausted(
        f"no generic configuration in {max_attempts} attempts", attempts=max_attempts
    )


def random_configuration(n: int, seed: int, max_attempts: int = 10_000) -> Configuration:
    return sample_configuration(n, seed, max_attempts)[0]


# -- scenario constructions ---------------------------------------------------


def _omega(params, default_center, default_radius):
    center = np.asarray(params.get("omega_center", default_center), dtype=float)
    radius = float(params.get("omega_radius", default_radius))
    if radius <= 0:
        raise InvalidParams("omega_radius must be positive")
    return center, radius


def _build_circumcenter(params):
    a, b, c = _triangle(params)
    center, radius = _omega(params, (1.0, 1.0), 0.5)
    cycles = (PointSphere(a), PointSphere(b), PointSphere(c), Sphere(center, radius))
    return Configuration(2, cycles, "circumcenter"), {"triangle": (a, b, c)}


def _build_incenter(params):
    a, b, c = _triangle(params)
    center, radius = _omega(params, (1.5, 1.2), 0.3)
    if not _inside(center, a, b, c, radius):
        raise InvalidParams("omega must lie strictly inside the triangle")
    # X = {BA, AC, CB, omega}, sides oriented toward the interior
    cycles = _inward_lines(a, b, c) + (Sphere(center, radius),)
    return Configuration(2, cycles, "incenter"), {"triangle": (a, b, c)}


def _build_outer_apollonius(params):
    a, b, c = _triangle(params)
    center, radius = _omega(params, (1.6, 0.7), 0.25)
    if not _inside(center, a, b, c, radius):
        raise InvalidParams("omega must lie strictly inside the triangle")
    # omega reversed so the circles in each angle touch it externally
    cycles = (Sphere(center, -radius),) + _inward_lines(a, b, c)
    return Configuration(2, cycles, "outer_apollonius"), {"triangle": (a, b, c)}


def _build_mixtilinear(params):
    a, b, c = _triangle(params)
    o = circumcenter(a, b, c)
    big = Sphere(o, float(np.linalg.norm(a - o)))
    ba, ac, cb = _inward_lines(a, b, c)
    cycles = (big, cb, ba, ac)
    return Configuration(2, cycles, "mixtilinear"), {"triangle": (a, b, c), "omega": big}


def _soddy_pair(spheres):
    """(inner, outer) Apollonius spheres of mutually tangent positive spheres,
    both returned with positive orientation."""
    sols = solve_apollonius_checked(spheres)
    inner = _pick(sols, lambda s: isinstance(s, Sphere) and s.signed_radius < 0)
    outer = _pick(sols, lambda s: isinstance(s, Sphere) and s.signed_radius > 0)
    return reverse(inner), outer


def solve_apollonius_checked(cs):
    from .apollonius import solve_apollonius

    sols = solve_apollonius(cs)
    if len(sols) != 2:
        raise InvalidParams(f"expected two Apollonius solutions, found {len(sols)}")
    return sols


def _radii(params, count, seed_key="seed", low=0.5, high=2.0):
    if "radii" in params:
        radii = [float(r) for r in params["radii"]]
        if len(radii) != count:
            raise InvalidParams(f"need {count} radii, got {len(radii)}")
        return radii
    rng = np.random.default_rng(int(params.get(seed_key, 0)))
    return [float(r) for r in rng.uniform(low, high, size=count)]


def _build_soddy_line(params, dim=None):
    n = int(dim or params.get("dim", 2))
    if n < 2:
        raise InvalidParams("soddy_line needs dimension >= 2")
    spheres = tangent_simplex(_radii(params, n + 1))
    inner, outer = _soddy_pair(spheres)
    cycles = tuple(spheres) + (inner,)
    ctx = {"spheres": spheres, "inner": inner, "outer": outer}
    return Configuration(n, cycles, f"soddy_line n={n}"), ctx


def _build_gasket(params):
    radii = [float(r) for r in params.get("radii", (1.0, 2.0, 3.0))]
    if len(radii) != 3:
        raise InvalidParams("gasket needs three radii")
    big = tangent_simplex(radii)
    s1, s2 = _soddy_pair(big)
    # all of Omega_1..3 and S_1 share one orientation; S_2 is reversed
    families = {"S1": s1, "S2": reverse(s2)}
    configs = {
        key: Configuration(2, tuple(big) + (s,), f"gasket {key}") for key, s in families.items()
    }
    ctx = {"big": big, "s1": s1, "s2": s2, "configs": configs}
    return configs["S1"], ctx


def _build_morita3d(params):
    radii = [float(r) for r in params.get("radii", (1.0, 1.0, 1.0, 1.0))]
    if len(radii) != 4:
        raise InvalidParams("morita3d needs four radii")
    outer_spheres = tangent_simplex(radii)
    inner, outer = _soddy_pair(outer_spheres)
    enclosing = reverse(outer)
    cycles = tuple(outer_spheres) + (enclosing,)
    ctx = {"spheres": outer_spheres, "S": enclosing, "soddy": (inner, outer)}
    return Configuration(3, cycles, "morita3d"), ctx


def _place_tangent_inside(r1, r2, c1):
    """Center of a radius-r2 circle inside the unit circle touching the
    unit circle internally and the circle (c1, r1) externally."""
    d1, d2, d12 = np.linalg.norm(c1), 1.0 - r2, r1 + r2
    # intersect |x| = d2 with |x - c1| = d12
    t = (d2 * d2 - d12 * d12 + d1 * d1) / (2.0 * d1)
    h2 = d2 * d2 - t * t
    if h2 <= 0:
        raise InvalidParams("circles do not fit inside the unit circle")
    u = c1 / d1
    perp = np.array([-u[1], u[0]])
    return t * u + np.sqrt(h2) * perp


def _build_olympiad(params):
    rng = np.random.default_rng(int(params.get("seed", 0)))
    r1 = float(params.get("r1", rng.uniform(0.2, 0.45)))
    r2 = float(params.get("r2", rng.uniform(0.2, 0.45)))
    if not (0 < r1 < 1 and 0 < r2 < 1 and r1 + r2 < 1):
        raise InvalidParams("need 0 < r1, r2 and r1 + r2 < 1")
    theta = float(params.get("theta", rng.uniform(0.0, 2.0 * np.pi)))
    big = Sphere((0.0, 0.0), 1.0)
    c1 = (1.0 - r1) * np.array([np.cos(theta), np.sin(theta)])
    w1 = Sphere(c1, r1)
    w2 = Sphere(_place_tangent_inside(r1, r2, c1), r2)
    # Omega positive, the small circles negative: Ap(...) returns them reversed
    w3, w4 = solve_apollonius_checked([big, reverse(w1), reverse(w2)])
    w5 = _other_than(solve_apollonius_checked([big, reverse(w1), reverse(w3)]), w2)
    w6 = _other_than(solve_apollonius_checked([big, reverse(w2), reverse(w3)]), w1)
    cycles = (big, reverse(w1), reverse(w2), reverse(w3))
    ctx = {"omega": [w1, w2, w3, w4, w5, w6], "big": big}
    return Configuration(2, cycles, "olympiad"), ctx


_BUILDERS: dict[str, Callable] = {
    "circumcenter": _build_circumcenter,
    "incenter": _build_incenter,
    "outer_apollonius": _build_outer_apollonius,
    "mixtilinear": _build_mixtilinear,
    "soddy_line": _build_soddy_line,
    "gasket": _build_gasket,
    "morita3d": _build_morita3d,
    "olympiad": _build_olympiad,
}


def _build(spec: ScenarioSpec):
    builder = _BUILDERS[spec.name]
    if spec.name == "soddy_line":
        return builder(spec.params, spec.dim)
    if spec.dim is not None:
        expected = 3 if spec.name == "morita3d" else 2
        if spec.dim != expected:
            raise InvalidParams(f"{spec.name} is defined in dimension {expected}")
    return builder(spec.params)


def build_scenario(spec: ScenarioSpec) -> Configuration:
    return _build(spec)[0]


# -- verification -------------------------------------------------------------


def _dist(p, q) -> float:
    return float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))


def _px(cfg):
    return p_x_point(compute_P(cfg))


def _overlay(cfg, px=None, extra_lines=(), extra_circles=(), points=()):
    """Pairs, their center lines and P_X for rendering."""
    circles, lines = list(extra_circles), list(extra_lines)
    for pair in apollonius_pairs(cfg):
        circles += [c for c in (pair.a, pair.a_prime) if isinstance(c, Sphere)]
        try:
            ln = line_through_centers(pair.a, pair.a_prime)
        except Exception:
            continue
        lines.append((ln.base, tuple(np.asarray(ln.base) + np.asarray(ln.direction))))
    pts = list(points)
    if px is not None:
        pts.append(("P_X", tuple(float(x) for x in px)))
    return {"circles": circles, "lines": lines, "points": pts}


def _verify_circumcenter(cfg, ctx, tol):
    a, b, c = ctx["triangle"]
    scale = cfg.scene_scale
    o = circumcenter(a, b, c)
    px = _px(cfg)
    first = verify_first_level(cfg, tol)
    omega_pair = apollonius_pairs(cfg)[3]
    facts = [
        Fact("p_x_is_circumcenter", "P_X equals the analytic circumcenter",
             _dist(px, o), tol * scale),
        Fact("perpendicular_bisectors_concur", "first-level center lines meet at P_X",
             first.max_distance, tol * scale),
        Fact("circumcircle_pair_concentric", "both circumcircle orientations share the center",
             max(_dist(center_of(omega_pair.a), o), _dist(center_of(omega_pair.a_prime), o)),
             tol * scale),
    ]
    notes = [f"skipped {label}: {why}" for label, why in first.skipped]
    return facts, px, notes, _overlay(cfg, px)


def _verify_incenter(cfg, ctx, tol):
    a, b, c = ctx["triangle"]
    scale = cfg.scene_scale
    center, radius = incenter(a, b, c)
    px = _px(cfg)
    first = verify_first_level(cfg, tol)
    second = verify_second_level(cfg, tol)
    canonical = second.reports[0]
    ins = inscribed_sphere(cfg)
    facts = [
        Fact("p_x_is_incenter", "P_X equals the analytic incenter", _dist(px, center), tol * scale),
        Fact("angle_bisectors_concur", "first-level center lines meet at P_X",
             first.max_distance, tol * scale),
        Fact("inscribed_center", "P' is centered at the incenter",
             _dist(center_of(ins), center), tol * scale),
        Fact("inscribed_radius", "P' has the inradius (area / semiperimeter)",
             abs(abs(ins.signed_radius) - radius), tol * scale),
        Fact("two_step_canonical_line", "all-canonical B-lines pass through the incenter",
             canonical.max_distance, tol * scale),
        Fact("two_step_all_lines", "every defined B-line passes through the incenter",
             max(r.max_distance for r in second.reports), tol * scale),
    ]
    notes = [f"skipped {label}: {why}" for label, why in first.skipped]
    overlay = _overlay(cfg, px)
    overlay["inscribed"] = [ins]
    return facts, px, notes, overlay


def _outer_circle(cfg, smaller: bool):
    pairs = apollonius_pairs(cfg)
    omega = cfg.cycles[0]
    family = [p.a if smaller else p.a_prime for p in pairs[1:]]
    sols = solve_apollonius_checked(family)
    other = _other_than(sols, omega)
    return other, family, sols


def _verify_outer_apollonius(cfg, ctx, tol):
    a, b, c = ctx["triangle"]
    scale = cfg.scene_scale
    center, _ = incenter(a, b, c)
    px = _px(cfg)
    o1, small, sols1 = _outer_circle(cfg, True)
    o2, large, sols2 = _outer_circle(cfg, False)
    # the same lines from the two-step machinery: index 0 is omega
    tp = two_step_pairs(cfg, PrimeAssignment((False,) * 4))[0]
    notes = [
        "outer Apollonius circle chosen as the solution other than omega; "
        f"|r(O1)|={abs(o1.signed_radius):.6g}, |r(O2)|={abs(o2.signed_radius):.6g}"
    ]
    sign_ok = all(isinstance(w, Sphere) and w.signed_radius > 0 for w in small + large)
    facts = [
        Fact("angle_circles_positive", "omega_a.., omega_a'.. are circles inside the angles",
             0.0 if sign_ok else np.inf, 0.0),
        Fact("o1_is_outer", "O1 is the larger of Ap(omega_a, omega_b, omega_c)",
             0.0 if abs(o1.signed_radius) >= max(_absr(s) for s in sols1) else np.inf, 0.0),
        Fact("o2_is_outer", "O2 is the larger of Ap(omega_a', omega_b', omega_c')",
             0.0 if abs(o2.signed_radius) >= max(_absr(s) for s in sols2) else np.inf, 0.0),
        Fact("p_x_is_incenter", "P_X equals the incenter", _dist(px, center), tol * scale),
        Fact("o1_o2_through_incenter", "line O1 O2 passes through the incenter",
             point_line_distance(center, center_of(o1), center_of(o2)), tol * scale),
        Fact("two_step_matches", "B_1, B_1' of the two-step construction are O1, O2",
             0.0 if tp.defined and _same(tp.b, o1) and _same(tp.b_prime, o2) else np.inf, 0.0),
    ]
    try:
        duality = _duality_check(ctx["triangle"], abs(cfg.cycles[0].signed_radius), tol)
        facts.append(duality)
    except InvalidParams as exc:
        notes.append(f"duality check not exercised: {exc}")
    lines = [(center_of(o1), center_of(o2))]
    return facts, px, notes, _overlay(cfg, px, extra_lines=lines, extra_circles=[o1, o2])


def _absr(c):
    return abs(c.signed_radius) if isinstance(c, Sphere) else (0.0 if isinstance(c, PointSphere) else np.inf)


def _duality_check(triangle, radius, tol, samples=72) -> Fact:
    """Find omega's center P on a small circle around I with P, I, O1
    collinear, then require O2 on the same line."""
    a, b, c = triangle
    inc, inr = incenter(a, b, c)
    ring = 0.4 * (inr - radius)
    if ring <= 0:
        raise InvalidParams("omega too large for the duality sweep")

    def outer_pair(theta):
        p = inc + ring * np.array([np.cos(theta), np.sin(theta)])
        cfg = _build_outer_apollonius({"triangle": (a, b, c), "omega_center": p,
                                       "omega_radius": radius})[0]
        return p, _outer_circle(cfg, True)[0], _outer_circle(cfg, False)[0], cfg

    def f(theta):
        p, o1, _, _ = outer_pair(theta)
        u, w = p - inc, center_of(o1) - inc
        return (u[0] * w[1] - u[1] * w[0]) / (np.linalg.norm(u) * np.linalg.norm(w))

    grid = np.linspace(0.0, np.pi, samples + 1)
    vals = [f(t) for t in grid]
    for t0, t1, f0, f1 in zip(grid, grid[1:], vals, vals[1:]):
        if np.sign(f0) != np.sign(f1):
            theta = brentq(f, t0, t1, xtol=1e-15)
            break
    else:
        raise InvalidParams("no collinear position of P found on the sweep")
    p, o1, o2, cfg = outer_pair(theta)
    residual = max(point_line_distance(o1_c, p, inc) for o1_c in (center_of(o1), center_of(o2)))
    return Fact("duality_collinear", "with P on line I O1, the points P, I, O1, O2 are collinear",
                residual, tol * cfg.scene_scale)


def _verify_mixtilinear(cfg, ctx, tol):
    a, b, c = ctx["triangle"]
    big = ctx["omega"]
    scale = cfg.scene_scale
    inc, _ = incenter(a, b, c)
    o = circumcenter(a, b, c)
    px = _px(cfg)
    pairs = apollonius_pairs(cfg)
    # pair omitting CB keeps BA and AC, which meet at A; likewise for the others
    vertices = {1: a, 2: c, 3: b}
    point_res, tangency_res, mixt = 0.0, 0.0, []
    for i, vertex in vertices.items():
        pair = pairs[i]
        if not isinstance(pair.a, PointSphere):
            point_res = np.inf
            continue
        point_res = max(point_res, _dist(pair.a.coords, vertex))
        w = pair.a_prime
        mixt.append(w)
        ok = isinstance(w, Sphere) and w.signed_radius > 0 and \
            euclidean_tangency_oracle(w, big, 1e-9)
        gap = abs(_dist(w.center, big.center) - (big.signed_radius - w.signed_radius))
        tangency_res = max(tangency_res, gap if ok else np.inf)
    tp = two_step_pairs(cfg, PrimeAssignment((False,) * 4))[0]
    reversed_ok = tp.defined and _same(tp.b, reverse(big))
    s = center_of(tp.b_prime) if tp.defined else np.full(2, np.nan)
    facts = [
        Fact("vertex_point_solutions", "Ap(Omega, BA, AC) contains the point sphere A (cyclic)",
             point_res, tol * scale),
        Fact("mixtilinear_internally_tangent", "mixtilinear circles touch Omega internally",
             tangency_res, tol * scale),
        Fact("p_x_is_incenter", "lines A omega_A, B omega_B, C omega_C meet at the incenter",
             _dist(px, inc), tol * scale),
        Fact("b1_is_reversed_circumcircle", "Ap(A, B, C) minus Omega is -Omega",
             0.0 if reversed_ok else np.inf, 0.0),
        Fact("s_i_o_collinear", "S, I and O are collinear",
             point_line_distance(inc, o, s), tol * scale),
    ]
    lines = [(o, s)] if tp.defined else []
    circles = mixt + ([tp.b_prime] if tp.defined else [])
    return facts, px, [], _overlay(cfg, px, extra_lines=lines, extra_circles=circles)


def descartes_radii(radii) -> tuple[float, float]:
    """(inner, outer) radii of the circles touching three mutually tangent
    circles, from the Descartes curvature relation."""
    k1, k2, k3 = (1.0 / r for r in radii)
    s = k1 + k2 + k3
    root = 2.0 * np.sqrt(k1 * k2 + k2 * k3 + k3 * k1)
    return 1.0 / (s + root), abs(1.0 / (s - root))


def _verify_soddy_line(cfg, ctx, tol):
    scale = cfg.scene_scale
    inner, outer = ctx["inner"], ctx["outer"]
    px = _px(cfg)
    first = verify_first_level(cfg, tol)
    omit_inner = apollonius_pairs(cfg)[-1]
    pair_ok = ({_same(omit_inner.a, reverse(inner)), _same(omit_inner.a_prime, reverse(inner))}
               == {True, False}) and (_same(omit_inner.a, outer) or _same(omit_inner.a_prime, outer))
    spheres = ctx["spheres"]
    tangency = max(
        abs(_dist(p.center, q.center) - (p.signed_radius + q.signed_radius))
        for k, p in enumerate(spheres) for q in spheres[k + 1:]
    )
    facts = [
        Fact("mutually_tangent", "the n+1 seed spheres touch externally", tangency, 1e-10 * scale),
        Fact("soddy_pair", "the pair omitting the inner sphere is {-inner, outer}",
             0.0 if pair_ok else np.inf, 0.0),
        Fact("p_x_on_soddy_line", "P_X lies on the Soddy line",
             point_line_distance(px, inner.center, outer.center), tol * scale),
        Fact("first_level_concur", "all first-level center lines meet at P_X",
             first.max_distance, tol * scale),
    ]
    lines = [(inner.center, outer.center)]
    return facts, px, [], _overlay(cfg, px, extra_lines=lines) if cfg.dim == 2 else {}


def _verify_gasket(cfg, ctx, tol):
    big, s1, s2 = ctx["big"], ctx["s1"], ctx["s2"]
    scale = cfg.scene_scale
    facts, notes, lines, circles = [], [], [(s1.center, s2.center)], []
    radii = [b.signed_radius for b in big]
    r_in, r_out = descartes_radii(radii)
    facts.append(Fact("inner_radius", "inner Soddy radius matches Descartes",
                      abs(s1.signed_radius - r_in), tol * scale))
    facts.append(Fact("outer_radius", "outer Soddy radius matches Descartes",
                      abs(s2.signed_radius - r_out), tol * scale))
    points = []
    for key, family_cfg in ctx["configs"].items():
        pairs = apollonius_pairs(family_cfg)
        small, ident = [], True
        for i in range(3):
            pair = pairs[i]
            neg = reverse(big[i])
            members = (pair.a, pair.a_prime)
            hits = [_same(m, neg) for m in members]
            if hits.count(True) != 1:
                ident = False
                continue
            w = members[hits.index(False)]
            small.append(reverse(w))
            ident &= isinstance(w, Sphere) and w.signed_radius < 0
        facts.append(Fact(f"{key}_identity", f"Ap(Omega_j, Omega_k, {key}) = {{-Omega_i, -omega_i}}",
                          0.0 if ident and len(small) == 3 else np.inf, 0.0))
        if len(small) != 3:
            continue
        segs = [(b.center, w.center) for b, w in zip(big, small)]
        meet, spread = lines_meet(segs)
        px = _px(family_cfg)
        facts += [
            Fact(f"{key}_lines_concur", f"lines A1A2, B1B2, C1C2 concur ({key} family)",
                 spread, tol * scale),
            Fact(f"{key}_on_soddy_line", f"the {key} concurrency point lies on the Soddy line",
                 point_line_distance(meet, s1.center, s2.center), tol * scale),
            Fact(f"{key}_matches_p_x", f"the {key} concurrency point is P_X",
                 _dist(meet, px), tol * scale),
        ]
        lines += segs
        circles += small
        points.append((f"P_{key}", tuple(meet)))
    overlay = {"circles": [s1, s2] + circles, "lines": lines, "points": points}
    return facts, points[0][1] if points else None, notes, overlay


def _verify_morita3d(cfg, ctx, tol, samples=16, seed=0):
    scale = cfg.scene_scale
    spheres, enclosing = ctx["spheres"], ctx["S"]
    report = verify_inscribed(cfg, samples, seed, tol)
    pairs = apollonius_pairs(cfg)
    ident = True
    for i in range(4):
        members = (pairs[i].a, pairs[i].a_prime)
        hits = [_same(m, reverse(spheres[i])) for m in members]
        if hits.count(True) != 1:
            ident = False
            continue
        s_i = members[hits.index(False)]
        ident &= isinstance(s_i, Sphere) and s_i.signed_radius < 0
    facts = [
        Fact("pair_identity", "Ap(X minus S_Oi) = {S_Ii, -S_Oi} with S_Ii negative",
             0.0 if ident else np.inf, 0.0),
        Fact("inscribed_tangent_cones", "P' touches every sampled common tangent plane",
             report.max_residual if report.sampled_pairs else np.inf, tol),
        Fact("inscribed_span", "P' is orthogonal to each full tangent-plane solution space",
             report.max_span_residual, tol),
        Fact("inscribed_center", "P' is centered at P_X",
             report.center_offset, report.center_tol * scale),
    ]
    notes = [f"sampled pairs: {report.sampled_pairs} of {len(report.per_pair)}"]
    inner, outer = ctx["soddy"]
    if _dist(inner.center, outer.center) > 1e-9 * scale:
        facts.append(Fact("center_on_soddy_line", "the inscribed center lies on the Soddy line",
                          point_line_distance(report.center, inner.center, outer.center),
                          tol * scale))
    else:
        notes.append("Soddy line undefined: inner and outer Soddy spheres are concentric")
    return facts, report.center, notes, {}


def _verify_olympiad(cfg, ctx, tol):
    w1, w2, w3, w4, w5, w6 = ctx["omega"]
    big = ctx["big"]
    scale = cfg.scene_scale
    construction = max(
        _contact_gap(x, y, external)
        for x, y, external in [
            (w1, w2, True), (w3, w1, True), (w3, w2, True), (w4, w1, True), (w4, w2, True),
            (w5, w3, True), (w5, w1, True), (w6, w3, True), (w6, w2, True),
        ]
    )
    internal = max(_contact_gap(w, big, False) for w in (w1, w2, w3, w4, w5, w6))
    segs = [(w1.center, w6.center), (w2.center, w5.center), (w3.center, w4.center)]
    meet, spread = lines_meet(segs)
    px = _px(cfg)
    facts = [
        Fact("construction_external", "prescribed external tangencies hold",
             construction, 1e-9 * scale),
        Fact("construction_internal", "all six circles touch Omega internally",
             internal, 1e-9 * scale),
        Fact("lines_concur", "lines O1O6, O2O5, O3O4 are concurrent", spread, tol * scale),
        Fact("concurrency_is_p_x", "the concurrency point is P_X", _dist(meet, px), tol * scale),
    ]
    overlay = {"circles": [big, w1, w2, w3, w4, w5, w6], "lines": segs,
               "points": [("P_X", tuple(px))]}
    return facts, px, [], overlay


def _contact_gap(x: Sphere, y: Sphere, external: bool) -> float:
    d = _dist(x.center, y.center)
    rx, ry = abs(x.signed_radius), abs(y.signed_radius)
    return abs(d - (rx + ry)) if external else abs(d - abs(rx - ry))


_VERIFIERS: dict[str, Callable[..., Any]] = {
    "circumcenter": _verify_circumcenter,
    "incenter": _verify_incenter,
    "outer_apollonius": _verify_outer_apollonius,
    "mixtilinear": _verify_mixtilinear,
    "soddy_line": _verify_soddy_line,
    "gasket": _verify_gasket,
    "morita3d": _verify_morita3d,
    "olympiad": _verify_olympiad,
}

DEFAULT_SCENARIO_TOL = 1e-7


def verify_scenario(spec: ScenarioSpec, tol: float | None = None) -> ScenarioReport:
    tol = DEFAULT_SCENARIO_TOL if tol is None else tol
    cfg, ctx = _build(spec)
    facts, point, notes, overlay = _VERIFIERS[spec.name](cfg, ctx, tol)
    return ScenarioReport(
        name=spec.name,
        configuration=cfg,
        facts=tuple(facts),
        point=None if point is None else tuple(float(x) for x in point),
        notes=tuple(notes),
        overlay=overlay,
    )
