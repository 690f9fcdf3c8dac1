"""Independent Euclidean oracles used across the test suite."""

import numpy as np
from scipy.optimize import fsolve

from liesphere.cycles import PointSphere, Sphere


def _ball(c):
    if isinstance(c, Sphere):
        return np.asarray(c.center, dtype=float), c.signed_radius
    return np.asarray(c.coords, dtype=float), 0.0


def tangent_circles_by_elimination(cs):
    """Oriented circles tangent to three circles in the plane.

    Solves |m - m_i|^2 = (r - r_i)^2 directly: differences of the three
    equations are linear in (m, r), which leaves one quadratic in r.  Each
    real root is then polished with a Newton-type solve of the original
    system.  Returns a list of (center, r).
    """
    (m0, r0), (m1, r1), (m2, r2) = (_ball(c) for c in cs)
    a = 2.0 * np.array([m1 - m0, m2 - m0])
    b = np.array([m1 @ m1 - m0 @ m0 - r1 * r1 + r0 * r0, m2 @ m2 - m0 @ m0 - r2 * r2 + r0 * r0])
    c = 2.0 * np.array([r1 - r0, r2 - r0])
    p = np.linalg.solve(a, b)
    q = np.linalg.solve(a, c)
    w = p - m0
    coeffs = [q @ q - 1.0, 2.0 * (q @ w + r0), w @ w - r0 * r0]
    roots = np.roots(coeffs)
    out = []
    for r in roots:
        if abs(r.imag) > 1e-9 * max(1.0, abs(r.real)):
            continue
        guess = np.concatenate([p + q * r.real, [r.real]])

        def eqs(z):
            m, rr = z[:2], z[2]
            return [np.sum((m - mi) ** 2) - (rr - ri) ** 2 for mi, ri in ((m0, r0), (m1, r1), (m2, r2))]

        z = fsolve(eqs, guess, xtol=1e-12)
        out.append((z[:2], float(z[2])))
    return out


def as_center_radius(c):
    m, r = _ball(c)
    return m, r


def match_solutions(found, expected, tol):
    """True when two lists of (center, r) agree as multisets."""
    if len(found) != len(expected):
        return False
    left = list(expected)
    for m, r in found:
        scale = max(1.0, abs(r))
        for k, (m2, r2) in enumerate(left):
            if np.linalg.norm(m - m2) <= tol * scale and abs(r - r2) <= tol * scale:
                left.pop(k)
                break
        else:
            return False
    return True


def random_circle_triple(rng):
    return [
        Sphere(tuple(rng.uniform(-1, 1, 2)), float(rng.uniform(0.1, 0.4) * rng.choice([-1, 1])))
        for _ in range(3)
    ]


def is_point(c):
    return isinstance(c, PointSphere)
