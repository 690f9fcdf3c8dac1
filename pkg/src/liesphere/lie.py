"""Linear algebra over the signature (n+1, 2) Lie form.

Coordinates are ordered ``(r, c_1, ..., c_n, v, w)`` and the form is

    (X|Y) = -x_1 y_1 + sum_{i=2}^{n+1} x_i y_i + x_{n+2} y_{n+3} + x_{n+3} y_{n+2}.

Vectors are stored unnormalized; every predicate here is scale invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import config
from .errors import (
    DegeneratePencil,
    DependentGenerators,
    DimensionMismatch,
    IsotropicAxis,
)


@dataclass(frozen=True, eq=False)
class LieVec:
    """Homogeneous coordinate vector of a point of P(R^{n+1,2})."""

    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float).reshape(-1)
        if arr.size < 5:
            raise ValueError(f"a LieVec needs at least 5 coordinates, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("LieVec coordinates must be finite")
        if not np.any(arr):
            raise ValueError("the zero vector is not a projective point")
        arr.flags.writeable = False
        object.__setattr__(self, "coords", arr)

    @property
    def dim(self) -> int:
        return self.coords.size - 3

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def normalized(self) -> "LieVec":
        return LieVec(self.coords / self.norm)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.coords, dtype=dtype)

    def __len__(self):
        return self.coords.size

    def __iter__(self):
        return iter(self.coords.tolist())

    def __getitem__(self, idx):
        return self.coords[idx]

    def __neg__(self):
        return LieVec(-self.coords)

    def __mul__(self, k):
        return LieVec(self.coords * float(k))

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"{x:.6g}" for x in self.coords)
        return f"LieVec({body})"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``X = perp_part + alpha * P`` with ``(perp_part|P) = 0``.

    ``perp_part`` is a plain array because it may legitimately vanish
    (``X`` proportional to ``P``), which a LieVec cannot represent.
    """

    perp_part: np.ndarray
    alpha: float

    @property
    def degenerate_perp(self) -> bool:
        return not np.any(self.perp_part)


def _coords(x) -> np.ndarray:
    if isinstance(x, LieVec):
        return x.coords
    return np.asarray(x, dtype=float)


def gram_matrix(n: int) -> np.ndarray:
    """Matrix G with (X|Y) = X^T G Y."""
    g = np.eye(n + 3)
    g[0, 0] = -1.0
    g[n + 1, n + 1] = 0.0
    g[n + 2, n + 2] = 0.0
    g[n + 1, n + 2] = 1.0
    g[n + 2, n + 1] = 1.0
    return g


def _raw_form(x: np.ndarray, y: np.ndarray) -> float:
    n = x.size - 3
    return float(
        -x[0] * y[0]
        + np.dot(x[1 : n + 1], y[1 : n + 1])
        + x[n + 1] * y[n + 2]
        + x[n + 2] * y[n + 1]
    )


def lie_form(x, y) -> float:
    a, b = _coords(x), _coords(y)
    if a.size != b.size:
        raise DimensionMismatch(
            f"dimension mismatch: n={a.size - 3} vs n={b.size - 3}"
        )
    return _raw_form(a, b)


def is_on_quadric(x, tol: float = config.DEFAULT.quadric) -> bool:
    a = _coords(x)
    return abs(_raw_form(a, a)) <= tol * float(np.dot(a, a))


def projective_equal(x, y, tol: float = config.DEFAULT.projective) -> bool:
    """True when the largest 2x2 minor of [x; y] is below tol * |x| * |y|."""
    a, b = _coords(x), _coords(y)
    if a.size != b.size:
        raise DimensionMismatch("projective_equal on vectors of different dimension")
    minors = np.outer(a, b) - np.outer(b, a)
    return float(np.max(np.abs(minors))) <= tol * np.linalg.norm(a) * np.linalg.norm(b)


def orthogonal_complement(
    vs: Sequence, n: int | None = None, rank_tol: float = config.DEFAULT.rank
) -> list[LieVec]:
    """Orthonormal (Euclidean) basis of {Y : (v_i|Y) = 0 for all i}.

    ``n`` is only needed when ``vs`` is empty.
    """
    rows = [_coords(v) for v in vs]
    if not rows:
        if n is None:
            raise ValueError("dimension required for an empty constraint set")
        return [LieVec(e) for e in np.eye(n + 3)]
    size = rows[0].size
    if any(r.size != size for r in rows):
        raise DimensionMismatch("orthogonal_complement inputs differ in dimension")
    if n is not None and size != n + 3:
        raise DimensionMismatch(f"inputs have n={size - 3}, expected n={n}")
    m = np.vstack(rows) @ gram_matrix(size - 3)
    _, s, vt = np.linalg.svd(m)
    rank = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    return [LieVec(row) for row in vt[rank:]]


def matrix_rank(vs: Sequence, rank_tol: float = config.DEFAULT.rank) -> int:
    m = np.vstack([_coords(v) for v in vs])
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rank_tol * s[0]))


def pencil_discriminant(u, v) -> float:
    """Relative discriminant of the pencil quadratic on unit generators.

    Positive: two real cycles; negative: none.
    """
    a, b = _coords(u), _coords(v)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    qa, qb, qc = _raw_form(a, a), _raw_form(a, b), _raw_form(b, b)
    return qb * qb - qa * qc


def quadric_pencil_intersect(
    u, v, tol: config.Tolerances = config.DEFAULT
) -> list[LieVec]:
    """Real points of the Lie quadric on the projective line through u and v.

    Solves s^2 (U|U) + 2 s t (U|V) + t^2 (V|V) = 0 homogeneously.  A
    discriminant within ``tol.discriminant`` of zero is a double root and
    yields a single vector.
    """
    a, b = _coords(u), _coords(v)
    if a.size != b.size:
        raise DimensionMismatch("pencil generators differ in dimension")
    if projective_equal(a, b, tol.projective):
        raise DependentGenerators("pencil generators are projectively equal")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    qa, qb, qc = _raw_form(a, a), _raw_form(a, b), _raw_form(b, b)
    scale = max(abs(qa), abs(qb), abs(qc))
    if scale <= tol.quadric:
        raise DegeneratePencil("the whole pencil lies on the Lie quadric")
    disc = qb * qb - qa * qc
    if disc < -tol.discriminant * scale * scale:
        return []
    if disc <= tol.discriminant * scale * scale:
        # double root: pick the better conditioned homogeneous form
        st = (-qb, qa) if abs(qa) >= abs(qc) else (qc, -qb)
        return [_combine(a, b, st)]
    root = np.sqrt(disc)
    q = -(qb + (root if qb >= 0 else -root))
    return [_combine(a, b, (q, qa)), _combine(a, b, (qc, q))]


def _combine(a, b, st) -> LieVec:
    s, t = st
    x = s * a + t * b
    return LieVec(x / np.linalg.norm(x))


def _check_axis(p: np.ndarray, tol: float) -> float:
    pp = _raw_form(p, p)
    if abs(pp) <= tol * float(np.dot(p, p)):
        raise IsotropicAxis("(P|P) vanishes; reflection/decomposition undefined")
    return pp


def decompose(x, p, tol: float = config.DEFAULT.isotropic) -> Decomposition:
    a, pc = _coords(x), _coords(p)
    if a.size != pc.size:
        raise DimensionMismatch("decompose on vectors of different dimension")
    pp = _check_axis(pc, tol)
    alpha = _raw_form(a, pc) / pp
    perp = a - alpha * pc
    perp.flags.writeable = False
    return Decomposition(perp_part=perp, alpha=alpha)


def reflect(x, p, tol: float = config.DEFAULT.isotropic) -> LieVec:
    """R_P(X) = X - 2 (X|P)/(P|P) P."""
    a, pc = _coords(x), _coords(p)
    if a.size != pc.size:
        raise DimensionMismatch("reflect on vectors of different dimension")
    pp = _check_axis(pc, tol)
    return LieVec(a - 2.0 * _raw_form(a, pc) / pp * pc)
