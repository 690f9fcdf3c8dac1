"""Apollonius solutions of n+2 cycles and the concurrency point P_X.

For a configuration X of n+2 cycles in R^n the lifts span a hyperplane of
R^{n+1,2}; its Lie-orthogonal line is spanned by a vector P.  Every pair of
Apollonius solutions {A_i, A_i'} of X minus X_i spans a projective line
through P, so the centers of A_i, A_i' are collinear with the affine
center P_X of P.  The same holds for the second-level pairs {B_i, B_i'},
and the sphere P' obtained by correcting the last coordinate of P is
centered at P_X and touches every common tangent hyperplane of each pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import config
from .cycles import (
    Cycle,
    Hyperplane,
    PointAtInfinity,
    PointSphere,
    Sphere,
    homogeneous_center,
    lift,
    project,
    tangency_residual,
)
from .errors import (
    AtInfinity,
    CenterAtInfinity,
    CoincidentCenters,
    DegenerateConfiguration,
    DegeneratePencil,
    DegenerateVector,
    DependentGenerators,
    EmptyTangentSet,
    NotGeneric,
    RankDeficient,
    SecondLevelDegenerate,
)
from .lie import (
    LieVec,
    gram_matrix,
    lie_form,
    matrix_rank,
    orthogonal_complement,
    pencil_discriminant,
    projective_equal,
    quadric_pencil_intersect,
)

Tolerances = config.Tolerances
DEFAULT = config.DEFAULT

TANGENT_SAMPLE_BUDGET = 64
CENTER_OFFSET_TOL = 1e-10


# -- data types ---------------------------------------------------------------


@dataclass(frozen=True)
class SubsetDiagnostic:
    omitted_index: int
    solutions: int
    discriminant: float | None
    reason: str | None = None


@dataclass(frozen=True)
class GenericityCertificate:
    generic: bool
    rank: int
    subsets: tuple[SubsetDiagnostic, ...]
    reason: str | None = None

    @property
    def failing_subset(self) -> int | None:
        for d in self.subsets:
            if d.solutions != 2:
                return d.omitted_index
        return None


@dataclass(frozen=True)
class Configuration:
    """Ordered family of n+2 cycles in R^n."""

    dim: int
    cycles: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if len(self.cycles) != self.dim + 2:
            raise ValueError(
                f"need {self.dim + 2} cycles in R^{self.dim}, got {len(self.cycles)}"
            )
        for i, c in enumerate(self.cycles):
            if c.dim != self.dim:
                raise ValueError(f"cycle {i} has dimension {c.dim}, expected {self.dim}")

    @cached_property
    def lifts(self) -> tuple[LieVec, ...]:
        return tuple(lift(c) for c in self.cycles)

    @cached_property
    def scene_scale(self) -> float:
        return scene_scale(self.cycles)

    @cached_property
    def certificate(self) -> GenericityCertificate:
        return genericity_certificate(self)


@dataclass(frozen=True, eq=False)
class ApolloniusPair:
    omitted_index: int
    a: Cycle
    a_prime: Cycle
    a_lift: LieVec
    a_prime_lift: LieVec

    def choose(self, swap: bool) -> tuple[LieVec, LieVec]:
        """(A_i, A_i') lifts, with the labels interchanged when ``swap``."""
        if swap:
            return self.a_prime_lift, self.a_lift
        return self.a_lift, self.a_prime_lift


@dataclass(frozen=True)
class Line:
    base: tuple[float, ...]
    direction: tuple[float, ...]

    def distance_to(self, point) -> float:
        d = np.asarray(point, dtype=float) - np.asarray(self.base)
        u = np.asarray(self.direction)
        return float(np.linalg.norm(d - np.dot(d, u) * u))


@dataclass(frozen=True)
class ConcurrencyReport:
    point: tuple[float, ...]
    line_count: int
    max_distance: float
    tol: float
    scale: float
    passed: bool
    per_line: tuple[tuple[str, float], ...]
    skipped: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class PrimeAssignment:
    """Which member of each Apollonius pair is labelled A_i.

    ``signs[i]`` True means the labels of pair i are interchanged.  A global
    flip yields the same lines, so the canonical form has ``signs[0]`` False.
    """

    signs: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(bool(s) for s in self.signs))

    def canonical(self) -> "PrimeAssignment":
        if self.signs and self.signs[0]:
            return PrimeAssignment(tuple(not s for s in self.signs))
        return self

    def flipped(self) -> "PrimeAssignment":
        return PrimeAssignment(tuple(not s for s in self.signs))

    @classmethod
    def enumerate(cls, count: int):
        for tail in itertools.product((False, True), repeat=count - 1):
            yield cls((False,) + tail)


@dataclass(frozen=True, eq=False)
class TwoStepPair:
    index: int
    b: Cycle | None
    b_prime: Cycle | None
    defined: bool
    reason: str | None = None
    b_lift: LieVec | None = field(default=None, repr=False)
    b_prime_lift: LieVec | None = field(default=None, repr=False)


@dataclass(frozen=True)
class SecondLevelReport:
    reports: tuple[ConcurrencyReport, ...]
    assignments: tuple[PrimeAssignment, ...]
    distinct_lines: int
    theoretical_lines: int
    defined_lines: int
    undefined_lines: int
    passed: bool


@dataclass(frozen=True)
class PairTangency:
    """Residuals of P' for one pair.

    ``max_residual`` covers the sampled real tangent hyperplanes (None when
    the pair has none); ``span_residual`` covers a basis of the whole linear
    solution space, so it is defined for every pair.
    """

    index: int
    samples: int
    max_residual: float | None
    span_residual: float
    note: str | None = None


@dataclass(frozen=True)
class InscribedReport:
    center: tuple[float, ...]
    sphere: Cycle
    center_offset: float
    center_tol: float
    per_pair: tuple[PairTangency, ...]
    tol: float
    scale: float
    passed: bool

    @property
    def max_residual(self) -> float:
        vals = [p.max_residual for p in self.per_pair if p.max_residual is not None]
        return max(vals, default=0.0)

    @property
    def max_span_residual(self) -> float:
        return max((p.span_residual for p in self.per_pair), default=0.0)

    @property
    def sampled_pairs(self) -> int:
        return sum(p.samples > 0 for p in self.per_pair)


# -- helpers ------------------------------------------------------------------


def center_of(c: Cycle) -> np.ndarray:
    if isinstance(c, Sphere):
        return np.asarray(c.center)
    if isinstance(c, PointSphere):
        return np.asarray(c.coords)
    raise CenterAtInfinity(f"{type(c).__name__} has its center at infinity")


def _abs_radius(c: Cycle) -> float:
    if isinstance(c, Sphere):
        return abs(c.signed_radius)
    if isinstance(c, PointSphere):
        return 0.0
    return float("inf")


def scene_scale(cycles: Sequence[Cycle]) -> float:
    """Largest center-to-center distance plus largest |radius|.

    Hyperplanes contribute their foot point from the origin.
    """
    pts, radii = [], [0.0]
    for c in cycles:
        if isinstance(c, Sphere):
            pts.append(np.asarray(c.center))
            radii.append(abs(c.signed_radius))
        elif isinstance(c, PointSphere):
            pts.append(np.asarray(c.coords))
        elif isinstance(c, Hyperplane):
            pts.append(np.asarray(c.unit_normal) * c.offset)
    spread = 0.0
    for p, q in itertools.combinations(pts, 2):
        spread = max(spread, float(np.linalg.norm(p - q)))
    s = spread + max(radii)
    return s if s > 0 else 1.0


def _sorted_solutions(vecs: Sequence[LieVec], tols: Tolerances):
    cycles = [project(v, tols) for v in vecs]

    def key(k):
        c = cycles[k]
        signed = c.signed_radius if isinstance(c, Sphere) else 0.0
        return (_abs_radius(c), signed, type(c).__name__)

    order = sorted(range(len(vecs)), key=key)
    return [cycles[k] for k in order], [vecs[k] for k in order]


def apollonius_lifts(vecs: Sequence, tols: Tolerances = DEFAULT) -> list[LieVec]:
    """Lie quadric points orthogonal to n+1 lifted cycles."""
    vecs = list(vecs)
    n = len(vecs[0]) - 3
    if len(vecs) != n + 1:
        raise ValueError(f"expected {n + 1} cycles in R^{n}, got {len(vecs)}")
    basis = orthogonal_complement(vecs, rank_tol=tols.rank)
    if len(basis) != 2:
        raise RankDeficient(
            f"complement has dimension {len(basis)}; the lifted family is not independent"
        )
    return quadric_pencil_intersect(basis[0], basis[1], tols)


def solve_apollonius(cs: Sequence[Cycle], tols: Tolerances = DEFAULT) -> list[Cycle]:
    """All oriented cycles tangent to n+1 given cycles in R^n (0, 1 or 2).

    Solutions come back ordered by |signed radius|, hyperplanes last.
    """
    cs = list(cs)
    dims = {c.dim for c in cs}
    if len(dims) != 1:
        raise ValueError("cycles of mixed dimension")
    return _sorted_solutions(apollonius_lifts([lift(c) for c in cs], tols), tols)[0]


# -- first level --------------------------------------------------------------


def genericity_certificate(
    config_: Configuration, tols: Tolerances = DEFAULT
) -> GenericityCertificate:
    rank = matrix_rank(config_.lifts, tols.rank)
    diags = []
    for i in range(len(config_.cycles)):
        subset = [v for j, v in enumerate(config_.lifts) if j != i]
        basis = orthogonal_complement(subset, rank_tol=tols.rank)
        if len(basis) != 2:
            diags.append(SubsetDiagnostic(i, -1, None, "rank deficient subset"))
            continue
        disc = pencil_discriminant(basis[0], basis[1])
        try:
            count = len(quadric_pencil_intersect(basis[0], basis[1], tols))
        except (DegeneratePencil, DependentGenerators) as exc:
            diags.append(SubsetDiagnostic(i, -1, disc, str(exc)))
            continue
        reason = None if count == 2 else f"{count} real solution(s)"
        diags.append(SubsetDiagnostic(i, count, disc, reason))
    reason = None
    if rank != config_.dim + 2:
        reason = f"lifts have rank {rank}, need {config_.dim + 2}"
    elif any(d.solutions != 2 for d in diags):
        bad = next(d for d in diags if d.solutions != 2)
        reason = f"subset omitting cycle {bad.omitted_index}: {bad.reason}"
    return GenericityCertificate(reason is None, rank, tuple(diags), reason)


def compute_P(config_: Configuration, tols: Tolerances = DEFAULT) -> LieVec:
    """Generator of the Lie-orthogonal complement of all n+2 lifts."""
    basis = orthogonal_complement(config_.lifts, rank_tol=tols.rank)
    if len(basis) != 1:
        raise DegenerateConfiguration(
            f"lifts have rank {config_.dim + 3 - len(basis)}, need {config_.dim + 2}"
        )
    return basis[0]


def p_x_point(p, tols: Tolerances = DEFAULT) -> np.ndarray:
    """Affine center (p_2, ..., p_{n+1}) / p_{n+2} of P."""
    try:
        hc = homogeneous_center(p)
    except DegenerateVector as exc:
        raise AtInfinity(str(exc)) from exc
    return hc.affine(tols.at_infinity)


def apollonius_pairs(
    config_: Configuration, tols: Tolerances = DEFAULT
) -> list[ApolloniusPair]:
    out = []
    for i in range(len(config_.cycles)):
        subset = [v for j, v in enumerate(config_.lifts) if j != i]
        try:
            sols = apollonius_lifts(subset, tols)
        except (RankDeficient, DegeneratePencil, DependentGenerators) as exc:
            raise NotGeneric(str(exc), subset_index=i) from exc
        if len(sols) != 2:
            raise NotGeneric(
                f"subset omitting cycle {i} has {len(sols)} real solution(s)",
                subset_index=i,
            )
        cycles, vecs = _sorted_solutions(sols, tols)
        out.append(ApolloniusPair(i, cycles[0], cycles[1], vecs[0], vecs[1]))
    return out


def line_through_centers(a: Cycle, b: Cycle, tol: float = 1e-9) -> Line:
    ca, cb = center_of(a), center_of(b)
    d = cb - ca
    length = float(np.linalg.norm(d))
    scale = max(1.0, float(np.linalg.norm(ca)), float(np.linalg.norm(cb)))
    if length <= tol * scale:
        raise CoincidentCenters("the two centers coincide")
    return Line(tuple(ca), tuple(d / length))


def _concurrency(point, lines, skipped, tol, scale) -> ConcurrencyReport:
    per_line = tuple((label, line.distance_to(point)) for label, line in lines)
    max_d = max((d for _, d in per_line), default=0.0)
    return ConcurrencyReport(
        point=tuple(float(x) for x in point),
        line_count=len(per_line),
        max_distance=max_d,
        tol=tol,
        scale=scale,
        passed=max_d <= tol * scale,
        per_line=per_line,
        skipped=tuple(skipped),
    )


def verify_first_level(
    config_: Configuration, tol: float | None = None, tols: Tolerances = DEFAULT
) -> ConcurrencyReport:
    """Every defined line A_i A_i' passes through P_X."""
    tol = tols.verify if tol is None else tol
    p = compute_P(config_, tols)
    pairs = apollonius_pairs(config_, tols)
    px = p_x_point(p, tols)
    lines, skipped = [], []
    for pair in pairs:
        label = f"A{pair.omitted_index + 1}A{pair.omitted_index + 1}'"
        try:
            lines.append((label, line_through_centers(pair.a, pair.a_prime)))
        except (CoincidentCenters, CenterAtInfinity) as exc:
            skipped.append((label, exc.code))
    return _concurrency(px, lines, skipped, tol, config_.scene_scale)


# -- second level -------------------------------------------------------------


class _SecondLevel:
    """Memoized B_i solutions; B_i depends only on the labels of pairs j != i."""

    def __init__(self, config_, pairs, tols):
        self.config = config_
        self.pairs = pairs
        self.tols = tols
        self._memo = {}

    def b_for(self, i: int, signs: tuple[bool, ...]):
        key = (i, tuple(s for j, s in enumerate(signs) if j != i))
        if key not in self._memo:
            self._memo[key] = self._solve(i, signs)
        return self._memo[key]

    def _solve(self, i, signs):
        family = [self.pairs[j].choose(signs[j])[0] for j in range(len(signs)) if j != i]
        x_i = self.config.lifts[i]
        try:
            sols = apollonius_lifts(family, self.tols)
        except (RankDeficient, DegeneratePencil, DependentGenerators) as exc:
            return None, f"second-level family rank deficient: {exc.code}"
        if not sols:
            return None, "no real second-level solution"
        match = [projective_equal(s, x_i, self.tols.projective) for s in sols]
        if not any(match):
            raise SecondLevelDegenerate(
                f"no second-level solution coincides with X_{i + 1}", subset_index=i
            )
        rest = [s for s, m in zip(sols, match) if not m]
        return (rest[0] if rest else x_i), None

    def pair(self, i: int, assign: PrimeAssignment) -> TwoStepPair:
        b, why = self.b_for(i, assign.signs)
        bp, why_p = self.b_for(i, assign.flipped().signs)
        if b is None or bp is None:
            return TwoStepPair(i, None, None, False, why or why_p)
        if projective_equal(b, bp, self.tols.projective):
            return TwoStepPair(i, None, None, False, "B_i equals B_i'", b, bp)
        bc, bpc = project(b, self.tols), project(bp, self.tols)
        return TwoStepPair(i, bc, bpc, True, None, b, bp)


def two_step_pairs(
    config_: Configuration,
    assign: PrimeAssignment,
    tols: Tolerances = DEFAULT,
    pairs: Sequence[ApolloniusPair] | None = None,
) -> list[TwoStepPair]:
    """B_i from Ap(A minus A_i), B_i' from Ap(A' minus A_i'), X_i removed."""
    if len(assign.signs) != len(config_.cycles):
        raise ValueError("assignment length must equal the number of cycles")
    pairs = apollonius_pairs(config_, tols) if pairs is None else pairs
    solver = _SecondLevel(config_, pairs, tols)
    return [solver.pair(i, assign) for i in range(len(config_.cycles))]


def _line_key(line: Line, scale: float, digits: int = 6):
    u = np.asarray(line.direction)
    k = int(np.argmax(np.abs(u)))
    if u[k] < 0:
        u = -u
    b = np.asarray(line.base)
    foot = b - np.dot(b, u) * u
    return tuple(np.round(np.concatenate([u, foot / scale]), digits) + 0.0)


def verify_second_level(
    config_: Configuration, tol: float | None = None, tols: Tolerances = DEFAULT
) -> SecondLevelReport:
    """Every defined line B_i B_i' passes through P_X, over all prime labelings."""
    tol = tols.verify if tol is None else tol
    p = compute_P(config_, tols)
    pairs = apollonius_pairs(config_, tols)
    px = p_x_point(p, tols)
    solver = _SecondLevel(config_, pairs, tols)
    scale = config_.scene_scale
    reports, assigns, keys = [], [], set()
    defined = undefined = 0
    for assign in PrimeAssignment.enumerate(len(pairs)):
        lines, skipped = [], []
        for i in range(len(pairs)):
            label = f"B{i + 1}B{i + 1}'"
            tp = solver.pair(i, assign)
            if not tp.defined:
                skipped.append((label, tp.reason))
                undefined += 1
                continue
            try:
                line = line_through_centers(tp.b, tp.b_prime)
            except (CoincidentCenters, CenterAtInfinity) as exc:
                skipped.append((label, exc.code))
                undefined += 1
                continue
            defined += 1
            keys.add(_line_key(line, scale))
            lines.append((label, line))
        reports.append(_concurrency(px, lines, skipped, tol, scale))
        assigns.append(assign)
    n = config_.dim
    return SecondLevelReport(
        reports=tuple(reports),
        assignments=tuple(assigns),
        distinct_lines=len(keys),
        theoretical_lines=n * 2**n,
        defined_lines=defined,
        undefined_lines=undefined,
        passed=all(r.passed for r in reports),
    )


# -- inscribed sphere ---------------------------------------------------------


def inscribed_lift(p, tols: Tolerances = DEFAULT) -> LieVec:
    """P' = [p_1 : ... : p_{n+2} : p_{n+3} - (P|P) / (2 p_{n+2})]."""
    x = np.array(p.coords if isinstance(p, LieVec) else p, dtype=float)
    n = x.size - 3
    v = x[n + 1]
    if abs(v) <= tols.at_infinity * np.linalg.norm(x):
        raise AtInfinity("P_X is a point at infinity")
    x[n + 2] -= lie_form(x, x) / (2.0 * v)
    return LieVec(x)


def inscribed_sphere(config_: Configuration, tols: Tolerances = DEFAULT) -> Cycle:
    return project(inscribed_lift(compute_P(config_, tols), tols), tols)


def _tangent_space(pair: ApolloniusPair, rank_tol: float) -> np.ndarray:
    n = pair.a_lift.dim
    g = gram_matrix(n)
    e = np.zeros(n + 3)
    e[n + 1] = 1.0
    m = np.vstack([pair.a_lift.coords @ g, pair.a_prime_lift.coords @ g, e])
    _, s, vt = np.linalg.svd(m)
    rank = int(np.sum(s > rank_tol * s[0]))
    return vt[rank:]


def sample_tangent_hyperplanes(
    pair: ApolloniusPair,
    k: int,
    seed=0,
    tols: Tolerances = DEFAULT,
    budget: int = TANGENT_SAMPLE_BUDGET,
) -> list[Hyperplane]:
    """Draw k hyperplanes in oriented contact with both members of a pair.

    Each draw intersects the Lie quadric with a random pencil inside the
    solution space of (T|A) = (T|A') = 0, t_{n+2} = 0.  Coverage, not
    uniformity, is the goal.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    basis = _tangent_space(pair, tols.rank)
    if basis.shape[0] < 2:
        raise ValueError("tangent hyperplane solution space has dimension < 2")
    n = pair.a_lift.dim
    out: list[Hyperplane] = []
    for _ in range(k):
        for _attempt in range(budget):
            u = rng.standard_normal(basis.shape[0]) @ basis
            v = rng.standard_normal(basis.shape[0]) @ basis
            try:
                roots = quadric_pencil_intersect(u, v, tols)
            except (DegeneratePencil, DependentGenerators):
                continue
            roots = [
                r for r in roots if np.linalg.norm(r.coords[1 : n + 1]) > 1e-8 * r.norm
            ]
            if roots:
                out.append(project(roots[int(rng.integers(len(roots)))], tols))
                break
        else:
            raise EmptyTangentSet(
                f"no real tangent hyperplane after {budget} pencils",
                budget=budget,
                found=len(out),
            )
    return out


def verify_inscribed(
    config_: Configuration,
    k: int = 16,
    seed: int = 0,
    tol: float | None = None,
    tols: Tolerances = DEFAULT,
    center_tol: float = CENTER_OFFSET_TOL,
) -> InscribedReport:
    """P' touches sampled common tangent hyperplanes of every pair.

    A pair without any real common tangent hyperplane contributes nothing
    (its tangent set is empty) and is reported with a note.
    """
    tol = tols.verify if tol is None else tol
    p = compute_P(config_, tols)
    pairs = apollonius_pairs(config_, tols)
    px = p_x_point(p, tols)
    sphere = project(inscribed_lift(p, tols), tols)
    offset = float(np.linalg.norm(center_of(sphere) - px))
    scale = config_.scene_scale
    p_lift = lift(sphere)
    per_pair = []
    for pair in pairs:
        span = max(
            abs(lie_form(p_lift, t)) / (p_lift.norm * np.linalg.norm(t))
            for t in _tangent_space(pair, tols.rank)
        )
        rng = np.random.default_rng((seed, pair.omitted_index))
        try:
            planes = sample_tangent_hyperplanes(pair, k, rng, tols)
        except EmptyTangentSet as exc:
            per_pair.append(PairTangency(pair.omitted_index, 0, None, span, exc.code))
            continue
        res = max(abs(tangency_residual(sphere, t)) for t in planes)
        per_pair.append(PairTangency(pair.omitted_index, len(planes), res, span))
    passed = offset <= center_tol * scale and all(
        (p.max_residual is None or p.max_residual <= tol) and p.span_residual <= tol
        for p in per_pair
    )
    return InscribedReport(
        center=tuple(float(x) for x in px),
        sphere=sphere,
        center_offset=offset,
        center_tol=center_tol,
        per_pair=tuple(per_pair),
        tol=tol,
        scale=scale,
        passed=passed,
    )
