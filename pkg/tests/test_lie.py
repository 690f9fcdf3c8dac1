import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import form_by_hand
from liesphere import config
from liesphere.errors import (
    DegeneratePencil,
    DependentGenerators,
    DimensionMismatch,
    IsotropicAxis,
)
from liesphere.lie import (
    LieVec,
    decompose,
    gram_matrix,
    is_on_quadric,
    lie_form,
    matrix_rank,
    orthogonal_complement,
    pencil_discriminant,
    projective_equal,
    quadric_pencil_intersect,
    reflect,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def vectors(n):
    return arrays(np.float64, n + 3, elements=finite).filter(lambda v: np.linalg.norm(v) > 1e-3)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_gram_matches_written_form(n, rng):
    for _ in range(20):
        x, y = rng.normal(size=(2, n + 3))
        assert x @ gram_matrix(n) @ y == pytest.approx(form_by_hand(x, y), abs=1e-12)
        assert lie_form(x, y) == pytest.approx(form_by_hand(x, y), abs=1e-12)


def test_signature_is_n_plus_1_comma_2():
    for n in (2, 3, 4):
        eig = np.linalg.eigvalsh(gram_matrix(n))
        assert (eig > 0).sum() == n + 1
        assert (eig < 0).sum() == 2


@given(vectors(2), vectors(2))
def test_form_is_symmetric(x, y):
    assert lie_form(x, y) == pytest.approx(lie_form(y, x))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lie_form(np.ones(5), np.ones(6))


def test_lievec_rejects_bad_input():
    with pytest.raises(ValueError):
        LieVec(np.zeros(5))
    with pytest.raises(ValueError):
        LieVec([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        LieVec([1.0, np.nan, 0, 0, 0])


def test_lievec_is_read_only():
    v = LieVec([1.0, 0, 0, 0, 1.0])
    with pytest.raises(ValueError):
        v.coords[0] = 3.0
    assert (-v)[0] == -1.0
    assert (2 * v).norm == pytest.approx(2 * v.norm)


@given(vectors(3), st.floats(-1e3, 1e3).filter(lambda k: abs(k) > 1e-3))
def test_projective_equal_under_scaling(x, k):
    assert projective_equal(x, k * x)


def test_projective_equal_distinguishes():
    assert not projective_equal([1, 0, 0, 0, 0], [1, 1e-3, 0, 0, 0])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orthogonal_complement(n, rng):
    for k in range(1, n + 3):
        vs = rng.normal(size=(k, n + 3))
        basis = orthogonal_complement(vs)
        assert len(basis) == n + 3 - k
        for b in basis:
            for v in vs:
                assert abs(lie_form(v, b)) < 1e-10 * np.linalg.norm(v)


def test_orthogonal_complement_rank_deficient(rng):
    v = rng.normal(size=6)
    basis = orthogonal_complement([v, 2 * v, -v])
    assert len(basis) == 5


def test_orthogonal_complement_empty_needs_dimension():
    with pytest.raises(ValueError):
        orthogonal_complement([])
    assert len(orthogonal_complement([], n=2)) == 5


def test_matrix_rank(rng):
    a, b = rng.normal(size=(2, 5))
    assert matrix_rank([a, b, a + b]) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pencil_roots_lie_on_quadric_and_in_span(n, rng):
    found = 0
    for _ in range(200):
        u, v = rng.normal(size=(2, n + 3))
        roots = quadric_pencil_intersect(u, v)
        disc = pencil_discriminant(u, v)
        assert len(roots) == (2 if disc > 0 else 0)
        for x in roots:
            found += 1
            assert is_on_quadric(x, 1e-12)
            # x is in span(u, v): the 3x3 Gram determinant vanishes
            m = np.vstack([u, v, x.coords])
            assert np.linalg.svd(m, compute_uv=False)[-1] < 1e-10 * np.linalg.norm(m)
    assert found > 50


def test_pencil_double_root():
    # both generators tangent to the quadric at the same isotropic point
    x = np.array([1.0, 1.0, 0, 0, 0])  # isotropic: -1 + 1
    y = np.array([0.0, 0.0, 1.0, 0, 0])  # (x|y) = 0, (y|y) = 1
    roots = quadric_pencil_intersect(x, y)
    assert len(roots) == 1
    assert projective_equal(roots[0], x)


def test_pencil_in_quadric():
    # two orthogonal isotropic vectors span a line on the quadric
    x = np.array([1.0, 1.0, 0, 0, 0])
    y = np.array([0.0, 0.0, 0.0, 1.0, 0.0])
    with pytest.raises(DegeneratePencil):
        quadric_pencil_intersect(x, y)
    with pytest.raises(DependentGenerators):
        quadric_pencil_intersect(x, 3 * x)


def test_pencil_stable_near_cancellation():
    # the naive root (-b + sqrt(D)) / a loses every digit here
    x = np.array([0.0, 1.0, 0, 0, 0])
    y = np.array([1e-9, 0, 0, 0.5, 1.0])
    for root in quadric_pencil_intersect(x, y):
        assert abs(lie_form(root, root)) < 1e-15


def _conditioning(p):
    """|P|^2 / |(P|P)|: how much the reflection can amplify rounding."""
    return (p @ p) / abs(lie_form(p, p))


@given(vectors(2), vectors(2))
@settings(max_examples=200)
def test_reflection_involution_and_isometry(x, p):
    if abs(lie_form(p, p)) < 1e-6 * (p @ p):
        with pytest.raises(IsotropicAxis):
            reflect(x, p, 1e-6)
        return
    k = _conditioning(p)
    scale = np.linalg.norm(x)
    rx = reflect(x, p)
    assert np.linalg.norm(reflect(rx, p).coords - x) <= 1e-12 * k * k * scale
    assert abs(lie_form(rx, rx) - lie_form(x, x)) <= 1e-12 * k * k * scale * scale


@given(vectors(3), vectors(3))
def test_decomposition_reconstructs(x, p):
    if abs(lie_form(p, p)) < 1e-6 * (p @ p):
        return
    k = _conditioning(p)
    d = decompose(x, p)
    scale = np.linalg.norm(x)
    assert np.linalg.norm(d.perp_part + d.alpha * p - x) <= 1e-12 * k * scale
    assert abs(lie_form(d.perp_part, p)) <= 1e-12 * k * scale * np.linalg.norm(p)


def test_decomposition_of_axis_itself():
    p = np.array([0.0, 1.0, 0.0, 0.0, 0.0])
    d = decompose(3 * p, p)
    assert d.alpha == pytest.approx(3.0)
    assert d.degenerate_perp


def test_reflect_isotropic_axis_raises():
    with pytest.raises(IsotropicAxis):
        reflect(np.ones(5), [1.0, 1.0, 0, 0, 0])


def test_tolerance_env_override():
    assert config.from_env({}) is config.DEFAULT
    assert config.from_env({"APOLLONIUS_TOL": "1e-6"}).verify == 1e-6
    tols = config.from_env({"APOLLONIUS_TOL": '{"rank": 1e-9, "verify": 1e-5}'})
    assert (tols.rank, tols.verify) == (1e-9, 1e-5)
    with pytest.raises(ValueError):
        config.from_env({"APOLLONIUS_TOL": '{"bogus": 1}'})
