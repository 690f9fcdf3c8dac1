import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import form_by_hand
from liesphere.cycles import (
    Hyperplane,
    PointAtInfinity,
    PointSphere,
    Sphere,
    cycle_scale,
    euclidean_tangency_oracle,
    homogeneous_center,
    lift,
    project,
    reverse,
    tangency_residual,
)
from liesphere.errors import AtInfinity, DegenerateVector, NotACycle
from liesphere.lie import is_on_quadric, projective_equal

coord = st.floats(-5, 5, allow_nan=False)
radius = st.floats(0.01, 5).flatmap(lambda r: st.sampled_from([r, -r]))


def points(n):
    return st.lists(coord, min_size=n, max_size=n).map(tuple)


def spheres(n):
    return st.builds(Sphere, points(n), radius)


def hyperplanes(n):
    normal = st.lists(st.floats(-1, 1), min_size=n, max_size=n).filter(
        lambda v: np.linalg.norm(v) > 0.1
    )
    return st.builds(Hyperplane.through, normal, coord, st.sampled_from([1, -1]))


def cycles(n):
    return st.one_of(spheres(n), hyperplanes(n), st.builds(PointSphere, points(n)))


def same_cycle(a, b, tol=1e-9):
    if type(a) is not type(b):
        return False
    if isinstance(a, Sphere):
        return np.allclose(a.center, b.center, atol=tol * 10) and a.signed_radius == pytest.approx(
            b.signed_radius, abs=tol * 10
        )
    if isinstance(a, Hyperplane):
        # (n, d, o) and (-n, -d, -o) describe the same oriented hyperplane
        na, nb = a.orientation * np.asarray(a.unit_normal), b.orientation * np.asarray(b.unit_normal)
        return np.allclose(na, nb, atol=tol) and a.orientation * a.offset == pytest.approx(
            b.orientation * b.offset, abs=tol * 10
        )
    return np.allclose(a.coords, b.coords, atol=tol * 10)


@pytest.mark.parametrize("n", [2, 3, 4])
@given(data=st.data())
def test_lifts_are_isotropic(n, data):
    c = data.draw(cycles(n))
    assert is_on_quadric(lift(c), 1e-12)


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_project_inverts_lift(n, data):
    c = data.draw(cycles(n))
    k = data.draw(st.floats(0.01, 100).flatmap(lambda k: st.sampled_from([k, -k])))
    assume(not isinstance(c, Sphere) or abs(c.signed_radius) > 1e-6)
    assert same_cycle(project(k * lift(c)), c)


def test_lift_coordinates():
    assert list(lift(Sphere((1.0, 2.0), 3.0))) == [3.0, 1.0, 2.0, 1.0, 2.0]
    assert list(lift(Hyperplane((0.0, 1.0), 2.0, -1))) == [-1.0, 0.0, 1.0, 0.0, -2.0]
    assert list(lift(PointSphere((1.0, 1.0)))) == [0.0, 1.0, 1.0, 1.0, -1.0]
    assert list(lift(PointAtInfinity(2))) == [0.0, 0.0, 0.0, 0.0, 1.0]


def test_constructors_validate():
    with pytest.raises(ValueError):
        Sphere((0, 0), 0.0)
    with pytest.raises(ValueError):
        Hyperplane((1.0, 1.0), 0.0)
    with pytest.raises(ValueError):
        Hyperplane((1.0, 0.0), 0.0, 2)
    h = Hyperplane.through((0, 2), 4)
    assert h.unit_normal == (0.0, 1.0) and h.offset == 2.0


def test_project_rejects_off_quadric():
    with pytest.raises(NotACycle):
        project([1.0, 0, 0, 0, 0])


def test_project_point_at_infinity():
    assert project([0, 0, 0, 0, 3.0]) == PointAtInfinity(2)


def test_reverse():
    s = Sphere((1, 2), 3)
    assert reverse(s).signed_radius == -3 and reverse(reverse(s)) == s
    h = Hyperplane((1.0, 0.0), 1.0)
    assert reverse(h).orientation == -1
    p = PointSphere((0, 0))
    assert reverse(p) == p


@given(spheres(3), spheres(3))
def test_sphere_form_is_half_tangential_defect(a, b):
    # (X|Y) = ((r1 - r2)^2 - |m1 - m2|^2) / 2 for sphere lifts
    d2 = np.sum((np.subtract(a.center, b.center)) ** 2)
    expected = 0.5 * ((a.signed_radius - b.signed_radius) ** 2 - d2)
    assert form_by_hand(lift(a).coords, lift(b).coords) == pytest.approx(expected, abs=1e-9)


@given(spheres(2), hyperplanes(2))
def test_sphere_plane_form_is_signed_distance_defect(s, h):
    signed = np.dot(h.unit_normal, s.center) - h.offset
    expected = signed - h.orientation * s.signed_radius
    assert form_by_hand(lift(s).coords, lift(h).coords) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_constructed_contacts_are_tangent(n, data):
    a = data.draw(spheres(n))
    r2 = data.draw(radius)
    u = np.asarray(data.draw(st.lists(st.floats(-1, 1), min_size=n, max_size=n)))
    assume(np.linalg.norm(u) > 0.1)
    u /= np.linalg.norm(u)
    b = Sphere(np.asarray(a.center) + abs(a.signed_radius - r2) * u, r2)
    assume(abs(a.signed_radius - r2) > 1e-3)
    assert euclidean_tangency_oracle(a, b, 1e-9)
    assert abs(tangency_residual(a, b)) < 1e-9


def test_tangency_orientation_matters():
    a, b = Sphere((0, 0), 1), Sphere((3, 0), 2)
    assert euclidean_tangency_oracle(a, reverse(b), 1e-9)  # external contact
    assert not euclidean_tangency_oracle(a, b, 1e-9)
    assert abs(tangency_residual(a, reverse(b))) < 1e-15
    h = Hyperplane((0.0, 1.0), -1.0)  # y = -1, normal up
    assert euclidean_tangency_oracle(Sphere((0, 0), 1), h, 1e-12)
    assert not euclidean_tangency_oracle(Sphere((0, 0), -1), h, 1e-12)


def test_parallel_hyperplanes_with_equal_oriented_normals_touch():
    a = Hyperplane((1.0, 0.0), 0.0)
    b = Hyperplane((1.0, 0.0), 5.0)
    c = Hyperplane((-1.0, 0.0), 5.0, -1)  # same oriented normal as b
    assert euclidean_tangency_oracle(a, b, 1e-12) and tangency_residual(a, b) == 0.0
    assert euclidean_tangency_oracle(a, c, 1e-12)
    assert not euclidean_tangency_oracle(a, reverse(b), 1e-12)


def test_point_at_infinity_touches_hyperplanes_only():
    inf = PointAtInfinity(2)
    assert euclidean_tangency_oracle(inf, Hyperplane((0.0, 1.0), 3.0), 1e-9)
    assert not euclidean_tangency_oracle(inf, Sphere((0, 0), 1), 1e-9)
    assert tangency_residual(inf, Hyperplane((0.0, 1.0), 3.0)) == 0.0


def test_point_on_sphere():
    assert euclidean_tangency_oracle(PointSphere((1.0, 0.0)), Sphere((0, 0), -1), 1e-12)
    assert abs(tangency_residual(PointSphere((1.0, 0.0)), Sphere((0, 0), 1))) < 1e-15


def test_homogeneous_center():
    hc = homogeneous_center(lift(Sphere((2.0, 3.0), 1.0)) * 4.0)
    assert np.allclose(hc.affine(), [2, 3])
    plane = homogeneous_center(lift(Hyperplane((1.0, 0.0), 2.0)))
    assert plane.at_infinity
    with pytest.raises(AtInfinity):
        plane.affine()
    with pytest.raises(DegenerateVector):
        homogeneous_center(lift(PointAtInfinity(2)))


def test_cycle_scale():
    assert cycle_scale(Sphere((3.0, 4.0), 0.5)) == 5.0
    assert cycle_scale(PointSphere((0.1, 0.1))) == 1.0
