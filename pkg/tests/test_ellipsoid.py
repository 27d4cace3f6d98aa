from math import pi

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complex_ellipsoids.ellipsoid import (
    AXES_VOLUME_EXPONENT,
    ComplexEllipsoid,
    ComplexLine,
    affine_image,
    from_axes,
    line_section,
    mice_bound_ellipsoid,
    midpoint_ellipsoid,
    midpoint_witness,
    polar,
    unit_ball,
    unit_ball_volume,
)
from complex_ellipsoids.linalg import random_unit_vectors, random_unitary
from strategies import complex_vector, dims, hpd_matrix, seeds


def random_ellipsoid(seed, n):
    return ComplexEllipsoid(complex_vector(seed, n), hpd_matrix(seed, n))


def test_construction_validates():
    with pytest.raises(ValueError, match="Hermitian"):
        ComplexEllipsoid([0, 0], [[1, 1], [0, 1]])
    with pytest.raises(ValueError, match="positive-definite"):
        ComplexEllipsoid([0, 0], np.diag([1.0, -1.0]))
    with pytest.raises(ValueError, match="dimension"):
        ComplexEllipsoid([0], np.eye(2))
    E = unit_ball(2)
    with pytest.raises(ValueError):
        E.shape[0, 0] = 3.0


def test_from_axes_examples():
    assert from_axes(np.ones(3)).isclose(unit_ball(3))
    np.testing.assert_allclose(from_axes([2.0, 0.5]).shape, np.diag([0.25, 4.0]))
    with pytest.raises(ValueError, match="unitary"):
        from_axes([1.0, 1.0], frame=[[1, 1], [0, 1]])


@given(seeds, dims)
def test_axes_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    lam = np.exp(rng.uniform(-1, 1, n))
    U = random_unitary(rng, n)
    E = from_axes(lam, U, complex_vector(seed, n))
    lam2, U2 = E.to_axes()
    np.testing.assert_allclose(np.sort(lam2), np.sort(lam), rtol=1e-10)
    assert from_axes(lam2, U2, E.center).isclose(E, 1e-9)


def test_contains_examples():
    B = unit_ball(2)
    assert B.contains([0, 0])
    assert not B.contains([1.001, 0], tol=1e-6)
    assert from_axes([2.0, 1.0]).contains([2, 0])


@given(seeds, dims)
def test_boundary_points_on_boundary(seed, n):
    E = random_ellipsoid(seed, n)
    U = random_unit_vectors(np.random.default_rng(seed), 10, n)
    np.testing.assert_allclose(E.form(E.boundary_points(U)), 1.0, atol=1e-10)
    assert E.contains(E.center)


def test_volume_examples():
    assert unit_ball(2).volume() == pytest.approx(pi ** 2 / 2)
    assert from_axes([2.0, 0.5]).volume() == pytest.approx(unit_ball(2).volume())
    U = random_unitary(np.random.default_rng(1), 2)
    assert affine_image(unit_ball(2), U).volume() == pytest.approx(unit_ball(2).volume())
    E = from_axes([3.0, 0.5])
    assert E.volume() / unit_ball_volume(2) == pytest.approx(E.axes_product() ** AXES_VOLUME_EXPONENT)


def test_volume_monte_carlo():
    rng = np.random.default_rng(2024)
    N = 1_000_000
    pts = rng.uniform(-1, 1, (N, 4))
    inside = unit_ball(2).contains(pts[:, :2] + 1j * pts[:, 2:])
    est = inside.mean() * 16.0
    assert est == pytest.approx(pi ** 2 / 2, rel=0.01)


def test_affine_image_examples():
    E = random_ellipsoid(3, 2)
    v = np.array([1 + 1j, -2.0])
    T = affine_image(E, np.eye(2), v)
    np.testing.assert_allclose(T.shape, E.shape)
    np.testing.assert_allclose(T.center, E.center + v)
    assert affine_image(unit_ball(2), np.diag([2.0, 0.5])).isclose(from_axes([2.0, 0.5]))
    with pytest.raises(ValueError, match="singular"):
        affine_image(E, np.diag([1.0, 0.0]))


@given(seeds, dims)
def test_affine_equivariance(seed, n):
    rng = np.random.default_rng(seed)
    E = random_ellipsoid(seed, n)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 2 * np.eye(n)
    t = complex_vector(seed + 1, n)
    F = affine_image(E, A, t)
    X = E.center + 1.5 * (rng.standard_normal((1000, n)) + 1j * rng.standard_normal((1000, n)))
    fE = E.form(X)
    fF = F.form(X @ A.T + t)
    clear = np.abs(fE - 1.0) > 1e-9
    np.testing.assert_array_equal((fE <= 1)[clear], (fF <= 1)[clear])
    ratio = F.volume() / E.volume()
    assert ratio == pytest.approx(abs(np.linalg.det(A)) ** 2, rel=1e-9)


def test_polar_examples():
    assert polar(unit_ball(3)).isclose(unit_ball(3))
    assert polar(from_axes([2.0, 0.5])).isclose(from_axes([0.5, 2.0]))
    with pytest.raises(ValueError, match="centred"):
        polar(unit_ball(2).translate([1, 0]))


@given(seeds, dims)
def test_double_polar(seed, n):
    E = ComplexEllipsoid(np.zeros(n), hpd_matrix(seed, n))
    assert polar(polar(E)).isclose(E, 1e-9)


def test_line_section_examples():
    B = unit_ball(2)
    d = line_section(B, ComplexLine([0, 0], [1, 0]))
    assert d.kind == "disk" and d.center == 0 and d.radius == pytest.approx(1.0)
    assert line_section(B, ComplexLine([0, 1], [1, 0])).kind == "point"
    assert line_section(B, ComplexLine([0, 2], [1, 0])).kind == "empty"
    with pytest.raises(ValueError, match="unit"):
        ComplexLine([0, 0], [2, 0])


@given(seeds, dims)
def test_line_section_through_center(seed, n):
    E = random_ellipsoid(seed, n)
    d = random_unit_vectors(np.random.default_rng(seed), 1, n)[0]
    sec = line_section(E, ComplexLine(E.center, d))
    assert sec.kind == "disk"
    assert abs(sec.center) <= 1e-12 * sec.radius
    # boundary of the disk lies on the boundary of E
    t = sec.center + sec.radius * np.exp(1j * np.linspace(0, 2 * pi, 7))
    np.testing.assert_allclose(E.form(ComplexLine(E.center, d).point(t)), 1.0, atol=1e-10)


@given(seeds, st.integers(1, 3))
def test_off_center_sections_are_exact_disks(seed, n):
    rng = np.random.default_rng(seed)
    E = random_ellipsoid(seed, n)
    base = E.boundary_points(random_unit_vectors(rng, 1, n) * 0.7)[0]
    L = ComplexLine.through(base, complex_vector(seed + 5, n))
    sec = line_section(E, L)
    assert sec.kind == "disk"
    t = sec.center + sec.radius * np.exp(1j * np.linspace(0, 2 * pi, 9))
    np.testing.assert_allclose(E.form(L.point(t)), 1.0, atol=1e-9)


def test_midpoint_examples():
    assert midpoint_ellipsoid(np.ones(2), np.zeros(2)).isclose(unit_ball(2))
    E3 = midpoint_ellipsoid([3.0], [1.0])
    assert E3.center[0] == pytest.approx(0.5)
    assert E3.to_axes()[0][0] == pytest.approx(2.0)
    lam = np.array([2.0, 0.5])
    assert midpoint_ellipsoid(lam, np.zeros(2)).volume() > unit_ball(2).volume()


@given(seeds, st.integers(1, 3))
def test_midpoint_witness(seed, n):
    rng = np.random.default_rng(seed)
    lam = np.exp(rng.uniform(-1, 1, n))
    c = complex_vector(seed, n)
    E3 = midpoint_ellipsoid(lam, c)
    X = E3.boundary_points(random_unit_vectors(rng, 50, n))
    for x in X:
        u, y = midpoint_witness(lam, c, x)
        assert np.linalg.norm(u) <= 1.0 + 1e-12
        np.testing.assert_allclose(y, lam * u + c, atol=1e-12)
        np.testing.assert_allclose((u + y) / 2, x, atol=1e-12)


def test_bound_ellipsoid_examples():
    assert mice_bound_ellipsoid(np.ones(2), np.zeros(2)).isclose(unit_ball(2))
    c = np.array([0.6, 0.2j])
    E4 = mice_bound_ellipsoid(np.ones(2), c)
    r = np.sqrt(1 - np.linalg.norm(c / 2) ** 2)
    assert E4.isclose(from_axes([r, r], center=c / 2))
    assert E4.volume() < unit_ball(2).volume()
    loose = mice_bound_ellipsoid(np.ones(2), c, tight=False)
    assert loose.isclose(unit_ball(2).translate(c / 2))


def test_bound_ellipsoid_contains_intersection():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 4))
        z = rng.normal(0, 0.5, n)
        beta = np.exp(z - z.mean())
        c = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        E4 = mice_bound_ellipsoid(beta, c)
        assert E4.axes_product() < 1.0
        assert mice_bound_ellipsoid(beta, c, tight=False).axes_product() < 1.0
        U = random_unit_vectors(rng, 4000, n) * rng.uniform(size=(4000, 1)) ** (1 / (2 * n))
        X = U * beta
        X = X[np.linalg.norm(X - c, axis=1) <= 1]
        assert X.shape[0] > 0
        assert E4.form(X).max() <= 1 + 1e-12
