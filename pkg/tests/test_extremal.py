import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complex_ellipsoids.ellipsoid import ComplexEllipsoid, from_axes, polar, unit_ball
from complex_ellipsoids.extremal import (
    ConvergenceError,
    FlatInputError,
    maie_symmetric,
    mice,
    mice_centered,
    slab_margins,
    symmetrize,
)
from complex_ellipsoids.linalg import random_unit_vectors, random_unitary, sqrt_hermitian
from frozen import CENTERED_SHAPES, GENERAL, five_points, six_points
from strategies import seeds


def cloud(seed, m, n):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


# ----------------------------------------------------------------- centred

def test_centered_basis_is_unit_ball():
    for n in (1, 2, 4):
        E, rep = mice_centered(np.eye(n))
        assert E.isclose(unit_ball(n), 1e-9)
        assert rep.converged and rep.support_points == tuple(range(n))


def test_centered_diagonal():
    E, _ = mice_centered(np.array([[2.0, 0.0], [0.0, 1.0]]))
    assert E.isclose(from_axes([2.0, 1.0]), 1e-9)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_centered_matches_projected_ascent(seed):
    E, rep = mice_centered(five_points(seed), eps=1e-7)
    assert rep.converged and rep.duality_gap <= 1e-7
    assert np.max(np.abs(E.shape - CENTERED_SHAPES[seed])) <= 1e-4
    # tighter solve agrees to the oracle's own accuracy
    E, _ = mice_centered(five_points(seed), eps=1e-11)
    np.testing.assert_allclose(E.shape, CENTERED_SHAPES[seed], atol=1e-7)


@given(seeds, st.integers(1, 3), st.integers(0, 10))
def test_centered_certificates(seed, n, extra):
    X = cloud(seed, n + 1 + extra, n)
    eps = 1e-7
    E, rep = mice_centered(X, eps=eps)
    assert rep.duality_gap <= eps
    assert E.form(X).max() <= 1 + 1e-12
    assert rep.max_trace_error <= 1e-9
    assert rep.min_logdet_step >= -1e-12
    assert abs(rep.weights.sum() - 1) <= 1e-12 and rep.weights.min() >= 0


def test_centered_errors():
    with pytest.raises(FlatInputError):
        mice_centered(np.array([[1.0, 1j], [2.0, 2j], [-1j, 1.0]]))
    with pytest.raises(FlatInputError):
        mice_centered(np.array([[1.0, 0.0]]))
    with pytest.raises(ConvergenceError) as info:
        mice_centered(cloud(0, 30, 3), max_iter=2)
    assert isinstance(info.value.ellipsoid, ComplexEllipsoid)
    assert not info.value.report.converged


# ----------------------------------------------------------------- general

def test_two_points_in_c1():
    E, _ = mice(np.array([[0.0], [1.0]]))
    assert E.center[0] == pytest.approx(0.5, abs=1e-7)
    assert E.to_axes()[0][0] == pytest.approx(0.5, rel=1e-7)


def test_translated_sphere():
    n = 2
    rng = np.random.default_rng(5)
    t = np.array([1 + 2j, -3.0])
    X = random_unit_vectors(rng, 10 * n, n) + t
    E, _ = mice(X)
    assert E.isclose(unit_ball(n).translate(t), 1e-4)


@pytest.mark.parametrize("seed", sorted(GENERAL))
def test_general_matches_convex_program(seed):
    c0, S0 = GENERAL[seed]
    E, _ = mice(six_points(seed), eps=1e-11)
    np.testing.assert_allclose(E.center, c0, atol=1e-6)
    np.testing.assert_allclose(E.shape, S0, atol=1e-6)
    E, _ = mice(six_points(seed))
    assert np.max(np.abs(E.shape - S0)) <= 1e-4


@given(seeds, st.integers(1, 3))
def test_general_containment(seed, n):
    X = cloud(seed, 3 * n + 2, n)
    eps = 1e-7
    E, rep = mice(X, eps=eps)
    assert E.form(X).max() <= 1 + 2 * eps


@given(seeds)
def test_permutation_and_phase(seed):
    X = cloud(seed, 9, 2)
    E, _ = mice(X, eps=1e-10)
    rng = np.random.default_rng(seed)
    P, _ = mice(X[rng.permutation(9)], eps=1e-10)
    assert P.isclose(E, 1e-6)
    xi = np.exp(1j * rng.uniform(0, 2 * np.pi))
    R, _ = mice(xi * X, eps=1e-10)
    np.testing.assert_allclose(R.center, xi * E.center, atol=1e-6)
    np.testing.assert_allclose(R.shape, E.shape, atol=1e-6 * np.linalg.norm(E.shape))


def test_symmetric_input_centered():
    X = symmetrize(cloud(8, 5, 2), 4)
    E, _ = mice(X)
    assert np.linalg.norm(E.center) <= 1e-6
    C, _ = mice_centered(X)
    assert E.isclose(C, 1e-5)


def test_general_flat():
    with pytest.raises(FlatInputError):
        mice(np.array([[1.0, 0.0], [0.0, 1.0]]))


# -------------------------------------------------------------- symmetrize

def test_symmetrize_examples():
    X = cloud(1, 3, 2)
    np.testing.assert_allclose(symmetrize(X, 2), np.vstack([X, -X]))
    Y = symmetrize(np.array([[1.0]]), 4)
    np.testing.assert_allclose(np.sort_complex(Y[:, 0]), np.sort_complex(np.array([1, 1j, -1, -1j])),
                               atol=1e-15)
    with pytest.raises(ValueError):
        symmetrize(X, 1)


def test_symmetrize_closed_under_root():
    X = cloud(2, 3, 2)
    Y = symmetrize(X, 6)
    Z = np.exp(2j * np.pi / 6) * Y
    d = np.abs(Z[:, None, :] - Y[None, :, :]).max(axis=2)
    assert d.min(axis=1).max() <= 1e-12


# ------------------------------------------------------------------- MaIE

def test_maie_coordinate_slabs():
    E = maie_symmetric([(np.array([1.0, 0.0]), 1.0), (np.array([0.0, 1.0]), 1.0)])
    assert E.isclose(unit_ball(2), 1e-8)


def test_maie_scaling():
    slabs = [(a, b) for a, b in zip(random_unit_vectors(np.random.default_rng(0), 5, 2),
                                     [1.0, 2.0, 1.5, 0.7, 1.2])]
    E = maie_symmetric(slabs)
    F = maie_symmetric([(a, 3.0 * b) for a, b in slabs])
    assert F.isclose(ComplexEllipsoid(np.zeros(2), E.shape / 9.0), 1e-7)


def _tangent_slabs(E0, rng, extra=4):
    root = sqrt_hermitian(E0.shape)
    mu, U = np.linalg.eigh(E0.shape)
    slabs = [(root @ U[:, k], 1.0) for k in range(E0.dim)]
    slabs += [(root @ (1j * U[:, k]), 1.0) for k in range(E0.dim)]
    for a in random_unit_vectors(rng, extra, E0.dim):
        slabs.append((root @ a, rng.uniform(1.2, 2.0)))
    return slabs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_maie_round_trip(n):
    rng = np.random.default_rng(n)
    E0 = from_axes(np.exp(rng.uniform(-0.7, 0.7, n)), random_unitary(rng, n))
    E = maie_symmetric(_tangent_slabs(E0, rng))
    assert E.isclose(E0, 1e-5)


def test_maie_inscribed_and_locally_maximal():
    rng = np.random.default_rng(4)
    n = 2
    slabs = [(a, b) for a, b in zip(random_unit_vectors(rng, 7, n), rng.uniform(0.5, 2, 7))]
    E = maie_symmetric(slabs)
    assert slab_margins(E, slabs).max() <= 1 + 1e-8
    det0 = np.linalg.det(E.shape).real
    for _ in range(50):
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        D = 1e-3 * np.linalg.norm(E.shape) * (G + G.conj().T) / np.linalg.norm(G + G.conj().T)
        F = ComplexEllipsoid(np.zeros(n), E.shape + D)
        if slab_margins(F, slabs).max() <= 1.0:
            # still inscribed: then it must not be larger
            assert np.linalg.det(F.shape).real >= det0 * (1 - 1e-12)


def test_maie_unitary_invariance():
    rng = np.random.default_rng(9)
    n = 2
    slabs = [(a, b) for a, b in zip(random_unit_vectors(rng, 6, n), rng.uniform(0.5, 2, 6))]
    E = maie_symmetric(slabs)
    # rescaled, phase-rotated normals describe the same body
    same = [(np.exp(1j * rng.uniform(0, 6)) * a * s, b * s)
            for (a, b), s in zip(slabs, rng.uniform(0.5, 2, 6))]
    assert maie_symmetric(same).isclose(E, 1e-6)
    U = random_unitary(rng, n)
    R = maie_symmetric([(U @ a, b) for a, b in slabs])
    expect = ComplexEllipsoid(np.zeros(n), U @ E.shape @ U.conj().T)
    assert R.isclose(expect, 1e-6)


def test_maie_is_polar_of_normals():
    rng = np.random.default_rng(10)
    A = random_unit_vectors(rng, 5, 2)
    E = maie_symmetric([(a, 1.0) for a in A])
    C, _ = mice_centered(A, eps=1e-10)
    assert E.isclose(polar(C), 1e-12)


def test_maie_errors():
    with pytest.raises(FlatInputError, match="unbounded"):
        maie_symmetric([(np.array([1.0, 0.0]), 1.0), (np.array([2.0, 0.0]), 1.0)])
    with pytest.raises(ValueError):
        maie_symmetric([(np.array([1.0]), 0.0)])
    with pytest.raises(ValueError):
        maie_symmetric([])
