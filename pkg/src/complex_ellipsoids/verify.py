"""Seeded suite of geometric checks, summarised as a scoreboard.

Each check returns ``(passed, deviation)``, where ``deviation`` is the
quantity compared against the check's threshold. A check may be run in fault
mode, which flips one sign in its computation; the scoreboard must then show
that check failing.
"""
import time

import numpy as np

from . import bodies
from .characterize import (
    bombon_check,
    disk_sections_through_point,
    homothety_detect,
    projections_ellipsoid_sweep,
    sections_symmetric_sweep,
    symmetry_center,
)
from .ellipsoid import (
    ComplexEllipsoid,
    from_axes,
    midpoint_ellipsoid,
    midpoint_witness,
    mice_bound_ellipsoid,
    unit_ball,
)
from .extremal import maie_symmetric, mice, slab_margins, symmetrize
from .linalg import (
    is_complex_structured,
    lemma_affine_identity,
    random_unit_vectors,
    random_unitary,
    realify,
    sqrt_hermitian,
)

DEFAULT_SEED = 20261017


def _sign(fault):
    return -1.0 if fault else 1.0


def check_rotation_translate(rng, fault):
    """``xi K`` is a translate of ``K`` for symmetric ``K``, and not otherwise."""
    n = 2
    U = random_unit_vectors(rng, 8 * n, n)
    t = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    symmetric = [
        bodies.ellipsoid_oracle(bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n)),
        bodies.transformed_oracle(bodies.lp_ball_oracle(4, n), shift=t),
    ]
    dev = 0.0
    ok = True
    for K in symmetric:
        xi = np.exp(1j * rng.uniform(0, 2 * np.pi))
        hx = K.support(np.conj(xi) * U)  # support of xi K
        h = _sign(fault) * K.support(U)
        H = homothety_detect(U, hx, h, tol=1e-9)
        if H is None or not H.is_translate:
            ok = False
            dev = max(dev, np.inf if H is None else abs(H.ratio - 1))
        else:
            dev = max(dev, abs(H.ratio - 1))
    # a random polytope is not a translate of its rotation
    P = rng.standard_normal((6, n)) + 1j * rng.standard_normal((6, n))
    K = bodies.hull_oracle(P)
    H = homothety_detect(U, K.support(1j * U), K.support(U), tol=1e-9)
    ok &= H is None
    return ok, dev


def check_homothety(rng, fault):
    """Positive homothety between support tables, and its absence."""
    n = 2
    U = random_unit_vectors(rng, 8 * n, n)
    A = bodies.ellipsoid_oracle(unit_ball(n))
    c = np.zeros(n, complex)
    c[0] = 3.0
    B = bodies.transformed_oracle(A, 2.0, c)
    H = homothety_detect(U, A.support(U), B.support(U), tol=1e-9)
    expected = np.zeros(n, complex)
    expected[0] = -1.5 * _sign(fault)
    if H is None:
        return False, np.inf
    dev = max(abs(H.ratio - 0.5), float(np.max(np.abs(H.translation - expected))))
    E1 = bodies.ellipsoid_oracle(bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n))
    E2 = bodies.ellipsoid_oracle(bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n))
    none_ok = homothety_detect(U, E1.support(U), E2.support(U), tol=1e-6) is None
    return bool(dev <= 1e-9 and none_ok), dev


def check_projection_center(rng, fault):
    """Centre recovery from projections onto lines."""
    worst = 0.0
    for n in (1, 2, 3):
        E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n)
        K = bodies.ellipsoid_oracle(E)
        c, _ = symmetry_center(K, seed=int(rng.integers(2**31)))
        if c is None:
            return False, np.inf
        worst = max(worst, np.linalg.norm(c - _sign(fault) * E.center) / K.outer_radius)
    return bool(worst <= 1e-7), float(worst)


def check_projection_symmetry(rng, fault):
    """Bodies whose 2-plane projections are symmetric are symmetric."""
    n = 3
    t = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    K = bodies.transformed_oracle(bodies.lp_ball_oracle(4, n), shift=t)
    worst = 0.0
    for _ in range(3):
        V = random_unitary(rng, n)[:, :2]
        c, rep = symmetry_center(bodies.projection_oracle(K, V), seed=int(rng.integers(2**31)))
        if c is None:
            return False, rep.worst_deviation
        worst = max(worst, float(np.linalg.norm(c - V.conj().T @ t)))
    c, _ = symmetry_center(K, seed=int(rng.integers(2**31)))
    if c is None:
        return False, np.inf
    worst = max(worst, float(np.linalg.norm(c - _sign(fault) * t)))
    return bool(worst <= 1e-6), worst


def check_real_ellipsoid_structure(rng, fault):
    """A real ellipsoid is complex symmetric exactly when its shape commutes with J."""
    n = 2
    R_bad = bodies.gen_non_j_invariant(int(rng.integers(2**31)), n)
    c_bad, rep_bad = symmetry_center(R_bad, seed=1)
    E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n)
    R = realify(E.shape)
    if fault:
        R = R.copy()
        R[:n, n:] *= -1.0
        R = R @ R.T
    good = bodies.real_ellipsoid_oracle(R, E.center)
    c_good, rep_good = symmetry_center(good, seed=1)
    ok = (c_bad is None and c_good is not None and is_complex_structured(R)
          and bombon_check(good, num_lines=200, seed=2).verdict)
    return bool(ok), rep_good.worst_deviation


def check_volume_inequality(rng, fault):
    """det((lam + 1)/2) > 1 when det(lam) = 1 and lam is not all ones."""
    m = 10_000
    n = rng.integers(1, 6, size=m)
    margins = np.empty(m)
    for i in range(m):
        z = rng.normal(0.0, 1.0, n[i] + 1)
        z -= z.mean()
        lam = np.exp(z)
        margins[i] = _sign(fault) * (np.prod((lam + 1) / 2) - 1.0)
    return bool(margins.min() > 0), float(margins.min())


def check_affine_identity(rng, fault):
    """Completing the square for ``lam |x|^2 + |x - c|^2``."""
    m = 10_000
    lam = rng.uniform(-10, 10, m)
    lam[np.abs(lam + 1) < 1e-3] += 0.5
    x = (rng.standard_normal(m) + 1j * rng.standard_normal(m))
    c = (rng.standard_normal(m) + 1j * rng.standard_normal(m))
    _, rhs = lemma_affine_identity(lam, x, _sign(fault) * c)
    # left side evaluated independently of the library
    lhs = lam * np.abs(x) ** 2 + np.abs(x - c) ** 2
    scale = np.maximum(1.0, np.abs(lam) * np.abs(x) ** 2 + np.abs(x - c) ** 2)
    dev = float(np.max(np.abs(lhs - rhs) / scale))
    return bool(dev <= 1e-12), dev


def check_midpoint_witness(rng, fault):
    """Points of the midpoint ellipsoid split as a ball point plus an ``El(lam) + c`` point."""
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        lam = np.exp(rng.uniform(-1, 1, n))
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        E3 = midpoint_ellipsoid(lam, c)
        u0 = random_unit_vectors(rng, 1, n)[0] * rng.uniform() ** (1 / (2 * n))
        x = E3.boundary_points(u0[None])[0]
        u, y = midpoint_witness(lam, _sign(fault) * c, x)
        worst = max(worst,
                    np.linalg.norm(u) - 1.0,
                    np.linalg.norm(y - (lam * u + c)),
                    np.linalg.norm((u + y) / 2 - x))
    return bool(worst <= 1e-12), float(worst)


def check_bound_ellipsoid(rng, fault):
    """Bound ellipsoid is smaller than the unit ball and contains the intersection.

    Covers both cases: ``det(lam) = 1`` with ``lam`` not all ones, and
    ``lam = 1`` with a nonzero offset ``c``.
    """
    cases = []
    for _ in range(20):
        n = int(rng.integers(2, 4))
        z = rng.normal(0, 0.5, n)
        c = 0.2 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        cases.append((np.exp(z - z.mean()), c))
        n = int(rng.integers(1, 4))
        c = 0.5 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        cases.append((np.ones(n), c))
    worst_ratio = 0.0
    worst_form = 0.0
    for beta, c in cases:
        E4 = mice_bound_ellipsoid(beta, c)
        worst_ratio = max(worst_ratio, E4.axes_product())
        # sample El(beta) and keep the points of B + c
        n = beta.size
        pts = random_unit_vectors(rng, 400, n) * rng.uniform(size=(400, 1)) ** (1 / (2 * n)) * beta
        inside = np.linalg.norm(pts - c, axis=1) <= 1.0
        if inside.any():
            probe = ComplexEllipsoid(_sign(fault) * E4.center, E4.shape)
            worst_form = max(worst_form, float(probe.form(pts[inside]).max()))
    ok = worst_ratio < 1.0 and worst_form <= 1.0 + 1e-12
    return bool(ok), float(max(worst_ratio, worst_form))


def check_mice_uniqueness(rng, fault):
    """Shuffled and re-weighted runs agree."""
    worst = 0.0
    for _ in range(3):
        n = int(rng.integers(2, 4))
        X = rng.standard_normal((15, n)) + 1j * rng.standard_normal((15, n))
        E0, _ = mice(X, eps=1e-10)
        for k in range(4):
            perm = rng.permutation(len(X))
            Y = X[perm].conj() if (fault and k == 0) else X[perm]
            E, _ = mice(Y, eps=1e-10, initial_weights=rng.uniform(0.1, 1.0, len(X)))
            s = np.linalg.norm(E0.shape)
            worst = max(worst, np.linalg.norm(E.shape - E0.shape) / s,
                        np.linalg.norm(E.center - E0.center) / max(1.0, np.linalg.norm(E0.center)))
    return bool(worst <= 1e-6), float(worst)


def check_symmetric_mice_center(rng, fault):
    """Circle-invariant point sets have a centred minimal ellipsoid."""
    worst = 0.0
    for _ in range(3):
        n = int(rng.integers(1, 4))
        P = rng.standard_normal((4 + n, n)) + 1j * rng.standard_normal((4 + n, n))
        X = symmetrize(P, 64)
        if fault:
            X = np.vstack([X, -2.0 * X[:1]])
        E, _ = mice(X)
        worst = max(worst, float(np.linalg.norm(E.center)))
    return bool(worst <= 1e-4), worst


def check_maie_roundtrip(rng, fault):
    """Slabs tangent to a known ellipsoid give it back; feasible perturbations lose volume."""
    n = 2
    E0 = from_axes(np.exp(rng.uniform(-0.5, 0.5, n)), random_unitary(rng, n))
    root = sqrt_hermitian(E0.shape)
    W = random_unitary(rng, n)
    slabs = [(root @ W[:, k], 1.0) for k in range(n)]
    for _ in range(6):
        a = root @ random_unit_vectors(rng, 1, n)[0]
        slabs.append((a, rng.uniform(1.5, 3.0)))
    E = maie_symmetric(slabs)
    target = E0.shape.conj() if fault else E0.shape
    dev = float(np.linalg.norm(E.shape - target) / np.linalg.norm(target))
    vol = E.axes_product()
    gain = 0.0
    for _ in range(50):
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        S = E.shape + 0.05 * (G + G.conj().T)
        S = 0.5 * (S + S.conj().T)
        if np.linalg.eigvalsh(S).min() <= 0:
            continue
        F = ComplexEllipsoid(np.zeros(n, complex), S)
        s = slab_margins(F, slabs).max()
        F = ComplexEllipsoid(np.zeros(n, complex), S * s ** 2)
        gain = max(gain, F.axes_product() / vol - 1.0)
    return bool(dev <= 1e-5 and gain <= 1e-9), max(dev, gain)


def check_bombon_positive(rng, fault):
    """Random ellipsoids pass the all-lines disk test."""
    worst = 0.0
    for _ in range(5):
        n = int(rng.integers(1, 4))
        E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), n)
        K = bodies.ellipsoid_oracle(E)
        if fault:
            K = bodies.gen_perturbed_ellipsoid(int(rng.integers(2**31)), max(n, 2), 0.05)
        rep = bombon_check(K, num_lines=1000, seed=int(rng.integers(2**31)))
        worst = max(worst, rep.worst_deviation)
    return bool(worst <= 1e-6), float(worst)


def check_bombon_negative(rng, fault):
    """Non-ellipsoids fail the all-lines disk test."""
    p = 2.0 if fault else 4.0
    negatives = [bodies.lp_ball_oracle(p, 2),
                 bodies.gen_perturbed_ellipsoid(int(rng.integers(2**31)), 2, 0.05)]
    devs = [bombon_check(K, num_lines=1000, seed=int(rng.integers(2**31))).worst_deviation
            for K in negatives]
    return bool(min(devs) > 1e-6), float(min(devs))


def check_sections_through_point(rng, fault):
    """Disk sections through an off-centre point: true for ellipsoids only."""
    E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), 2)
    K = bodies.ellipsoid_oracle(E)
    p0 = E.center + 0.3 * E.to_axes()[0].min() * random_unit_vectors(rng, 1, 2)[0]
    pos = disk_sections_through_point(K, p0, seed=int(rng.integers(2**31)))
    neg = disk_sections_through_point(bodies.lp_ball_oracle(2.0 if fault else 4.0, 2),
                                      np.zeros(2), seed=int(rng.integers(2**31)))
    return bool(pos.verdict and not neg.verdict), pos.worst_deviation


def check_projections_ellipsoid(rng, fault):
    """Projections onto 2-planes: ellipsoids for ellipsoids, not for a polydisk."""
    E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), 3)
    pos = projections_ellipsoid_sweep(bodies.ellipsoid_oracle(E), num_planes=4,
                                      seed=int(rng.integers(2**31)))
    neg_body = (bodies.ellipsoid_oracle(unit_ball(3)) if fault
                else bodies.polydisk_oracle([1.0, 1.0, 1.0]))
    neg = projections_ellipsoid_sweep(neg_body, num_planes=4, seed=int(rng.integers(2**31)))
    return bool(pos.verdict and not neg.verdict), pos.worst_deviation


def check_sections_symmetric(rng, fault):
    """Hyperplane sections are symmetric for ellipsoids, not for perturbed bodies."""
    E = bodies.gen_random_ellipsoid(int(rng.integers(2**31)), 3)
    pos = sections_symmetric_sweep(bodies.ellipsoid_oracle(E), num_hyperplanes=8,
                                   seed=int(rng.integers(2**31)))
    eps = 0.0 if fault else 0.1
    neg = sections_symmetric_sweep(bodies.gen_perturbed_ellipsoid(int(rng.integers(2**31)), 3, eps),
                                   num_hyperplanes=8, seed=int(rng.integers(2**31)))
    return bool(pos.verdict and not neg.verdict), pos.worst_deviation


CHECKS = {
    "rotation_translate": check_rotation_translate,
    "support_homothety": check_homothety,
    "projection_center": check_projection_center,
    "projection_symmetry": check_projection_symmetry,
    "real_ellipsoid_structure": check_real_ellipsoid_structure,
    "volume_inequality": check_volume_inequality,
    "affine_identity": check_affine_identity,
    "midpoint_witness": check_midpoint_witness,
    "bound_ellipsoid": check_bound_ellipsoid,
    "mice_uniqueness": check_mice_uniqueness,
    "symmetric_mice_center": check_symmetric_mice_center,
    "maie_roundtrip": check_maie_roundtrip,
    "bombon_positive": check_bombon_positive,
    "bombon_negative": check_bombon_negative,
    "sections_through_point": check_sections_through_point,
    "projections_ellipsoid": check_projections_ellipsoid,
    "sections_symmetric": check_sections_symmetric,
}


def run_suite(seed=DEFAULT_SEED, inject_fault=None, timing=True, only=None):
    """Run every check with an independent seeded stream.

    Returns a list of records ``{"name", "passed", "deviation", "runtime_s"}``
    in a fixed order. ``inject_fault`` names one check to run in fault mode.
    """
    if inject_fault is not None and inject_fault not in CHECKS:
        raise ValueError("unknown check %r" % inject_fault)
    records = []
    for i, (name, fn) in enumerate(CHECKS.items()):
        if only is not None and name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        t0 = time.perf_counter()
        passed, dev = fn(rng, name == inject_fault)
        rec = {"name": name, "passed": bool(passed), "deviation": float(dev)}
        if timing:
            rec["runtime_s"] = round(time.perf_counter() - t0, 3)
        records.append(rec)
    return records
