"""Numerical decision procedures for disks, complex symmetry and ellipsoids.

A ``True`` verdict always means "no counterexample found at this resolution":
the number of sampled lines/directions/planes and the tolerance are recorded
in the returned :class:`CharacterizationReport`.
"""
from dataclasses import dataclass, field

import numpy as np

from .bodies import (
    MIN_SAMPLES,
    PlanarSampleSet,
    orthonormal_complement,
    polar_oracle,
    projection_oracle,
    random_interior_points,
    ray_boundary,
    section_oracle,
)
from .linalg import random_unit_vectors, random_unitary, to_real

DEFAULT_TOL = 1e-6
DEFAULT_SAMPLES = 32


@dataclass(frozen=True)
class DiskFit:
    center: complex
    radius: float
    max_rel_deviation: float


@dataclass
class CharacterizationReport:
    verdict: bool
    worst_witness: dict
    worst_deviation: float
    samples_used: int
    seed: int
    tol: float
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "witness": self.worst_witness,
            "worst_deviation": self.worst_deviation,
            "samples_used": self.samples_used,
            "seed": self.seed,
            "tol": self.tol,
            **self.details,
        }


# ------------------------------------------------------------------ disk fits

def _fit_circles(P):
    """Batched circle fit for an ``(L, m)`` array of planar points.

    Algebraic least squares on ``|p|^2 = 2 Re(conj(c) p) + k`` in centred,
    rescaled coordinates, then one Gauss-Newton step on the geometric
    residuals ``|p - c| - r``.
    """
    P = np.asarray(P, dtype=complex)
    mu = P.mean(axis=1, keepdims=True)
    Q = P - mu
    s = np.sqrt(np.mean(np.abs(Q) ** 2, axis=1, keepdims=True))
    if np.any(s == 0):
        raise ValueError("degenerate sample: all points coincide")
    Q = Q / s
    A = np.stack([2 * Q.real, 2 * Q.imag, np.ones(Q.shape, float)], axis=-1)
    b = np.abs(Q) ** 2
    AtA = np.einsum("lmi,lmj->lij", A, A)
    Atb = np.einsum("lmi,lm->li", A, b)
    sol = np.linalg.solve(AtA, Atb[..., None])[..., 0]
    c = sol[:, 0] + 1j * sol[:, 1]

    # one Gauss-Newton step on (c, r)
    D = Q - c[:, None]
    dist = np.abs(D)
    r = dist.mean(axis=1)
    res = dist - r[:, None]
    safe = np.where(dist > 0, dist, 1.0)
    J = np.stack([-D.real / safe, -D.imag / safe, -np.ones(D.shape)], axis=-1)
    JtJ = np.einsum("lmi,lmj->lij", J, J)
    Jtr = np.einsum("lmi,lm->li", J, res)
    delta = -np.linalg.solve(JtJ, Jtr[..., None])[..., 0]
    c = c + delta[:, 0] + 1j * delta[:, 1]

    dist = np.abs(Q - c[:, None])
    r = dist.mean(axis=1)
    dev = np.max(np.abs(dist - r[:, None]), axis=1) / np.where(r > 0, r, np.inf)
    scale = s[:, 0]
    return mu[:, 0] + c * scale, r * scale, dev


def fit_disk(samples):
    """Fit a circle to planar boundary samples (at least 8)."""
    pts = samples.points if isinstance(samples, PlanarSampleSet) else np.asarray(samples, complex)
    if pts.size < MIN_SAMPLES:
        raise ValueError("need at least %d samples, got %d" % (MIN_SAMPLES, pts.size))
    c, r, dev = _fit_circles(pts[None, :])
    return DiskFit(complex(c[0]), float(r[0]), float(dev[0]))


def _circle(m):
    return np.exp(2j * np.pi * np.arange(m) / m)


def _line_sections(body, bases, dirs, m):
    """Boundary samples of many line sections at once; bases must be interior."""
    circ = _circle(m)
    reach = 2.0 * body.outer_radius + 1.0
    r = ray_boundary(body, bases[:, None, :], circ[None, :, None] * dirs[:, None, :], reach)
    return r * circ[None, :]


def _witness_line(base, direction):
    return {"base": np.asarray(base).tolist(), "direction": np.asarray(direction).tolist()}


# -------------------------------------------------------------- bombon check

def bombon_check(body, num_lines=1000, tol=DEFAULT_TOL, seed=0, m=DEFAULT_SAMPLES):
    """Test that every sampled complex line section of ``body`` is a disk.

    Lines pass through random interior points in random unit directions.
    """
    rng = np.random.default_rng(seed)
    bases = random_interior_points(body, rng, num_lines)
    dirs = random_unit_vectors(rng, num_lines, body.dim)
    T = _line_sections(body, bases, dirs, m)
    _, _, dev = _fit_circles(T)
    worst = int(np.argmax(dev))
    return CharacterizationReport(
        verdict=bool(dev[worst] <= tol),
        worst_witness=_witness_line(bases[worst], dirs[worst]),
        worst_deviation=float(dev[worst]),
        samples_used=num_lines * m,
        seed=seed,
        tol=tol,
        details={"kind": "bombon", "lines": num_lines},
    )


# ----------------------------------------------------------- symmetry centre

def _projection_fits(body, dirs, m):
    circ = _circle(m)
    U = circ[None, :, None] * dirs[:, None, :]
    X = body.support_point(U.reshape(-1, body.dim)).reshape(U.shape)
    W = np.einsum("kmi,ki->km", X, dirs.conj())
    return _fit_circles(W)


def symmetry_center(body, num_dirs=16, tol=DEFAULT_TOL, seed=0, m=DEFAULT_SAMPLES):
    """Look for a centre of complex symmetry from projections onto lines.

    Every projection of a symmetric body onto a complex line is a disk
    centred at the projection of the centre. Returns ``(center or None,
    report)``; the centre solves ``d_j^H x0 = c_j`` in least squares and is
    accepted when the residual is at most ``tol * inradius``.
    """
    rng = np.random.default_rng(seed)
    n = body.dim
    dirs = random_unit_vectors(rng, max(num_dirs, n), n)
    centers, radii, dev = _projection_fits(body, dirs, m)
    worst = int(np.argmax(dev))
    report = CharacterizationReport(
        verdict=False,
        worst_witness={"direction": dirs[worst].tolist()},
        worst_deviation=float(dev[worst]),
        samples_used=dirs.shape[0] * m,
        seed=seed,
        tol=tol,
        details={"kind": "symmetry"},
    )
    if dev[worst] > tol:
        report.details["reason"] = "non-circular projection"
        return None, report
    x0, *_ = np.linalg.lstsq(dirs.conj(), centers, rcond=None)
    resid = np.abs(dirs.conj() @ x0 - centers)
    scale = body.inradius
    report.details["center_residual"] = float(resid.max())
    report.details["center"] = x0.tolist()
    if resid.max() > tol * scale:
        report.worst_witness = {"direction": dirs[int(np.argmax(resid))].tolist()}
        report.worst_deviation = max(report.worst_deviation, float(resid.max() / scale))
        report.details["reason"] = "projection centres are inconsistent"
        return None, report
    report.verdict = True
    return x0, report


# ------------------------------------------------------------ section sweeps

def _random_hyperplane(rng, n):
    a = random_unit_vectors(rng, 1, n)[0]
    return a, orthonormal_complement(a[:, None])


def sections_symmetric_sweep(body, num_hyperplanes=20, tol=DEFAULT_TOL, seed=0,
                             through=None, num_dirs=8, m=DEFAULT_SAMPLES):
    """Check that random complex hyperplane sections are complex symmetric.

    Hyperplanes pass through random interior points, or all through
    ``through`` when given. The report lists each section's recovered centre.
    """
    n = body.dim
    if n < 2:
        raise ValueError("hyperplane sections need n >= 2")
    rng = np.random.default_rng(seed)
    if through is None:
        points = random_interior_points(body, rng, num_hyperplanes, depth=0.8)
    else:
        p0 = np.asarray(through, dtype=complex)
        if not body.contains(p0):
            raise ValueError("hyperplane point is outside the body")
        points = np.repeat(p0[None, :], num_hyperplanes, axis=0)
    worst_dev, worst_wit, verdict = 0.0, {}, True
    centers = []
    used = 0
    for i in range(num_hyperplanes):
        a, V = _random_hyperplane(rng, n)
        sub = section_oracle(body, points[i], V)
        c, rep = symmetry_center(sub, num_dirs=num_dirs, tol=tol, seed=seed + i, m=m)
        used += rep.samples_used
        centers.append(None if c is None else (points[i] + V @ c).tolist())
        if rep.worst_deviation >= worst_dev:
            worst_dev = rep.worst_deviation
            worst_wit = {"point": points[i].tolist(), "normal": a.tolist()}
        verdict &= c is not None
    return CharacterizationReport(
        verdict=bool(verdict),
        worst_witness=worst_wit,
        worst_deviation=float(worst_dev),
        samples_used=used,
        seed=seed,
        tol=tol,
        details={"kind": "symmetric-sections", "section_centers": centers,
                 "through": None if through is None else np.asarray(through).tolist()},
    )


def disk_sections_through_point(body, p0, num_lines=200, tol=DEFAULT_TOL, seed=0,
                                m=DEFAULT_SAMPLES):
    """Sections by lines through ``p0`` and by parallel translates of them.

    For each sampled direction the line through ``p0`` and one parallel line
    through a random interior point are tested for being disks. Disks through
    ``p0`` alone hold for every symmetric body centred there; the parallel
    lines are what separates ellipsoids from other bodies.
    """
    p0 = np.asarray(p0, dtype=complex)
    if not body.contains(p0):
        raise ValueError("p0 is not inside the body")
    rng = np.random.default_rng(seed)
    dirs = random_unit_vectors(rng, num_lines, body.dim)
    others = random_interior_points(body, rng, num_lines)
    # a point interior to the segment [p0, other] stays interior to the body
    bases = np.concatenate([np.repeat(p0[None, :], num_lines, axis=0), others])
    T = _line_sections(body, bases, np.concatenate([dirs, dirs]), m)
    _, _, dev = _fit_circles(T)
    worst = int(np.argmax(dev))
    return CharacterizationReport(
        verdict=bool(dev[worst] <= tol),
        worst_witness=_witness_line(bases[worst], dirs[worst % num_lines]),
        worst_deviation=float(dev[worst]),
        samples_used=2 * num_lines * m,
        seed=seed,
        tol=tol,
        details={"kind": "sections-through-point", "p0": p0.tolist(),
                 "through_p0_worst": float(dev[:num_lines].max()),
                 "parallel_worst": float(dev[num_lines:].max())},
    )


def projections_ellipsoid_sweep(body, k=2, num_planes=10, tol=DEFAULT_TOL, seed=0,
                                num_dirs=16, num_lines=100, m=DEFAULT_SAMPLES):
    """Check that projections onto random complex ``k``-subspaces are ellipsoids.

    Each projection ``Q`` (support oracle only) is first tested for symmetry.
    With centre ``c``, ``Q`` is an ellipsoid iff its polar body
    ``{v : h_Q(v) - Re(v^H c) <= 1}`` is; that polar has a cheap membership
    oracle, so its line sections through 0 and parallel lines are tested.
    """
    n = body.dim
    if not 2 <= k < n:
        raise ValueError("need 2 <= k < n (got k=%d, n=%d)" % (k, n))
    rng = np.random.default_rng(seed)
    worst_dev, worst_wit, verdict, used = 0.0, {}, True, 0
    for i in range(num_planes):
        V = random_unitary(rng, n)[:, :k]
        Q = projection_oracle(body, V)
        c, rep = symmetry_center(Q, num_dirs=num_dirs, tol=tol, seed=seed + i, m=m)
        used += rep.samples_used
        dev = rep.worst_deviation
        if c is not None:
            P = polar_oracle(Q, c)
            prep = disk_sections_through_point(P, np.zeros(k, complex), num_lines=num_lines,
                                               tol=tol, seed=seed + i, m=m)
            used += prep.samples_used
            dev = max(dev, prep.worst_deviation)
            ok = prep.verdict
        else:
            ok = False
        if dev >= worst_dev:
            worst_dev, worst_wit = dev, {"frame": V.tolist()}
        verdict &= ok
    return CharacterizationReport(
        verdict=bool(verdict),
        worst_witness=worst_wit,
        worst_deviation=float(worst_dev),
        samples_used=used,
        seed=seed,
        tol=tol,
        details={"kind": "projections", "k": k, "planes": num_planes},
    )


# ---------------------------------------------------------------- homothety

@dataclass(frozen=True)
class Homothety:
    ratio: float
    translation: np.ndarray
    residual: float

    @property
    def is_translate(self):
        return abs(self.ratio - 1.0) <= 1e-6


def homothety_detect(directions, support_a, support_b, tol=DEFAULT_TOL):
    """Find ``r > 0, t`` with ``h_A(u) = r h_B(u) + Re(u^H t)`` on the given directions.

    Returns ``None`` when no positive homothety fits within ``tol`` relative to
    the size of ``h_A``.
    """
    U = np.asarray(directions, dtype=complex)
    ha = np.asarray(support_a, dtype=float)
    hb = np.asarray(support_b, dtype=float)
    n = U.shape[1]
    if U.shape[0] < 4 * n:
        raise ValueError("need at least 4n directions")
    A = np.column_stack([hb, to_real(U)])
    sol, *_ = np.linalg.lstsq(A, ha, rcond=None)
    r = sol[0]
    if r <= 0:
        return None
    resid = float(np.max(np.abs(A @ sol - ha)))
    if resid > tol * max(np.max(np.abs(ha)), 1e-300):
        return None
    t = sol[1:n + 1] + 1j * sol[n + 1:]
    return Homothety(float(r), t, resid)
