"""Convex bodies in C^n given by membership and support oracles.

Directions for support queries are complex vectors ``u`` standing for the real
vector ``(Re u, Im u)`` of ``R^{2n}``; the real inner product is
``Re(u^H x)``. All oracle callables are vectorised over leading axes.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
from scipy.spatial import ConvexHull

from .ellipsoid import ComplexEllipsoid, ComplexLine
from .linalg import (
    from_real,
    inv_hermitian,
    is_complex_structured,
    random_unit_vectors,
    sqrt_hermitian,
    to_real,
)

BISECTION_TOL = 1e-10
BISECTION_MAX_ITER = 60
MIN_SAMPLES = 8


@dataclass(frozen=True, eq=False)
class BodyOracle:
    """A convex body with nonempty interior.

    ``membership(x) -> bool array`` and ``support_point(u) -> maximiser of
    Re(u^H x)`` act on arrays of shape ``(..., dim)``. Either may be ``None``
    for derived bodies where it is not available.
    """

    dim: int
    membership: Optional[Callable]
    support_point: Optional[Callable]
    outer_radius: float
    inner_radius: Optional[float] = None
    name: str = "body"
    interior_hint: Optional[np.ndarray] = field(default=None, repr=False)

    def contains(self, x):
        if self.membership is None:
            raise NotImplementedError("%s has no membership oracle" % self.name)
        return self.membership(np.asarray(x, dtype=complex))

    def support(self, u):
        """Support function ``h(u) = max_{x in K} Re(u^H x)``."""
        if self.support_point is None:
            raise NotImplementedError("%s has no support oracle" % self.name)
        u = np.asarray(u, dtype=complex)
        return np.einsum("...i,...i->...", u.conj(), self.support_point(u)).real

    @cached_property
    def interior_point(self):
        """Average of the touch points in ``8 * dim`` fixed directions."""
        if self.interior_hint is not None:
            return np.asarray(self.interior_hint, dtype=complex)
        n = self.dim
        E = np.eye(n, dtype=complex)
        phases = np.exp(1j * np.pi / 4 * np.arange(8))
        U = (phases[:, None, None] * E[None]).reshape(-1, n)
        return self.support_point(U).mean(axis=0)

    @cached_property
    def inradius(self):
        if self.inner_radius is not None:
            return float(self.inner_radius)
        rng = np.random.default_rng(0)
        U = random_unit_vectors(rng, 16 * self.dim, self.dim)
        x0 = self.interior_point
        return float(np.min(self.support(U) - (U.conj() @ x0).real))


@dataclass(frozen=True)
class PlanarSampleSet:
    """Boundary points of a planar convex set in the coordinate of a complex line."""

    points: np.ndarray
    origin: complex = 0j

    @property
    def empty(self):
        return self.points.size == 0

    def __len__(self):
        return self.points.size


EMPTY_SAMPLES = PlanarSampleSet(np.zeros(0, dtype=complex))


# ---------------------------------------------------------------- constructors

def ellipsoid_oracle(E):
    Sinv = inv_hermitian(E.shape)
    c = E.center

    def support_point(u):
        v = u @ Sinv.T
        norm = np.sqrt(np.maximum(np.einsum("...i,...i->...", u.conj(), v).real, 1e-300))
        return c + v / norm[..., None]

    axes = 1.0 / np.sqrt(np.linalg.eigvalsh(E.shape))
    return BodyOracle(
        dim=E.dim,
        membership=lambda x: E.contains(x),
        support_point=support_point,
        outer_radius=float(np.linalg.norm(c) + axes.max()),
        inner_radius=float(axes.min()),
        name="ellipsoid",
        interior_hint=c,
    )


def hull_oracle(points, tol=1e-12):
    """Convex hull of a finite point set (must have interior in ``R^{2n}``)."""
    P = np.asarray(points, dtype=complex)
    if P.ndim != 2 or P.shape[0] < 2:
        raise ValueError("expected an (m, n) array of at least two points")
    R = to_real(P)
    centered = R - R.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv.size < R.shape[1] or sv[-1] <= 1e-9:
        raise ValueError("points are flat: their hull has empty interior")
    hull = ConvexHull(R)
    normals = hull.equations[:, :-1]
    offsets = hull.equations[:, -1]
    scale = np.max(np.linalg.norm(R, axis=1))
    x0 = P.mean(axis=0)

    def membership(x):
        s = to_real(x)
        return np.all(s @ normals.T + offsets <= tol * max(scale, 1.0), axis=-1)

    def support_point(u):
        vals = (np.asarray(u).conj() @ P.T).real
        return P[np.argmax(vals, axis=-1)]

    inner = float(np.min(-(normals @ to_real(x0) + offsets)))
    return BodyOracle(P.shape[1], membership, support_point, float(scale), inner,
                      "hull", interior_hint=x0)


def lp_ball_oracle(p, n):
    """``{z : sum |z_i|^p <= 1}``; ``p = inf`` gives the polydisk."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError("p must be at least 1")
    if n < 1:
        raise ValueError("n must be positive")

    def norm_p(x):
        a = np.abs(x)
        top = a.max(axis=-1)
        if np.isinf(p):
            return top
        safe = np.where(top > 0, top, 1.0)
        return top * np.sum((a / safe[..., None]) ** p, axis=-1) ** (1.0 / p)

    def support_point(u):
        u = np.asarray(u, dtype=complex)
        a = np.abs(u)
        phase = np.where(a > 0, u / np.where(a > 0, a, 1.0), 1.0)
        top = a.max(axis=-1, keepdims=True)
        if p == 1.0:
            mag = (a == top).astype(float)
            mag /= mag.sum(axis=-1, keepdims=True)
        elif np.isinf(p):
            mag = np.ones_like(a)
        else:
            q = p / (p - 1.0)
            r = (a / top) ** (q - 1.0)
            mag = r / np.sum((a / top) ** q, axis=-1, keepdims=True) ** ((q - 1.0) / q)
        return phase * mag

    if p >= 2:
        outer, inner = n ** (0.5 - 1.0 / p), 1.0
    else:
        outer, inner = 1.0, n ** (0.5 - 1.0 / p)
    return BodyOracle(n, lambda x: norm_p(np.asarray(x, dtype=complex)) <= 1.0, support_point,
                      float(outer), float(inner), "l%g-ball" % p, interior_hint=np.zeros(n, complex))


def polydisk_oracle(radii):
    """Product of disks ``{|z_i| <= r_i}``."""
    r = np.asarray(radii, dtype=float)
    base = lp_ball_oracle(np.inf, r.size)
    return BodyOracle(
        r.size,
        lambda x: base.membership(np.asarray(x, dtype=complex) / r),
        lambda u: base.support_point(np.asarray(u, dtype=complex) * r) * r,
        float(np.linalg.norm(r)),
        float(r.min()),
        "polydisk",
        interior_hint=np.zeros(r.size, complex),
    )


def real_ellipsoid_oracle(R, center=None):
    """``{x : s^T R s <= 1}`` with ``s`` the real coordinates of ``x - center``."""
    R = np.asarray(R, dtype=float)
    n = R.shape[0] // 2
    c = np.zeros(n, complex) if center is None else np.asarray(center, dtype=complex)
    Rinv = np.linalg.inv(R)

    def membership(x):
        s = to_real(np.asarray(x, dtype=complex) - c)
        return np.einsum("...i,ij,...j->...", s, R, s) <= 1.0

    def support_point(u):
        s = to_real(u)
        v = s @ Rinv.T
        norm = np.sqrt(np.maximum(np.einsum("...i,...i->...", s, v), 1e-300))
        return c + from_real(v / norm[..., None])

    ev = np.linalg.eigvalsh(R)
    return BodyOracle(n, membership, support_point,
                      float(np.linalg.norm(c) + 1.0 / np.sqrt(ev.min())),
                      float(1.0 / np.sqrt(ev.max())), "real-ellipsoid", interior_hint=c)


def transformed_oracle(body, scale=1.0, shift=None):
    """The body ``scale * K + shift`` for a nonzero complex ``scale``."""
    xi = complex(scale)
    if xi == 0:
        raise ValueError("scale must be nonzero")
    t = np.zeros(body.dim, complex) if shift is None else np.asarray(shift, dtype=complex)
    membership = support_point = None
    if body.membership is not None:
        def membership(x):
            return body.membership((np.asarray(x, dtype=complex) - t) / xi)
    if body.support_point is not None:
        def support_point(u):
            return xi * body.support_point(np.conj(xi) * np.asarray(u, dtype=complex)) + t
    a = abs(xi)
    return BodyOracle(
        body.dim, membership, support_point,
        a * body.outer_radius + float(np.linalg.norm(t)),
        None if body.inner_radius is None else a * body.inner_radius,
        body.name, interior_hint=xi * body.interior_point + t,
    )


# ------------------------------------------------------------------ generators

def gen_random_ellipsoid(seed, n):
    """Shape ``A^H A + 0.1 I`` with ``A`` standard complex Gaussian; Gaussian centre."""
    rng = np.random.default_rng(seed)
    A = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    M = A.conj().T @ A + 0.1 * np.eye(n)
    c = 0.5 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return ComplexEllipsoid(c, 0.5 * (M + M.conj().T))


def gen_perturbed_ellipsoid(seed, n, eps):
    """A random ellipsoid thickened by a real segment.

    In normalised coordinates ``w = M^{1/2}(x - c)`` the body is the Minkowski
    sum of the unit ball and the real segment ``[-eps v, eps v]``; its support
    gains the non-Hermitian term ``eps |Re(v^H w)|``. ``eps = 0`` is the
    ellipsoid itself.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    E = gen_random_ellipsoid(seed, n)
    rng = np.random.default_rng([seed, 1])
    v = random_unit_vectors(rng, 1, n)[0]
    B = sqrt_hermitian(E.shape)
    Binv = inv_hermitian(B)
    c = E.center

    def membership(x):
        w = (np.asarray(x, dtype=complex) - c) @ B.T
        s = np.clip(np.einsum("...i,i->...", w, v.conj()).real, -eps, eps)
        r = w - s[..., None] * v
        return np.einsum("...i,...i->...", r.conj(), r).real <= 1.0

    def support_point(u):
        g = np.asarray(u, dtype=complex) @ Binv.T
        norm = np.sqrt(np.maximum(np.einsum("...i,...i->...", g.conj(), g).real, 1e-300))
        sgn = np.sign(np.einsum("...i,i->...", g.conj(), v).real)
        w = g / norm[..., None] + eps * sgn[..., None] * v
        return c + w @ Binv.T

    axes = 1.0 / np.sqrt(np.linalg.eigvalsh(E.shape))
    return BodyOracle(n, membership, support_point,
                      float(np.linalg.norm(c) + (1.0 + eps) * axes.max()),
                      float(axes.min()), "perturbed-ellipsoid(eps=%g)" % eps, interior_hint=c)


def gen_non_j_invariant(seed, n):
    """A real ellipsoid in ``R^{2n}`` whose shape does not commute with ``J``."""
    rng = np.random.default_rng(seed)
    d = 2 * n
    while True:
        Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
        axes = np.exp(rng.uniform(-0.7, 0.7, d))
        axes[0], axes[-1] = 0.5, 2.0
        R = (Q * axes ** -2.0) @ Q.T
        R = 0.5 * (R + R.T)
        if not is_complex_structured(R, tol=1e-3):
            return real_ellipsoid_oracle(R)


# ----------------------------------------------------------- boundary sampling

def ray_boundary(body, origins, directions, reach):
    """Vectorised bisection for ``sup{r >= 0 : origin + r * direction in body}``.

    ``origins`` must be members; ``reach`` must put every ray outside the body.
    """
    origins = np.asarray(origins, dtype=complex)
    directions = np.asarray(directions, dtype=complex)
    shape = np.broadcast_shapes(origins.shape, directions.shape)[:-1]
    lo = np.zeros(shape)
    hi = np.full(shape, float(reach))
    for _ in range(BISECTION_MAX_ITER):
        if np.max(hi - lo) <= BISECTION_TOL:
            break
        mid = 0.5 * (lo + hi)
        inside = body.contains(origins + mid[..., None] * directions)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)


def random_interior_points(body, rng, count, depth=0.95):
    """Points ``x0 + s * rho(g) * g`` with random unit ``g`` and ``s ~ U(0, depth)``."""
    x0 = body.interior_point
    g = random_unit_vectors(rng, count, body.dim)
    rho = ray_boundary(body, x0, g, 2.0 * body.outer_radius + 1.0)
    s = rng.uniform(0.0, depth, count)
    return x0 + (s * rho)[:, None] * g


def _unit_circle(m):
    return np.exp(2j * np.pi * np.arange(m) / m)


def _find_interior_parameter(body, L):
    # coarse grid over the disk of the line that can meet the outer ball
    t_c = -(L.direction.conj() @ L.base)
    R = body.outer_radius
    g = np.linspace(-R, R, 65)
    T = t_c + (g[:, None] + 1j * g[None, :]).ravel()
    T = T[np.abs(T - t_c) <= R]
    inside = body.contains(L.point(T))
    if not np.any(inside):
        return None
    return complex(T[inside].mean())


def section_samples(body, L, m=32, interior=None):
    """``m`` boundary points of ``L ∩ body`` in the parameter of ``L``.

    Rays are shot at equally spaced angles from an interior parameter
    (``interior`` if given, else found by a grid search). Returns an empty set
    when the line misses the interior.
    """
    if m < MIN_SAMPLES:
        raise ValueError("need at least %d samples" % MIN_SAMPLES)
    t0 = _find_interior_parameter(body, L) if interior is None else complex(interior)
    if t0 is None or not body.contains(L.point(t0)):
        return EMPTY_SAMPLES
    reach = 2.0 * body.outer_radius + abs(t0) + 1.0
    circ = _unit_circle(m)
    r = ray_boundary(body, L.point(t0), circ[:, None] * L.direction, reach)
    return PlanarSampleSet(t0 + r * circ, origin=t0)


def project_to_line(body, d, m=32):
    """Boundary of the orthogonal projection of ``body`` onto ``C d`` (coordinate ``d^H x``)."""
    d = np.asarray(d, dtype=complex)
    if abs(np.linalg.norm(d) - 1.0) > 1e-12:
        raise ValueError("direction must have unit norm")
    if m < MIN_SAMPLES:
        raise ValueError("need at least %d samples" % MIN_SAMPLES)
    U = _unit_circle(m)[:, None] * d
    return PlanarSampleSet(body.support_point(U) @ d.conj())


# ------------------------------------------------------------- derived bodies

def orthonormal_complement(V):
    """Orthonormal basis of the Hermitian orthogonal complement of ``span(V)``."""
    V = np.asarray(V, dtype=complex)
    n, k = V.shape
    Q, _ = np.linalg.qr(np.hstack([V, np.eye(n, dtype=complex)]))
    return Q[:, k:n]


def _section_support_points(body, p, N, U, tol=1e-13, max_iter=60):
    """Touch points of ``body ∩ (p + N^perp)`` for directions ``U`` in ``N^perp``.

    Minimises ``f(z) = h(u - N z) + Re((N z)^H p)`` over ``z`` in ``C^r`` by
    damped Newton with a finite-difference Hessian; the minimiser's touch point
    lies in the affine subspace.
    """
    U = np.atleast_2d(np.asarray(U, dtype=complex))
    r = N.shape[1]
    count = U.shape[0]
    z = np.zeros((count, r), dtype=complex)
    Np = N.conj().T @ p
    E = np.concatenate([np.eye(r), 1j * np.eye(r)])  # real basis of C^r
    scale = max(body.outer_radius, 1.0)
    h_step = 1e-6

    def evaluate(z, u):
        w = u - z @ N.T
        x = body.support_point(w)
        f = np.einsum("...i,...i->...", w.conj(), x).real + (z.conj() @ Np).real
        g = Np - x @ N.conj()
        return f, g, x

    f, g, x = evaluate(z, U)
    for _ in range(max_iter):
        gr = np.concatenate([g.real, g.imag], axis=1)
        gnorm = np.linalg.norm(gr, axis=1)
        todo = gnorm > tol * scale
        if not np.any(todo):
            break
        idx = np.flatnonzero(todo)
        Hs = np.empty((idx.size, 2 * r, 2 * r))
        for col in range(2 * r):
            _, gp, _ = evaluate(z[idx] + h_step * E[col], U[idx])
            _, gm, _ = evaluate(z[idx] - h_step * E[col], U[idx])
            dg = (gp - gm) / (2 * h_step)
            Hs[:, :, col] = np.concatenate([dg.real, dg.imag], axis=1)
        Hs = 0.5 * (Hs + np.transpose(Hs, (0, 2, 1))) + 1e-12 * np.eye(2 * r)
        try:
            step = -np.linalg.solve(Hs, gr[idx][..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -gr[idx]
        bad = np.einsum("ij,ij->i", step, gr[idx]) >= 0
        step[bad] = -gr[idx][bad]
        dz = step[:, :r] + 1j * step[:, r:]
        alpha = np.ones(idx.size)
        for _ in range(40):
            fz, gz, xz = evaluate(z[idx] + alpha[:, None] * dz, U[idx])
            ok = fz <= f[idx] + 1e-15 * scale
            if np.all(ok):
                break
            alpha = np.where(ok, alpha, 0.5 * alpha)
        z[idx] = z[idx] + alpha[:, None] * dz
        f[idx], g[idx], x[idx] = fz, gz, xz
    return x


def section_oracle(body, p, V):
    """Section ``body ∩ (p + span V)`` in coordinates ``z`` with ``x = p + V z``.

    ``V`` has orthonormal columns and ``p`` must be interior.
    """
    V = np.asarray(V, dtype=complex)
    p = np.asarray(p, dtype=complex)
    N = orthonormal_complement(V)

    def membership(z):
        return body.contains(p + np.asarray(z, dtype=complex) @ V.T)

    def support_point(u):
        u = np.asarray(u, dtype=complex)
        lead = u.shape[:-1]
        x = _section_support_points(body, p, N, u.reshape(-1, V.shape[1]) @ V.T)
        return ((x - p) @ V.conj()).reshape(lead + (V.shape[1],))

    return BodyOracle(V.shape[1], membership, support_point, 2.0 * body.outer_radius,
                      None, "section of " + body.name, interior_hint=np.zeros(V.shape[1], complex))


def projection_oracle(body, V):
    """Orthogonal projection onto ``span V`` in coordinates ``z = V^H x`` (support only)."""
    V = np.asarray(V, dtype=complex)

    def support_point(u):
        return body.support_point(np.asarray(u, dtype=complex) @ V.T) @ V.conj()

    return BodyOracle(V.shape[1], None, support_point, body.outer_radius, None,
                      "projection of " + body.name)


def polar_oracle(body, center):
    """Polar body ``{v : h(v) - Re(v^H c) <= 1}`` of ``body - c`` (membership only)."""
    c = np.asarray(center, dtype=complex)
    rng = np.random.default_rng(0)
    dirs = random_unit_vectors(rng, 32 * body.dim, body.dim)
    inner = float(np.min(body.support(dirs) - (dirs.conj() @ c).real))
    if inner <= 0:
        raise ValueError("center is not interior to %s" % body.name)

    def membership(v):
        v = np.asarray(v, dtype=complex)
        return body.support(v) - np.einsum("...i,i->...", v.conj(), c).real <= 1.0

    # sampled inradius overestimates the true one; keep the reach generous
    return BodyOracle(body.dim, membership, None, 2.0 / inner, None,
                      "polar of " + body.name, interior_hint=np.zeros(body.dim, complex))


def line_through(base, direction):
    return ComplexLine.through(base, direction)
