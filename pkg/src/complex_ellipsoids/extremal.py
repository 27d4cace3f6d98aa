"""Minimal circumscribed and maximal inscribed complex ellipsoids.

The minimal ellipsoid is computed from the complex D-optimal design problem

    maximise log det H(w),   H(w) = sum_i w_i x_i x_i^H,   w in the simplex,

by Frank-Wolfe with away steps. With ``kappa_i = x_i^H H^{-1} x_i`` one has
``sum_i w_i kappa_i = n`` (the complex dimension) for every ``w``, and ``w`` is
optimal iff ``max_i kappa_i = n``.
"""
from dataclasses import dataclass, field

import numpy as np

from .ellipsoid import ComplexEllipsoid, polar

DEFAULT_EPS = 1e-7
DEFAULT_MAX_ITER = 100_000
_REFRESH_EVERY = 50


class FlatInputError(ValueError):
    """Points do not span the ambient space (no interior)."""


class ConvergenceError(RuntimeError):
    """Raised when the solver exhausts ``max_iter``; carries the last iterate."""

    def __init__(self, message, ellipsoid, report):
        super().__init__(message)
        self.ellipsoid = ellipsoid
        self.report = report


@dataclass
class SolverReport:
    iterations: int
    duality_gap: float
    converged: bool
    support_points: tuple
    weights: np.ndarray = field(repr=False)
    max_trace_error: float = 0.0
    min_logdet_step: float = 0.0
    away_steps: int = 0

    def as_dict(self):
        return {
            "iterations": self.iterations,
            "duality_gap": self.duality_gap,
            "converged": self.converged,
            "support_points": list(self.support_points),
            "weights": self.weights.tolist(),
            "away_steps": self.away_steps,
        }


def _as_points(points):
    X = np.asarray(points, dtype=complex)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("expected an (m, n) array of points")
    if not np.all(np.isfinite(X)):
        raise ValueError("points have non-finite entries")
    return X


def _check_spanning(X):
    m, n = X.shape
    if m < n:
        raise FlatInputError("%d points cannot span C^%d" % (m, n))
    sv = np.linalg.svd(X, compute_uv=False)
    if sv[-1] <= 1e-9 * sv[0]:
        raise FlatInputError("points do not span C^%d (complex rank deficient)" % n)


def _kappa(X, Hinv):
    return np.einsum("ij,jk,ik->i", X.conj(), Hinv, X).real


def _design(X, w):
    return (X.T * w) @ X.conj()


def mice_centered(points, eps=DEFAULT_EPS, max_iter=DEFAULT_MAX_ITER, initial_weights=None):
    """Minimal-volume ellipsoid centred at 0 containing ``points``.

    Equivalently the minimal ellipsoid of the circle orbits ``{xi * x_i}``.
    Returns ``(ellipsoid, report)``; the shape is ``H^{-1} / max kappa`` so every
    input satisfies the form ``<= 1`` up to rounding, at a volume cost of at most
    ``(1 + eps)^n``.
    """
    X = _as_points(points)
    m, n = X.shape
    _check_spanning(X)
    if initial_weights is None:
        w = np.full(m, 1.0 / m)
    else:
        w = np.asarray(initial_weights, dtype=float).copy()
        if w.shape != (m,) or np.any(w < 0) or w.sum() <= 0:
            raise ValueError("initial weights must be a nonnegative vector of length %d" % m)
        w /= w.sum()

    Hinv = np.linalg.inv(_design(X, w))
    kappa = _kappa(X, Hinv)
    max_trace_error = 0.0
    min_step = np.inf
    away_steps = 0
    converged = False
    it = 0
    for it in range(max_iter + 1):
        max_trace_error = max(max_trace_error, abs(w @ kappa - n) / n)
        j = int(np.argmax(kappa))
        gap_up = kappa[j] / n - 1.0
        if gap_up <= eps:
            converged = True
            break
        if it == max_iter:
            break
        active = np.flatnonzero(w > 0)
        k = int(active[np.argmin(kappa[active])])
        gap_down = 1.0 - kappa[k] / n
        if gap_down > gap_up and w[k] < 1.0:
            # away step: shift weight off the least useful support point
            idx = k
            tau_min = -w[k] / (1.0 - w[k])
            if kappa[k] <= 1.0:
                tau = tau_min
            else:
                tau = max((kappa[k] - n) / (n * (kappa[k] - 1.0)), tau_min)
            away_steps += 1
        else:
            idx = j
            tau = (kappa[j] - n) / (n * (kappa[j] - 1.0))

        kj = kappa[idx]
        denom = 1.0 - tau + tau * kj
        step = np.log(denom) + ((n - 1) * np.log1p(-tau) if n > 1 else 0.0)
        min_step = min(min_step, step)

        w *= 1.0 - tau
        w[idx] += tau
        if tau < 0 and w[idx] <= 1e-15:
            w[idx] = 0.0
        # tau = 1 happens for n = 1, where the whole weight jumps to one point
        if (it + 1) % _REFRESH_EVERY == 0 or tau >= 1.0 - 1e-12:
            w /= w.sum()
            Hinv = np.linalg.inv(_design(X, w))
            kappa = _kappa(X, Hinv)
        else:
            Hx = Hinv @ X[idx]
            Hinv = (Hinv - tau * np.outer(Hx, Hx.conj()) / denom) / (1.0 - tau)
            kappa = (kappa - tau * np.abs(X.conj() @ Hx) ** 2 / denom) / (1.0 - tau)

    # final certificate from scratch
    w /= w.sum()
    Hinv = np.linalg.inv(_design(X, w))
    Hinv = 0.5 * (Hinv + Hinv.conj().T)
    kappa = _kappa(X, Hinv)
    kmax = kappa.max()
    gap = float(kmax / n - 1.0)
    converged = converged and gap <= eps
    report = SolverReport(
        iterations=it,
        duality_gap=gap,
        converged=bool(converged),
        support_points=tuple(int(i) for i in np.flatnonzero(w > 1e-8)),
        weights=w,
        max_trace_error=float(max_trace_error),
        min_logdet_step=float(min_step) if np.isfinite(min_step) else 0.0,
        away_steps=away_steps,
    )
    E = ComplexEllipsoid(np.zeros(n, dtype=complex), Hinv / kmax)
    if not converged:
        raise ConvergenceError("no convergence in %d iterations (gap %.3g)" % (max_iter, gap), E, report)
    return E, report


def mice(points, eps=DEFAULT_EPS, max_iter=DEFAULT_MAX_ITER, initial_weights=None):
    """Minimal-volume complex ellipsoid containing ``points`` (any centre).

    Each point is lifted to ``(x, 1)`` in ``C^{n+1}``; the centred minimal
    ellipsoid ``{z : z^H Q z <= 1}`` there is cut by the hyperplane of last
    coordinate 1.
    """
    X = _as_points(points)
    m, n = X.shape
    Z = np.hstack([X, np.ones((m, 1), dtype=complex)])
    try:
        _check_spanning(Z)
    except FlatInputError:
        raise FlatInputError("points lie in a proper complex affine subspace of C^%d" % n) from None
    try:
        Elift, report = mice_centered(Z, eps, max_iter, initial_weights)
    except ConvergenceError as exc:
        raise ConvergenceError(str(exc), _unlift(exc.ellipsoid.shape, n), exc.report) from None
    return _unlift(Elift.shape, n), report


def _unlift(Q, n):
    Q11 = Q[:n, :n]
    q = Q[:n, n]
    q0 = Q[n, n].real
    sol = np.linalg.solve(Q11, q)
    center = -sol
    scale = 1.0 - q0 + (q.conj() @ sol).real
    M = Q11 / scale
    return ComplexEllipsoid(center, 0.5 * (M + M.conj().T))


def symmetrize(points, k):
    """Orbit of ``points`` under the ``k``-th roots of unity (closed under ``omega``)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    X = _as_points(points)
    omega = np.exp(2j * np.pi * np.arange(k) / k)
    return (omega[:, None, None] * X[None, :, :]).reshape(-1, X.shape[1])


def _slab_normals(slabs):
    A = []
    for a, b in slabs:
        b = float(b)
        if not b > 0:
            raise ValueError("slab half-widths must be positive")
        A.append(np.asarray(a, dtype=complex) / b)
    if not A:
        raise ValueError("no slabs given")
    return np.array(A)


def slab_margins(E, slabs):
    """``sup_{x in E} |a^H x| / b`` for each slab of a centred ellipsoid ``E``."""
    A = _slab_normals(slabs)
    Sinv = np.linalg.inv(E.shape)
    return np.sqrt(np.maximum(_kappa(A, Sinv), 0.0))


def maie_symmetric(slabs, eps=1e-10, max_iter=DEFAULT_MAX_ITER):
    """Maximal inscribed ellipsoid of ``K = {x : |a_i^H x| <= b_i}``.

    ``K`` is circle-invariant, so its inscribed maximum is centred at 0 and is
    the polar of the minimal ellipsoid around the normalised normals
    ``a_i / b_i``.
    """
    A = _slab_normals(slabs)
    try:
        E, _ = mice_centered(A, eps=eps, max_iter=max_iter)
    except FlatInputError:
        raise FlatInputError("slab normals do not span: the body is unbounded") from None
    return polar(E)
