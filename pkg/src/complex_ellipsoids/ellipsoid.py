"""Complex ellipsoids ``{x : (x - c)^H M (x - c) <= 1}`` and their closed-form geometry."""
from dataclasses import dataclass
from math import factorial, pi

import numpy as np

from .linalg import (
    as_vector,
    check_hermitian,
    det_hermitian,
    eig_hermitian,
    inv_hermitian,
    inv_sqrt_hermitian,
    is_positive_definite,
    quad_form,
)

# Lebesgue volume of El(lam) divided by the volume of the unit ball equals
# det_product(lam) ** AXES_VOLUME_EXPONENT. Any statement phrased with the
# ratio det_product(lam) carries over because both are monotone in it.
AXES_VOLUME_EXPONENT = 2

SECTION_POINT_TOL = 1e-12


def unit_ball_volume(n):
    """Lebesgue measure of the unit ball of ``C^n = R^{2n}``."""
    return pi ** n / factorial(n)


@dataclass(frozen=True, eq=False)
class ComplexEllipsoid:
    """Ellipsoid with ``center`` c and Hermitian positive-definite ``shape`` M."""

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self):
        c = as_vector(self.center)
        M = check_hermitian(self.shape)
        if M.shape[0] != c.size:
            raise ValueError("center has dimension %d but shape is %dx%d"
                             % (c.size, *M.shape))
        if not is_positive_definite(M):
            raise ValueError("shape is not positive-definite")
        c.setflags(write=False)
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "shape", M)

    @property
    def dim(self):
        return self.center.size

    def form(self, x):
        """Value of the defining form at ``x`` (broadcasts over leading axes)."""
        return quad_form(self.shape, np.asarray(x, dtype=complex) - self.center)

    def contains(self, x, tol=0.0):
        return self.form(x) <= 1.0 + tol

    def volume(self):
        """Lebesgue ``2n``-volume: ``pi^n / n! / det(M)``."""
        return unit_ball_volume(self.dim) / det_hermitian(self.shape)

    def to_axes(self):
        """Semi-axis lengths (ascending) and the unitary frame of the principal axes."""
        mu, U = eig_hermitian(self.shape)
        order = np.argsort(-mu, kind="stable")
        return 1.0 / np.sqrt(mu[order]), U[:, order]

    def axes_product(self):
        return float(np.prod(self.to_axes()[0]))

    def translate(self, t):
        return ComplexEllipsoid(self.center + as_vector(t), self.shape)

    def isclose(self, other, tol=1e-7):
        """Relative comparison of shapes and centres."""
        if self.dim != other.dim:
            return False
        s = max(np.linalg.norm(self.shape), np.linalg.norm(other.shape))
        if np.linalg.norm(self.shape - other.shape) > tol * s:
            return False
        scale = max(1.0, np.linalg.norm(self.center), np.linalg.norm(other.center))
        return bool(np.linalg.norm(self.center - other.center) <= tol * scale)

    def boundary_points(self, u):
        """Map unit-sphere points ``u`` (rows) to the boundary."""
        return self.center + np.asarray(u, dtype=complex) @ inv_sqrt_hermitian(self.shape).T

    def __repr__(self):
        return "ComplexEllipsoid(center=%r, shape=%r)" % (self.center.tolist(), self.shape.tolist())


def unit_ball(n):
    return ComplexEllipsoid(np.zeros(n, dtype=complex), np.eye(n, dtype=complex))


def from_axes(lam, frame=None, center=None):
    """Ellipsoid ``frame * El(lam) + center``; shape ``frame diag(lam^-2) frame^H``."""
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 1 or np.any(lam <= 0):
        raise ValueError("axes must be a vector of positive reals")
    n = lam.size
    U = np.eye(n, dtype=complex) if frame is None else np.asarray(frame, dtype=complex)
    if U.shape != (n, n) or np.max(np.abs(U.conj().T @ U - np.eye(n))) > 1e-10:
        raise ValueError("frame is not unitary")
    c = np.zeros(n, dtype=complex) if center is None else as_vector(center)
    M = (U * lam ** -2.0) @ U.conj().T
    return ComplexEllipsoid(c, 0.5 * (M + M.conj().T))


def affine_image(E, A, t=None):
    """Image of ``E`` under ``x -> A x + t``."""
    A = np.asarray(A, dtype=complex)
    n = E.dim
    if A.shape != (n, n):
        raise ValueError("map must be %dx%d" % (n, n))
    if abs(np.linalg.det(A)) <= 1e-12 * max(np.linalg.norm(A, 2), 1e-300) ** n:
        raise ValueError("affine map is singular")
    t = np.zeros(n, dtype=complex) if t is None else as_vector(t)
    Ainv = np.linalg.inv(A)
    M = Ainv.conj().T @ E.shape @ Ainv
    return ComplexEllipsoid(A @ E.center + t, 0.5 * (M + M.conj().T))


def polar(E):
    """Absolute polar ``{y : sup_{x in E} |<y, x>| <= 1}`` of a centred ellipsoid."""
    if np.linalg.norm(E.center) > 1e-12 * max(1.0, np.linalg.norm(E.shape)):
        raise ValueError("polar is only defined here for ellipsoids centred at the origin")
    return ComplexEllipsoid(np.zeros(E.dim, dtype=complex), inv_hermitian(E.shape))


@dataclass(frozen=True)
class Disk:
    """Section of a convex body by a complex line, in line coordinates."""

    kind: str  # "empty" | "point" | "disk"
    center: complex = 0j
    radius: float = 0.0


@dataclass(frozen=True, eq=False)
class ComplexLine:
    """The line ``{base + t * direction : t in C}`` with a unit direction."""

    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        p = as_vector(self.base)
        d = as_vector(self.direction)
        if p.size != d.size:
            raise ValueError("base and direction dimensions differ")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError("direction must have unit norm")
        object.__setattr__(self, "base", p)
        object.__setattr__(self, "direction", d)

    @classmethod
    def through(cls, base, direction):
        d = as_vector(direction)
        return cls(base, d / np.linalg.norm(d))

    def point(self, t):
        return self.base + np.multiply.outer(np.asarray(t, dtype=complex), self.direction)


def line_section(E, L):
    """Exact section of ``E`` by ``L`` as a :class:`Disk` in the line parameter."""
    y = L.base - E.center
    d = L.direction
    alpha = quad_form(E.shape, d)
    beta = d.conj() @ E.shape @ y
    gamma = quad_form(E.shape, y)
    t0 = complex(-beta / alpha)
    rho = 1.0 - gamma + abs(beta) ** 2 / alpha
    if rho < -SECTION_POINT_TOL:
        return Disk("empty")
    if rho <= SECTION_POINT_TOL:
        return Disk("point", t0, 0.0)
    return Disk("disk", t0, float(np.sqrt(rho / alpha)))


def midpoint_ellipsoid(lam, c):
    """``El((lam + 1)/2) + c/2``, sitting inside the hull of ``B`` and ``El(lam) + c``."""
    lam = np.asarray(lam, dtype=float)
    return from_axes((lam + 1.0) / 2.0, center=as_vector(c) / 2.0)


def midpoint_witness(lam, c, x):
    """For ``x`` in the midpoint ellipsoid return ``(u, y)`` with ``x = (u + y)/2``,
    ``u`` in the unit ball and ``y = lam * u + c`` in ``El(lam) + c``."""
    lam = np.asarray(lam, dtype=float)
    c = as_vector(c)
    u = (np.asarray(x, dtype=complex) - c / 2.0) / ((lam + 1.0) / 2.0)
    return u, lam * u + c


def mice_bound_ellipsoid(beta, c, tight=True):
    """Ellipsoid containing ``El(beta) ∩ (B + c)``.

    With ``lam = beta^-2`` the intersection satisfies
    ``sum (lam_i + 1) |x_i - c_i/(lam_i + 1)|^2 <= 2 - sum lam_i/(lam_i + 1) |c_i|^2``.
    ``tight=False`` drops the subtracted term and uses the bound 2.
    """
    beta = np.asarray(beta, dtype=float)
    if np.any(beta <= 0):
        raise ValueError("axes must be strictly positive")
    c = as_vector(c)
    lam = beta ** -2.0
    rhs = 2.0
    if tight:
        rhs -= float(np.sum(lam / (lam + 1.0) * np.abs(c) ** 2))
    if rhs <= 0:
        raise ValueError("the two ellipsoids do not intersect in a full-dimensional set")
    shape = np.diag((lam + 1.0) / rhs).astype(complex)
    return ComplexEllipsoid(c / (lam + 1.0), shape)
