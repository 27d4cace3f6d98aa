"""Complex and Hermitian linear algebra.

Conventions used throughout the package:

* A Hermitian form ``M`` is evaluated as ``x^H M x`` (conjugate on the left).
  The same set of ellipsoids is obtained from the transposed convention
  ``x^T M conj(x)``; a matrix ``M`` in that convention corresponds to
  ``M.T`` here.
* ``C^n`` is identified with ``R^{2n}`` by stacking, ``x -> (Re x, Im x)``.
  Multiplication by ``i`` is then the block matrix ``J = [[0, -I], [I, 0]]``.
"""
import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
PD_TOL = 1e-12


class NotHermitianError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    pass


def as_vector(x):
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("expected a non-empty 1-d complex vector, got shape %s" % (v.shape,))
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def _check_same_dim(x, y):
    if x.shape[-1] != y.shape[-1]:
        raise ValueError("dimension mismatch: %d != %d" % (x.shape[-1], y.shape[-1]))


def check_hermitian(M, tol=HERMITIAN_TOL):
    """Return ``M`` as a complex array, rejecting non-Hermitian input.

    No symmetrisation is applied: entries must already agree with their
    conjugate transpose within ``tol``.
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError("expected a non-empty square matrix, got shape %s" % (A.shape,))
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    err = np.max(np.abs(A - A.conj().T))
    if err > tol:
        raise NotHermitianError("matrix is not Hermitian (max |M - M^H| = %.3g)" % err)
    return A


def hadamard(x, y):
    """Coordinatewise product of two vectors of equal length."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    _check_same_dim(x, y)
    return x * y


def quad_form(M, x):
    """Real value of ``x^H M x``. Broadcasts over leading axes of ``x``."""
    M = np.asarray(M, dtype=complex)
    x = np.asarray(x, dtype=complex)
    _check_same_dim(M, x)
    return np.einsum("...i,ij,...j->...", x.conj(), M, x).real


def _jacobi_sweeps(A, tol, max_sweeps):
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return A, V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                mag = abs(b)
                if mag <= 1e-300:
                    continue
                phase = b / mag
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] on coordinates (p, q)
                G = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
    return A, V


def eig_hermitian(M, tol=JACOBI_TOL, max_sweeps=100):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(mu, U)`` with ``mu`` ascending and ``U`` unitary such that
    ``M = U diag(mu) U^H``. Iterates until the off-diagonal Frobenius mass is
    at most ``tol * ||M||_F``.
    """
    A = check_hermitian(M).copy()
    A, V = _jacobi_sweeps(A, tol, max_sweeps)
    mu = np.diag(A).real.copy()
    order = np.argsort(mu, kind="stable")
    return mu[order], V[:, order]


def _pd_eig(M):
    mu, U = eig_hermitian(M)
    scale = np.linalg.norm(M)
    if mu[0] <= PD_TOL * scale:
        raise NotPositiveDefiniteError(
            "matrix is not positive-definite (smallest eigenvalue %.3g)" % mu[0])
    return mu, U


def sqrt_hermitian(M):
    """Hermitian positive-definite square root."""
    mu, U = _pd_eig(M)
    R = (U * np.sqrt(mu)) @ U.conj().T
    return 0.5 * (R + R.conj().T)


def inv_hermitian(M):
    mu, U = _pd_eig(M)
    R = (U / mu) @ U.conj().T
    return 0.5 * (R + R.conj().T)


def inv_sqrt_hermitian(M):
    mu, U = _pd_eig(M)
    R = (U / np.sqrt(mu)) @ U.conj().T
    return 0.5 * (R + R.conj().T)


def det_hermitian(M):
    """Determinant of a Hermitian positive-definite matrix (product of eigenvalues)."""
    mu, _ = _pd_eig(M)
    return float(np.prod(mu))


def is_positive_definite(M):
    try:
        _pd_eig(M)
    except (NotPositiveDefiniteError, NotHermitianError):
        return False
    return True


def det_product(lam):
    """Product of the coordinates of an axes vector."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("axes must be strictly positive")
    return float(np.prod(lam))


def complex_structure(n):
    """Matrix of multiplication by ``i`` on ``R^{2n}`` (stacked coordinates)."""
    Z = np.zeros((n, n))
    I = np.eye(n)
    return np.block([[Z, -I], [I, Z]])


def to_real(x):
    """Stack real and imaginary parts: ``C^n -> R^{2n}`` along the last axis."""
    x = np.asarray(x, dtype=complex)
    return np.concatenate([x.real, x.imag], axis=-1)


def from_real(s):
    s = np.asarray(s, dtype=float)
    if s.shape[-1] % 2:
        raise ValueError("real dimension must be even, got %d" % s.shape[-1])
    n = s.shape[-1] // 2
    return s[..., :n] + 1j * s[..., n:]


def realify(M):
    """Real symmetric ``2n x 2n`` matrix of the form ``x -> x^H M x`` on ``R^{2n}``."""
    M = check_hermitian(M)
    P, Q = M.real, M.imag
    return np.block([[P, -Q], [Q, P]])


def complexify(S):
    """Inverse of :func:`realify` for matrices commuting with the complex structure."""
    S = np.asarray(S, dtype=float)
    n = S.shape[0] // 2
    return S[:n, :n] + 1j * S[n:, :n]


def is_complex_structured(S, tol=1e-9):
    """True iff the real symmetric matrix ``S`` commutes with ``J`` within ``tol``.

    This holds exactly when the real ellipsoid ``{s : s^T S s <= 1}`` is a
    complex ellipsoid. The commutator is measured relative to ``||S||``.
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("expected a square matrix")
    if S.shape[0] % 2:
        raise ValueError("real dimension must be even, got %d" % S.shape[0])
    J = complex_structure(S.shape[0] // 2)
    return bool(np.linalg.norm(S @ J - J @ S) <= tol * max(np.linalg.norm(S), 1e-300))


def lemma_affine_identity(lam, x, c):
    """Both sides of the completing-the-square identity

    ``lam |x|^2 + |x - c|^2 = (lam + 1) |x - c/(lam + 1)|^2 + lam/(lam + 1) |c|^2``

    for real ``lam != -1`` and complex ``x, c``. Vectorised over arrays.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam == -1.0):
        raise ValueError("lambda = -1 is excluded")
    x = np.asarray(x, dtype=complex)
    c = np.asarray(c, dtype=complex)
    lhs = lam * np.abs(x) ** 2 + np.abs(x - c) ** 2
    rhs = (lam + 1) * np.abs(x - c / (lam + 1)) ** 2 + lam / (lam + 1) * np.abs(c) ** 2
    return lhs, rhs


def random_unitary(rng, n):
    """Haar-distributed unitary from a QR of a complex Gaussian matrix."""
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_unit_vectors(rng, count, n):
    Z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)
