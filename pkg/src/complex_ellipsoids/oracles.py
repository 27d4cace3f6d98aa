"""Reference solvers used to cross-check the production algorithms.

These share no code with :mod:`complex_ellipsoids.extremal`; they are slow,
dense and deliberately naive.
"""
import numpy as np


def project_to_simplex(v):
    """Euclidean projection of ``v`` onto the probability simplex (sort based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def logdet_projected_ascent(points, tol=1e-8, max_iter=100000):
    """Maximise ``log det sum_i w_i x_i x_i^H`` over the simplex.

    Projected gradient ascent with Armijo backtracking. Returns the shape
    ``H(w)^{-1} / n`` of the centred minimal ellipsoid together with the final
    weights. Stops when the first-order gap ``max_i kappa_i - n`` falls below
    ``tol``.
    """
    X = np.asarray(points, dtype=complex)
    m, n = X.shape
    w = np.full(m, 1.0 / m)

    def objective(w):
        H = (X.T * w) @ X.conj()
        sign, logdet = np.linalg.slogdet(H)
        return logdet if sign.real > 0 else -np.inf, H

    f, H = objective(w)
    step = 1.0
    for _ in range(max_iter):
        Hinv = np.linalg.inv(H)
        grad = np.einsum("ij,jk,ik->i", X.conj(), Hinv, X).real
        if grad.max() - n <= tol:
            break
        step = min(step * 2.0, 1e6)
        while step > 1e-16:
            w_new = project_to_simplex(w + step * grad)
            f_new, H_new = objective(w_new)
            if f_new >= f + 1e-4 * grad @ (w_new - w):
                break
            step *= 0.5
        else:
            # objective flat to rounding; the gap cannot shrink further
            break
        w, f, H = w_new, f_new, H_new
    shape = np.linalg.inv(H) / n
    return 0.5 * (shape + shape.conj().T), w
