"""Minimal enclosing complex ellipsoid of a random cloud, checked three ways.

Run: python demos/minimal_ellipsoid.py
"""
import numpy as np

from complex_ellipsoids import mice
from complex_ellipsoids.extremal import symmetrize

rng = np.random.default_rng(0)
X = rng.standard_normal((12, 2)) + 1j * rng.standard_normal((12, 2))

E, rep = mice(X, eps=1e-10)
print("centre      ", np.round(E.center, 6))
print("shape       ", np.round(E.shape, 6).tolist())
print("iterations  ", rep.iterations, " duality gap", "%.1e" % rep.duality_gap)
print("max form    ", "%.12f" % E.form(X).max(), " support points", rep.support_points)

# shuffled input and random starting weights land on the same ellipsoid
F, _ = mice(X[rng.permutation(12)], eps=1e-10, initial_weights=rng.uniform(0.1, 1, 12))
print("reshuffled  ", "agrees" if F.isclose(E, 1e-6) else "DIFFERS")

# a circle-invariant cloud has its minimal ellipsoid centred at the origin
S, _ = mice(symmetrize(X[:4], 64))
print("|centre| of symmetrized cloud %.1e" % np.linalg.norm(S.center))
