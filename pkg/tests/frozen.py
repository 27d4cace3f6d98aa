"""Reference values computed once by the independent oracles and frozen here.

5-point sets in C^2: ``X = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))``
with ``rng = np.random.default_rng(seed)``; shapes from the projected-ascent
oracle. 6-point sets for the general (non-centred) problem come from the
cvxpy program in ``cvx_oracle.py``.
"""
import numpy as np


def five_points(seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))


def six_points(seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))


def _herm(a, b, d):
    return np.array([[a, b], [np.conj(b), d]])


CENTERED_SHAPES = {
    1: _herm(0.6030579244805194, 0.05157698128783706 - 0.0676793853889491j, 0.45009863410564876),
    2: _herm(0.4572245129816927, -0.1898347024324389 - 0.06792440376275684j, 0.2153748211961194),
    3: _herm(0.20783714821866647, 0.05896772149002853 - 0.0415585518650986j, 0.11419818907769688),
    20261017: _herm(0.1738670326586046, -0.07514586915330589 - 0.0793037803323178j,
                    0.5638247482468044),
}

GENERAL = {
    11: (np.array([0.4981499529013032 - 0.0248254665852546j,
                   -0.46117815003644663 - 0.3766148574895794j]),
         _herm(0.7540822839676713, 0.012535829865201126 - 0.23437139431743995j,
               0.33608006136505286)),
    12: (np.array([0.16535488286110503 - 0.09389476610756305j,
                   -0.0800931743659037 + 0.3089108092415356j]),
         _herm(0.3401585964377414, 0.03539096046963692 + 0.15875767364920917j,
               0.40051746261767235)),
}
