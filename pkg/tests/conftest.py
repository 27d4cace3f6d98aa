import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hpd(rng, n, shift=1.0):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    M = A.conj().T @ A + shift * np.eye(n)
    return 0.5 * (M + M.conj().T)


_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record ``(number, passed, detail)`` for the acceptance summary."""
    def record(num, passed, detail):
        _CRITERIA[num] = (bool(passed), detail)
        return bool(passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        passed, detail = _CRITERIA[num]
        terminalreporter.write_line("criterion %2d: %s  %s" % (num, "PASS" if passed else "FAIL", detail))
