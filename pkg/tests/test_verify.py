import pytest

from complex_ellipsoids.verify import CHECKS, run_suite


@pytest.mark.parametrize("seed", [0, 7])
def test_suite_passes(seed):
    records = run_suite(seed, timing=False)
    assert [r["name"] for r in records] == list(CHECKS)
    assert all(r["passed"] for r in records), [r for r in records if not r["passed"]]
    assert records == run_suite(seed, timing=False)


@pytest.mark.parametrize("name", list(CHECKS))
def test_each_fault_is_caught(name):
    (rec,) = run_suite(inject_fault=name, timing=False, only=[name])
    assert not rec["passed"]


def test_unknown_fault():
    with pytest.raises(ValueError):
        run_suite(inject_fault="nope")
