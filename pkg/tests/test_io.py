import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complex_ellipsoids import io
from complex_ellipsoids.bodies import gen_random_ellipsoid

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
pairs = st.tuples(finite, finite).map(list)


@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(pairs, min_size=n, max_size=n), min_size=1, max_size=6)))
def test_point_cloud_round_trip(points):
    text = io.dumps({"dim": len(points[0]), "points": points})
    X = io.parse_point_cloud(io.loads(text))
    assert io.dumps(io.point_cloud_record(X)) == text
    assert np.array_equal(io.parse_point_cloud(io.loads(text)), np.array(
        [[complex(*z) for z in p] for p in points]))


@given(st.lists(st.tuples(st.lists(pairs, min_size=2, max_size=2),
                          st.floats(1e-300, 1e300)), min_size=1, max_size=5))
def test_slabs_round_trip(items):
    text = io.dumps({"slabs": [{"a": a, "b": b} for a, b in items]})
    assert io.dumps(io.slabs_record(io.parse_slabs(io.loads(text)))) == text


@pytest.mark.parametrize("seed", range(5))
def test_ellipsoid_round_trip(seed):
    E = gen_random_ellipsoid(seed, 3)
    text = io.dumps(io.ellipsoid_record(E))
    F = io.parse_ellipsoid(io.loads(text))
    assert np.array_equal(F.center, E.center) and np.array_equal(F.shape, E.shape)
    assert io.dumps(io.ellipsoid_record(F)) == text


def test_float_format():
    assert io._fmt_float(0.1) == "0.10000000000000001"
    assert io._fmt_float(1.0) == "1.0"
    assert io._fmt_float(-0.0) == "-0.0"
    assert io._fmt_float(1e300) == "1.0000000000000001e+300"
    assert io._fmt_float(math.inf) == "Infinity"
    assert io.dumps({"z": 1 - 2j, "ok": True, "n": None, "k": 3}) == (
        '{\n "z": [1.0, -2.0],\n "ok": true,\n "n": null,\n "k": 3\n}\n')


@pytest.mark.parametrize("obj, fragment", [
    ({"dim": 2, "points": [[[1, 0], [0, "abc"]]]}, 'points[0][1][1]: expected a number, got "abc"'),
    ({"dim": 2, "points": [[[1, 0]]]}, "points[0]: expected 2 coordinates"),
    ({"dim": 2, "points": [[[1, 0], [0]]]}, "points[0][1]: expected an [re, im] pair"),
    ({"dim": 0, "points": []}, "point cloud.dim"),
    ({"points": []}, "missing field 'dim'"),
    ({"dim": 1, "points": [[[True, 0]]]}, "points[0][0][0]"),
])
def test_point_cloud_errors(obj, fragment):
    with pytest.raises(io.InputError) as exc:
        io.parse_point_cloud(obj)
    assert fragment in str(exc.value)


def test_other_parse_errors():
    with pytest.raises(io.InputError, match="line 2 column 1"):
        io.loads('{"dim": 1,\n}')
    with pytest.raises(io.InputError, match=r"slabs\[0\].b"):
        io.parse_slabs({"slabs": [{"a": [[1, 0]], "b": -1}]})
    with pytest.raises(io.InputError, match=r"slabs\[1\].a: expected 1 coordinates"):
        io.parse_slabs({"slabs": [{"a": [[1, 0]], "b": 1}, {"a": [[1, 0], [0, 1]], "b": 1}]})
    with pytest.raises(io.InputError, match="shape"):
        io.parse_ellipsoid({"center": [[0, 0]], "shape": [[[-1, 0]]]})
    with pytest.raises(io.InputError, match="unknown kind"):
        io.body_from_spec({"kind": "cube"})
    with pytest.raises(io.InputError, match="cannot read"):
        io.load_file("/nonexistent/file.json")


def test_canonical_order():
    X = np.array([[1 + 2j, 0], [1 + 1j, 5], [0 + 9j, 1], [1 + 1j, 3]])
    Y = io.canonical_order(X)
    np.testing.assert_array_equal(Y, X[[2, 3, 1, 0]])
    rng = np.random.default_rng(0)
    Z = rng.standard_normal((20, 2)) + 1j * rng.standard_normal((20, 2))
    np.testing.assert_array_equal(io.canonical_order(Z), io.canonical_order(Z[rng.permutation(20)]))


def test_body_specs():
    K = io.body_from_spec({"center": [[0, 0]], "shape": [[[1, 0]]], "translate": [[2, 0]]})
    assert K.contains(np.array([2.5])) and not K.contains(np.array([0.5]))
    assert io.body_from_spec({"kind": "lp_ball", "p": "inf", "dim": 2}).contains(np.array([0.7 + 0.7j, 0.99]))
    assert io.body_from_spec({"kind": "polydisk", "radii": [1, 2]}).contains(np.array([0.9, 1.9j]))
    with pytest.raises(io.InputError, match="radii"):
        io.body_from_spec({"kind": "polydisk", "radii": [1, 0]})


def test_atomic_write_and_csv(tmp_path):
    p = tmp_path / "out.json"
    io.atomic_write(str(p), "x\n")
    io.atomic_write(str(p), "y\n")
    assert p.read_text() == "y\n"
    assert [f.name for f in tmp_path.iterdir()] == ["out.json"]
    text = io.to_csv({"a": 0.5, "b": {"c": True, "d": [1, 2]}, "e": None, "f": "s"})
    assert text == "key,value\na,0.5\nb.c,true\ne,\nf,s\n"
    json.loads(io.dumps({"x": [1.0, 2.5]}))
