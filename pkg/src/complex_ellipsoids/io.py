"""JSON file formats.

Complex numbers are ``[re, im]`` pairs; floats are written with 17 significant
digits so that parsing and re-serialising reproduces the text exactly.

* point cloud: ``{"dim": n, "points": [[[re, im], ...], ...]}``
* ellipsoid:   ``{"center": [[re, im], ...], "shape": [[[re, im], ...], ...]}``
* slabs:       ``{"slabs": [{"a": [[re, im], ...], "b": r}, ...]}``
* body spec:   ``{"kind": ..., ...}``, see :func:`body_from_spec`
"""
import csv
import io as _io
import json
import math
import os
import tempfile

import numpy as np

from . import bodies
from .ellipsoid import ComplexEllipsoid


class InputError(ValueError):
    """Malformed input; the message names the offending field or token."""


# ------------------------------------------------------------- serialisation

def _fmt_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _is_numeric(obj):
    if isinstance(obj, (list, tuple, np.ndarray)):
        return all(_is_numeric(v) for v in obj)
    return isinstance(obj, (int, float, complex, np.number)) and not isinstance(obj, bool)


def _leaves(obj):
    if isinstance(obj, (list, tuple, np.ndarray)):
        return sum(_leaves(v) for v in obj)
    return 2 if isinstance(obj, (complex, np.complexfloating)) else 1


def _dump(obj, out, indent, level):
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," if indent else ", "
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.append(json.dumps(None if obj is None else bool(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        _dump([obj.real, obj.imag], out, 0, level)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(sep)
            out.append(pad + json.dumps(str(k)) + ": ")
            _dump(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        # numeric arrays stay on one line unless large
        inline = not indent or (_is_numeric(items) and _leaves(items) <= 64)
        out.append("[")
        for i, v in enumerate(items):
            if i:
                out.append(", " if inline else sep)
            if not inline:
                out.append(pad)
            _dump(v, out, 0 if inline else indent, level + 1)
        out.append(("" if inline else end) + "]")
    else:
        raise TypeError("cannot serialise %r" % type(obj))


def dumps(obj, indent=1):
    """JSON text with 17-significant-digit floats and ``[re, im]`` complex pairs."""
    out = []
    _dump(obj, out, indent, 0)
    return "".join(out) + "\n"


def complex_list(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).ravel()]


def complex_matrix(M):
    return [complex_list(row) for row in np.asarray(M, dtype=complex)]


def point_cloud_record(X):
    X = np.asarray(X, dtype=complex)
    return {"dim": int(X.shape[1]), "points": [complex_list(x) for x in X]}


def ellipsoid_record(E):
    return {"center": complex_list(E.center), "shape": complex_matrix(E.shape)}


def slabs_record(slabs):
    return {"slabs": [{"a": complex_list(a), "b": float(b)} for a, b in slabs]}


# ------------------------------------------------------------------- parsing

def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None


def load_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    return loads(text)


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError("%s: expected a number, got %s" % (where, json.dumps(x)))
    return float(x)


def parse_complex(z, where):
    if not isinstance(z, list) or len(z) != 2:
        raise InputError("%s: expected an [re, im] pair, got %s" % (where, json.dumps(z)))
    return complex(_number(z[0], where + "[0]"), _number(z[1], where + "[1]"))


def parse_vector(v, where, dim=None):
    if not isinstance(v, list) or not v:
        raise InputError("%s: expected a non-empty list of [re, im] pairs" % where)
    if dim is not None and len(v) != dim:
        raise InputError("%s: expected %d coordinates, got %d" % (where, dim, len(v)))
    return np.array([parse_complex(z, "%s[%d]" % (where, i)) for i, z in enumerate(v)])


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise InputError("%s: expected a JSON object" % where)
    if key not in obj:
        raise InputError("%s: missing field %r" % (where, key))
    return obj[key]


def _int_field(obj, key, where, minimum=1):
    v = _field(obj, key, where)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise InputError("%s.%s: expected an integer >= %d, got %s" % (where, key, minimum, json.dumps(v)))
    return v


def parse_point_cloud(obj):
    n = _int_field(obj, "dim", "point cloud")
    pts = _field(obj, "points", "point cloud")
    if not isinstance(pts, list) or not pts:
        raise InputError("points: expected a non-empty list")
    return np.array([parse_vector(p, "points[%d]" % i, n) for i, p in enumerate(pts)])


def parse_ellipsoid(obj, where="ellipsoid"):
    c = parse_vector(_field(obj, "center", where), where + ".center")
    rows = _field(obj, "shape", where)
    if not isinstance(rows, list) or len(rows) != c.size:
        raise InputError("%s.shape: expected %d rows" % (where, c.size))
    M = np.array([parse_vector(r, "%s.shape[%d]" % (where, i), c.size) for i, r in enumerate(rows)])
    try:
        return ComplexEllipsoid(c, M)
    except ValueError as exc:
        raise InputError("%s: %s" % (where, exc)) from None


def parse_slabs(obj):
    items = _field(obj, "slabs", "slab file")
    if not isinstance(items, list) or not items:
        raise InputError("slabs: expected a non-empty list")
    out = []
    dim = None
    for i, s in enumerate(items):
        a = parse_vector(_field(s, "a", "slabs[%d]" % i), "slabs[%d].a" % i, dim)
        dim = a.size
        b = _number(_field(s, "b", "slabs[%d]" % i), "slabs[%d].b" % i)
        if b <= 0:
            raise InputError("slabs[%d].b: half-width must be positive" % i)
        out.append((a, b))
    return out


def canonical_order(X):
    """Sort points lexicographically by their serialised coordinates."""
    X = np.asarray(X, dtype=complex)
    # serialised order per point: re_0, im_0, re_1, im_1, ...
    keys = np.stack([X.real, X.imag], axis=2).reshape(X.shape[0], -1)
    order = np.lexsort(keys.T[::-1])
    return X[order]


BODY_KINDS = ("ellipsoid", "random_ellipsoid", "perturbed", "non_j_invariant",
              "lp_ball", "polydisk", "points")


def body_from_spec(spec):
    """Build a :class:`~complex_ellipsoids.bodies.BodyOracle` from a JSON body spec.

    Kinds: ``ellipsoid`` (center, shape), ``random_ellipsoid`` (seed, dim),
    ``perturbed`` (seed, dim, eps), ``non_j_invariant`` (seed, dim),
    ``lp_ball`` (p, dim; p may be "inf"), ``polydisk`` (radii) and
    ``points`` (a point cloud; its convex hull). A spec without ``kind``
    holding ``center`` and ``shape`` is read as an ellipsoid. An optional
    ``translate`` vector moves any explicit ellipsoid.
    """
    if not isinstance(spec, dict):
        raise InputError("body spec: expected a JSON object")
    kind = spec.get("kind", "ellipsoid" if "shape" in spec else None)
    if kind not in BODY_KINDS:
        raise InputError("body spec.kind: unknown kind %s (expected one of %s)"
                         % (json.dumps(kind), ", ".join(BODY_KINDS)))
    where = "body spec"
    if kind == "ellipsoid":
        E = parse_ellipsoid(spec, where)
        if "translate" in spec:
            E = E.translate(parse_vector(spec["translate"], where + ".translate", E.dim))
        return bodies.ellipsoid_oracle(E)
    if kind == "random_ellipsoid":
        E = bodies.gen_random_ellipsoid(_int_field(spec, "seed", where, 0), _int_field(spec, "dim", where))
        return bodies.ellipsoid_oracle(E)
    if kind == "perturbed":
        eps = _number(_field(spec, "eps", where), where + ".eps")
        if eps < 0:
            raise InputError("body spec.eps: must be >= 0")
        return bodies.gen_perturbed_ellipsoid(_int_field(spec, "seed", where, 0),
                                              _int_field(spec, "dim", where), eps)
    if kind == "non_j_invariant":
        return bodies.gen_non_j_invariant(_int_field(spec, "seed", where, 0), _int_field(spec, "dim", where))
    if kind == "lp_ball":
        p = _field(spec, "p", where)
        p = math.inf if p == "inf" else _number(p, where + ".p")
        if p < 1:
            raise InputError("body spec.p: need p >= 1")
        return bodies.lp_ball_oracle(p, _int_field(spec, "dim", where))
    if kind == "polydisk":
        radii = _field(spec, "radii", where)
        if not isinstance(radii, list) or not radii:
            raise InputError("body spec.radii: expected a non-empty list")
        r = [_number(x, "body spec.radii[%d]" % i) for i, x in enumerate(radii)]
        if min(r) <= 0:
            raise InputError("body spec.radii: radii must be positive")
        return bodies.polydisk_oracle(r)
    try:
        return bodies.hull_oracle(parse_point_cloud(spec))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("body spec.points: %s" % exc) from None


# ------------------------------------------------------------------- writing

def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _flatten_scalars(obj, prefix, rows):
    for k, v in obj.items():
        key = prefix + str(k)
        if isinstance(v, dict):
            _flatten_scalars(v, key + ".", rows)
        elif v is None or isinstance(v, (bool, int, float, str, np.number, np.bool_)):
            rows.append((key, v))


def to_csv(report):
    """Two-column ``key,value`` CSV of the scalar entries (nested keys dotted)."""
    rows = []
    _flatten_scalars(report, "", rows)
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in rows:
        if isinstance(v, (float, np.floating)):
            v = _fmt_float(float(v))
        elif isinstance(v, (bool, np.bool_)):
            v = "true" if v else "false"
        w.writerow([k, "" if v is None else v])
    return buf.getvalue()
