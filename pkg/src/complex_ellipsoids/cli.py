"""Command-line front end.

Exit codes: 0 success or true verdict, 1 input error, 2 solver did not
converge, 3 the tested property is violated.
"""
import argparse
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import bodies, io
from .characterize import DEFAULT_TOL, bombon_check, symmetry_center
from .extremal import (
    DEFAULT_EPS,
    DEFAULT_MAX_ITER,
    ConvergenceError,
    FlatInputError,
    maie_symmetric,
    mice,
    mice_centered,
    slab_margins,
)
from .linalg import random_unit_vectors
from .verify import CHECKS, DEFAULT_SEED, run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_VIOLATED = 3

GEN_KINDS = ("ellipsoid", "perturbed", "non_j_invariant", "lp_ball", "points", "slabs")


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    tol: float = DEFAULT_TOL
    eps: float = DEFAULT_EPS
    seed: int = DEFAULT_SEED
    num_lines: int = 1000
    num_dirs: int = 16
    num_planes: int = 10
    max_iter: int = DEFAULT_MAX_ITER
    format: str = "json"

    def validate(self):
        if not self.tol > 0 or not self.eps > 0:
            raise io.InputError("--tol and --eps must be positive")
        if min(self.num_lines, self.num_dirs, self.num_planes, self.max_iter) < 1:
            raise io.InputError("--lines, --dirs, --planes and --max-iter must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise io.InputError("--seed must be an unsigned 64-bit integer")


def _emit(cfg, report):
    text = io.to_csv(report) if cfg.format == "csv" else io.dumps(report)
    if cfg.output:
        io.atomic_write(cfg.output, text)
    else:
        sys.stdout.write(text)


def _need_input(cfg):
    if not cfg.input:
        raise io.InputError("--input is required for %s" % cfg.command)
    return io.load_file(cfg.input)


def _base_report(cfg, verdict, witness=None):
    return {"command": cfg.command, "seed": cfg.seed, "tol": cfg.tol,
            "verdict": verdict, "witness": witness}


# ------------------------------------------------------------------- commands

def cmd_mice(cfg, centered=False):
    """Minimal ellipsoid of a point cloud.

    With ``centered`` (or ``"centered": true`` in the file) the ellipsoid is
    centred at 0, i.e. it is the minimal ellipsoid of the circle orbits of
    the points.
    """
    obj = _need_input(cfg)
    X = io.canonical_order(io.parse_point_cloud(obj))
    centered = centered or obj.get("centered") is True
    solve = mice_centered if centered else mice
    try:
        E, rep = solve(X, eps=cfg.eps, max_iter=cfg.max_iter)
        code = EXIT_OK
    except FlatInputError as exc:
        hint = "" if centered else " (--centered gives the origin-centred ellipsoid)"
        raise io.InputError(str(exc) + hint) from None
    except ConvergenceError as exc:
        E, rep = exc.ellipsoid, exc.report
        code = EXIT_NO_CONVERGENCE
    report = _base_report(cfg, rep.converged)
    report.update({
        "eps": cfg.eps,
        "centered": centered,
        "ellipsoid": io.ellipsoid_record(E),
        "solver": {"iterations": rep.iterations, "duality_gap": rep.duality_gap,
                   "converged": rep.converged, "away_steps": rep.away_steps},
        "support_points": [io.complex_list(X[i]) for i in rep.support_points],
        "max_form_value": float(E.form(X).max()),
    })
    _emit(cfg, report)
    return code


def cmd_maie(cfg):
    slabs = io.parse_slabs(_need_input(cfg))
    try:
        E = maie_symmetric(slabs, eps=cfg.eps, max_iter=cfg.max_iter)
    except FlatInputError as exc:
        raise io.InputError(str(exc)) from None
    except ConvergenceError:
        report = _base_report(cfg, False)
        report["error"] = "no convergence in %d iterations" % cfg.max_iter
        _emit(cfg, report)
        return EXIT_NO_CONVERGENCE
    report = _base_report(cfg, True)
    report.update({"eps": cfg.eps, "ellipsoid": io.ellipsoid_record(E),
                   "slab_margins": slab_margins(E, slabs).tolist(),
                   "volume": E.volume()})
    _emit(cfg, report)
    return EXIT_OK


def cmd_symmetry(cfg):
    K = io.body_from_spec(_need_input(cfg))
    c, rep = symmetry_center(K, num_dirs=cfg.num_dirs, tol=cfg.tol, seed=cfg.seed)
    report = _base_report(cfg, rep.verdict, rep.worst_witness)
    report.update({"center": None if c is None else io.complex_list(c),
                   "worst_deviation": rep.worst_deviation,
                   "samples_used": rep.samples_used})
    if "reason" in rep.details:
        report["reason"] = rep.details["reason"]
    _emit(cfg, report)
    return EXIT_OK if rep.verdict else EXIT_VIOLATED


def cmd_bombon(cfg):
    K = io.body_from_spec(_need_input(cfg))
    rep = bombon_check(K, num_lines=cfg.num_lines, tol=cfg.tol, seed=cfg.seed)
    w = rep.worst_witness
    report = _base_report(cfg, rep.verdict, {"base": io.complex_list(w["base"]),
                                             "direction": io.complex_list(w["direction"])})
    report.update({"worst_deviation": rep.worst_deviation, "lines": cfg.num_lines,
                   "samples_used": rep.samples_used})
    _emit(cfg, report)
    return EXIT_OK if rep.verdict else EXIT_VIOLATED


def cmd_gen(cfg, kind, dim, count=None, p=4.0, amplitude=0.1):
    if dim < 1:
        raise io.InputError("--dim must be at least 1")
    seed = cfg.seed
    if kind == "ellipsoid":
        out = {"kind": "ellipsoid", **io.ellipsoid_record(bodies.gen_random_ellipsoid(seed, dim))}
    elif kind == "perturbed":
        if amplitude < 0:
            raise io.InputError("--amplitude must be >= 0")
        out = {"kind": "perturbed", "seed": seed, "dim": dim, "eps": amplitude}
    elif kind == "non_j_invariant":
        out = {"kind": "non_j_invariant", "seed": seed, "dim": dim}
    elif kind == "lp_ball":
        out = {"kind": "lp_ball", "p": "inf" if np.isinf(p) else p, "dim": dim}
    elif kind == "points":
        rng = np.random.default_rng(seed)
        m = count or 4 * dim + 2
        X = rng.standard_normal((m, dim)) + 1j * rng.standard_normal((m, dim))
        out = io.point_cloud_record(X)
    else:
        rng = np.random.default_rng(seed)
        m = count or 3 * dim
        A = random_unit_vectors(rng, m, dim)
        out = io.slabs_record([(a, b) for a, b in zip(A, rng.uniform(0.5, 2.0, m))])
    _emit(cfg, out)
    return EXIT_OK


def cmd_verify_theorems(cfg, inject_fault=None, timing=True):
    records = run_suite(seed=cfg.seed, inject_fault=inject_fault, timing=timing)
    ok = all(r["passed"] for r in records)
    failed = [r["name"] for r in records if not r["passed"]]
    report = {"command": cfg.command, "seed": cfg.seed, "verdict": ok,
              "witness": failed or None, "inject_fault": inject_fault,
              "passed": sum(r["passed"] for r in records), "total": len(records)}
    if cfg.format == "csv":
        report.update({r["name"]: r["passed"] for r in records})
    else:
        report["checks"] = records
    _emit(cfg, report)
    return EXIT_OK if ok else EXIT_VIOLATED


# --------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), keeping 2 for non-convergence."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("invalid seed %r" % text) from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--input", help="input JSON file")
    common.add_argument("--output", help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="verdict tolerance")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="solver duality-gap tolerance")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--lines", type=int, default=1000, dest="num_lines")
    common.add_argument("--dirs", type=int, default=16, dest="num_dirs")
    common.add_argument("--planes", type=int, default=10, dest="num_planes")
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, dest="max_iter")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(
        prog="complex-ellipsoids",
        description="Extremal complex ellipsoids and numerical ellipsoid characterizations.")
    sub = parser.add_subparsers(dest="command", required=True)
    m = sub.add_parser("mice", parents=[common], help="minimal ellipsoid around a point cloud")
    m.add_argument("--centered", action="store_true",
                   help="require the centre at 0 (minimal ellipsoid of the circle orbits)")
    sub.add_parser("maie", parents=[common], help="maximal ellipsoid inside symmetric slabs")
    sub.add_parser("symmetry", parents=[common], help="find a centre of complex symmetry")
    sub.add_parser("bombon", parents=[common], help="test that all line sections are disks")
    g = sub.add_parser("gen", parents=[common], help="write a generated input file")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--count", type=int, help="number of points or slabs")
    g.add_argument("--p", type=float, default=4.0, help="exponent for lp_ball")
    g.add_argument("--amplitude", type=float, default=0.1, help="perturbation size")
    v = sub.add_parser("verify-theorems", parents=[common], help="run the seeded check suite")
    v.add_argument("--inject-fault", choices=sorted(CHECKS), metavar="CHECK",
                   help="flip one sign inside CHECK; its scoreboard entry must fail")
    v.add_argument("--no-timing", action="store_true",
                   help="omit runtimes so repeated runs are byte-identical")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.command, args.input, args.output, args.tol, args.eps, args.seed,
                    args.num_lines, args.num_dirs, args.num_planes, args.max_iter, args.format)
    try:
        cfg.validate()
        if cfg.command == "mice":
            return cmd_mice(cfg, args.centered)
        if cfg.command == "maie":
            return cmd_maie(cfg)
        if cfg.command == "symmetry":
            return cmd_symmetry(cfg)
        if cfg.command == "bombon":
            return cmd_bombon(cfg)
        if cfg.command == "gen":
            return cmd_gen(cfg, args.kind, args.dim, args.count, args.p, args.amplitude)
        return cmd_verify_theorems(cfg, args.inject_fault, not args.no_timing)
    except io.InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
