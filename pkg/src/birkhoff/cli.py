"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 input outside the domain of
the requested operation. Objects print as JSON, tables as CSV, unless
``--format`` says otherwise.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import figures, oracle
from .classifier import classify
from .errors import DomainError
from .order4 import Coord4, from_coords4, rep3, rep3_multiplicativity_residual, to_coords4
from .polytope3 import (
    DEFAULT_EPS,
    CoordUW,
    HalfPlaneCoord,
    boundary_f,
    from_coords,
    half_plane_of,
    normalize_angle,
    to_coords,
)
from .qubit import (
    DensityMatrix2,
    PauliChannel,
    RateVector,
    apply_channel,
    consistency_residual,
    layer_lambda,
    markov_family,
    to_classical,
    transfer_eigenvalues,
)
from .semigroups import (
    SemigroupSpec,
    expm,
    general_point,
    generator,
    is_markov_generator,
    neutral_family_point,
    stays_bistochastic,
    sym_point,
)
from .serialize import complex_pair, dumps, flatten, matrix_from_json, matrix_to_json, parse_complex, to_csv


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Table:
    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = [list(r) for r in rows]


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _read_matrix(path: str) -> np.ndarray:
    try:
        return matrix_from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _coord_summary(c: CoordUW) -> dict:
    return {**c.to_dict(), "matrix": matrix_to_json(from_coords(c))}


# -- subcommands -------------------------------------------------------------


def cmd_coords(args):
    if args.order == 3:
        if args.matrix:
            return to_coords(_read_matrix(args.matrix), args.eps).to_dict()
        if args.coords:
            c = CoordUW.from_dict(_read_json(args.coords))
        elif args.zero:
            c = CoordUW(0, 0)
        elif args.u is not None or args.w is not None:
            c = CoordUW(args.u or 0, args.w or 0)
        else:
            raise UsageError("give --matrix, --coords, --zero or --u/--w")
        return matrix_to_json(from_coords(c))
    if args.matrix:
        return to_coords4(_read_matrix(args.matrix), args.eps).to_dict()
    if args.coords:
        c4 = Coord4.from_dict(_read_json(args.coords))
    elif args.zero:
        c4 = Coord4()
    else:
        c4 = Coord4(args.u or 0, args.w2 or 0, args.w3 or 0, args.w4 or 0, args.x or 0.0)
    return matrix_to_json(from_coords4(c4))


def _halfplane_from_args(args) -> HalfPlaneCoord:
    if args.matrix:
        m = _read_matrix(args.matrix)
        return half_plane_of(to_coords(m, args.eps), args.eps)
    if args.a is None or args.b is None:
        raise UsageError("give --matrix or --a and --b (with optional --phi)")
    if args.b < 0:
        raise DomainError("--b must be >= 0")
    return HalfPlaneCoord(normalize_angle(args.phi), args.a, args.b, all_planes=args.b <= args.eps)


def cmd_classify(args):
    if args.grid:
        phis = [2 * math.pi * k / args.phi_samples for k in range(args.phi_samples)]
        rows = oracle.agreement_sweep(oracle.triangle_grid(phis, args.steps), args.n_max, args.eps)
        return Table(
            ["phi", "a", "b", "classifier_verdict", "oracle_verdict", "agree"],
            [[r.phi, r.a, r.b, r.classifier_verdict, r.oracle_verdict, r.agree] for r in rows],
        )
    h = _halfplane_from_args(args)
    result = classify(h, args.eps).to_dict()
    if args.verify:
        divisible = oracle.is_inf_divisible(h, args.n_max, args.eps)
        result["oracle"] = {
            "inf_divisible": divisible,
            "n_max": args.n_max,
            "first_missing_root": oracle.first_missing_root(h, args.n_max, args.eps),
            "agree": divisible == (result["markov_class"] != "NOT_MARKOV"),
        }
    return result


def cmd_semigroup(args):
    if args.theta is not None:
        c = sym_point(args.theta, args.phi, args.t)
        out = {"theta": args.theta, "phi": args.phi, "t": args.t, **_coord_summary(c)}
        return out
    if args.neutral:
        c = neutral_family_point(args.phi, args.t)
        return {"phi": args.phi, "t": args.t, **_coord_summary(c)}
    spec = SemigroupSpec(args.a, complex(args.b_re, args.b_im))
    c = general_point(spec, args.t)
    out = {"a": spec.a, "b": complex_pair(spec.b), "t": args.t, **_coord_summary(c)}
    if args.generator:
        l = generator(spec)
        out["generator"] = matrix_to_json(l)
        out["markov_generator"] = is_markov_generator(l, args.eps)
        out["expm"] = matrix_to_json(expm(l, args.t))
    if args.horizon is not None:
        out["stays_bistochastic"] = stays_bistochastic(spec, args.horizon, args.samples, args.eps)
        out["horizon"] = args.horizon
    return out


def cmd_boundary(args):
    if args.phi:
        return Table(
            ["phi", "f", "f_numeric"],
            [[p, boundary_f(p), oracle.f_numeric(p)] for p in args.phi],
        )
    header, rows = figures.boundary(args.samples)
    return Table(header, rows)


def cmd_roots(args):
    h = _halfplane_from_args(args)
    roots = oracle.nth_roots(h, args.n, args.eps)
    return {
        "input": {"phi": h.phi, "a": h.a, "b": h.b},
        "n": args.n,
        "roots": [{"phi": r.phi, "a": r.a, "b": r.b} for r in roots],
        "inf_divisible": oracle.is_inf_divisible(h, args.n_max, args.eps),
        "n_max": args.n_max,
    }


def cmd_pauli(args):
    if args.vx is not None:
        v = RateVector(args.vx, args.vy or 0.0, args.vz or 0.0)
        ch = markov_family(v, args.t)
        out = {"rates": {"vx": v.vx, "vy": v.vy, "vz": v.vz}, "t": args.t}
        out["consistency_residual"] = consistency_residual(v, args.t)
    else:
        ch = PauliChannel(args.ax, args.ay, args.az)
        out = {}
    out.update(
        {
            "channel": ch.to_dict(),
            "a0": ch.a0,
            "classical": matrix_to_json(to_classical(ch)),
            "lambda": layer_lambda(ch),
            "transfer_eigenvalues": list(transfer_eigenvalues(ch)),
        }
    )
    if args.rho:
        data = _read_json(args.rho)
        rho = DensityMatrix2(float(data["p1"]), float(data["p2"]), parse_complex(data.get("c", 0)))
        out["output_state"] = apply_channel(ch, rho).to_dict()
    return out


def cmd_order4(args):
    if args.check_rep3:
        rep = rep3_multiplicativity_residual(args.check_rep3, args.seed)
        return {"pairs": rep.pairs, "max_residual": rep.max_residual, "threshold": rep.threshold, "holds": rep.holds}
    if args.matrix:
        c = to_coords4(_read_matrix(args.matrix), args.eps)
    elif args.coords:
        c = Coord4.from_dict(_read_json(args.coords))
    else:
        c = Coord4()
    out = {"coords": c.to_dict(), "matrix": matrix_to_json(from_coords4(c))}
    if args.rep3:
        out["rep3"] = matrix_to_json(rep3(c))
    return out


def cmd_figure(args):
    which = args.which
    if which == "polytope3":
        header, rows = figures.polytope3()
    elif which == "bipyramid":
        header, rows = figures.bipyramid()
    elif which == "halfplane":
        header, rows = figures.halfplane(args.phi, args.samples or 50, args.t_max)
    elif which == "boundary":
        header, rows = figures.boundary(args.samples or 720)
    elif which == "semigroup":
        spec = SemigroupSpec(args.a, complex(args.b_re, args.b_im))
        header, rows = figures.semigroup(spec, args.t_max, args.steps, args.at)
    else:
        rates = None
        if args.vx is not None:
            rates = RateVector(args.vx, args.vy or 0.0, args.vz or 0.0)
        header, rows = figures.pauli(args.layers, rates, args.t_max, args.steps)
    return Table(header, rows)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="membership tolerance")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", default=None, help="write to PATH instead of stdout")

    parser = _Parser(prog="birkhoff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coords", parents=[common], help="convert between matrices and coordinates")
    p.add_argument("--order", type=int, choices=(3, 4), default=3)
    p.add_argument("--matrix", help="JSON matrix file ('-' for stdin)")
    p.add_argument("--coords", help="JSON coordinate file")
    p.add_argument("--zero", action="store_true")
    p.add_argument("--u", type=_complex_arg)
    p.add_argument("--w", type=_complex_arg)
    p.add_argument("--w2", type=_complex_arg)
    p.add_argument("--w3", type=_complex_arg)
    p.add_argument("--w4", type=_complex_arg)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_coords)

    def add_halfplane(p):
        p.add_argument("--phi", type=float, default=0.0)
        p.add_argument("--a", type=float)
        p.add_argument("--b", type=float)
        p.add_argument("--matrix", help="JSON 3x3 symmetric matrix")
        p.add_argument("--n-max", type=int, default=oracle.DEFAULT_N_MAX)

    p = sub.add_parser("classify", parents=[common], help="Markov / divisibility verdict")
    add_halfplane(p)
    p.add_argument("--verify", action="store_true", help="also run the root-enumeration oracle")
    p.add_argument("--grid", action="store_true", help="sweep a lattice of bistochastic points")
    p.add_argument("--phi-samples", type=int, default=24)
    p.add_argument("--steps", type=int, default=28, help="lattice intervals per triangle edge")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("semigroup", parents=[common], help="points of one-parameter semigroups")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b-re", type=float, default=0.0)
    p.add_argument("--b-im", type=float, default=0.0)
    p.add_argument("--theta", type=float, help="symmetric semigroup angle (uses --phi)")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--neutral", action="store_true", help="non-identity-neutral family at --phi")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--generator", action="store_true", help="include generator and expm(tL)")
    p.add_argument("--horizon", type=float, help="sampled stays-bistochastic check up to this time")
    p.add_argument("--samples", type=int, default=1001)
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("boundary", parents=[common], help="boundary function f(phi)")
    p.add_argument("--phi", type=float, action="append")
    p.add_argument("--samples", type=int, default=720)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("roots", parents=[common], help="symmetric bistochastic nth roots")
    add_halfplane(p)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("pauli", parents=[common], help="Pauli channels and their classical shadow")
    p.add_argument("--ax", type=float, default=0.0)
    p.add_argument("--ay", type=float, default=0.0)
    p.add_argument("--az", type=float, default=0.0)
    p.add_argument("--vx", type=float, help="Markov family rates (with --vy, --vz, --t)")
    p.add_argument("--vy", type=float)
    p.add_argument("--vz", type=float)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--rho", help="JSON state {p1, p2, c} to push through the channel")
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("order4", parents=[common], help="order-4 parametrization")
    p.add_argument("--matrix")
    p.add_argument("--coords")
    p.add_argument("--zero", action="store_true")
    p.add_argument("--rep3", action="store_true")
    p.add_argument("--check-rep3", type=int, metavar="PAIRS")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_order4)

    p = sub.add_parser("figure", parents=[common], help="figure data as CSV")
    p.add_argument("--which", required=True, choices=figures.FIGURES)
    p.add_argument("--samples", type=int)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b-re", type=float, default=0.0)
    p.add_argument("--b-im", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--at", type=float, action="append", default=[], help="extra sample time")
    p.add_argument("--layers", type=int, default=5)
    p.add_argument("--vx", type=float)
    p.add_argument("--vy", type=float)
    p.add_argument("--vz", type=float)
    p.set_defaults(func=cmd_figure)
    return parser


def render(result, fmt: str | None) -> str:
    if isinstance(result, Table):
        if fmt == "json":
            return dumps([dict(zip(result.header, row)) for row in result.rows])
        return to_csv(result.header, result.rows)
    if fmt == "csv":
        flat = flatten(result)
        return to_csv(list(flat), [list(flat.values())])
    return dumps(result)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = render(args.func(args), args.format)
    except UsageError as exc:
        print(f"birkhoff: error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"birkhoff: domain error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
