"""``tailspec`` command line.

Verbs: charpoly, spectrum, family, verify, green, schur-demo. Reports go to
stdout (or ``--output``) as JSON, or CSV with ``--format csv``. Exit status is
0 on success, 2 for bad input, 1 for a numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from .families import FLOWER, STAR, FamilySpec, family_spectrum
from .graph import Graph, build_flower, build_multistar, delete_vertices
from .oracle import DEFAULT_LENGTHS, DEFAULT_MARGIN, convergence_study, reports_to_csv, resolvent_check, schur_identity_check
from .poly import charpoly
from .tail import discrete_spectrum, full_spectrum_report, green_free

DEFAULT_TOL = 1e-12


class InputError(ValueError):
    pass


# -- output ---------------------------------------------------------------------


def format_float(v: float) -> str:
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float at 17 significant digits; non-finite floats become null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# -- input ------------------------------------------------------------------------


def parse_ints(text: str) -> list[int]:
    try:
        vals = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty integer list")
    return vals


def load_graph(source: str) -> Graph:
    """Graph from a JSON file path or an inline JSON object."""
    text = source if source.lstrip().startswith("{") else None
    if text is None:
        if not os.path.exists(source):
            raise InputError(f"no such file: {source}")
        with open(source) as fh:
            text = fh.read()
    try:
        return Graph.from_json(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed graph JSON: {exc}") from None


def _family_from_args(args) -> Optional[FamilySpec]:
    fam = STAR if args.star else FLOWER if args.flower else None
    if fam is None:
        if args.k is not None:
            raise InputError("--k needs --star or --flower")
        return None
    if args.k is None:
        raise InputError("--star/--flower need --k")
    return FamilySpec(fam, tuple(args.k))


def graph_from_args(args, need_anchor: bool) -> Graph:
    spec = _family_from_args(args)
    if spec is not None and args.graph is not None:
        raise InputError("give either a graph or --star/--flower, not both")
    if spec is not None:
        g = build_multistar(spec.kappa) if spec.family == STAR else build_flower(spec.kappa)
    elif args.graph is not None:
        g = load_graph(args.graph)
    else:
        raise InputError("no graph given (path, inline JSON, or --star/--flower --k)")
    if need_anchor and g.anchor is None:
        raise InputError("graph needs an 'anchor' for this command")
    return g


# -- verbs -------------------------------------------------------------------------


def cmd_charpoly(args) -> str:
    g = graph_from_args(args, need_anchor=False)
    p = charpoly(g)
    out = {"n": g.n, "coefficients": p.to_strings()}
    if g.anchor is not None:
        out["anchor"] = g.anchor
        out["coefficients_minus_anchor"] = charpoly(delete_vertices(g, [g.anchor])).to_strings()
    if args.format == "csv":
        return _csv(["power", "coefficient"], enumerate(out["coefficients"]))
    return dumps(out)


def cmd_spectrum(args) -> str:
    g = graph_from_args(args, need_anchor=True)
    rep = full_spectrum_report(g, tol=args.tol)
    if args.format == "csv":
        return _csv(["lambda", "x", "side", "residual"], ((e.lam, e.x, e.side, e.residual) for e in rep.eigenvalues))
    return dumps(rep.to_dict())


def cmd_family(args) -> str:
    spec = _family_from_args(args)
    if spec is None:
        raise InputError("family needs --star or --flower")
    rep = family_spectrum(spec, tol=args.tol)
    if args.format == "csv":
        rows = []
        if rep.t_minus is not None:
            rows.append(("below-band", rep.t_minus, rep.lambda_minus))
        if rep.t_plus is not None:
            rows.append(("above-band", rep.t_plus, rep.lambda_plus))
        return _csv(["side", "t", "lambda"], rows)
    return dumps(rep.to_dict())


def cmd_verify(args) -> str:
    g = graph_from_args(args, need_anchor=True)
    predicted = discrete_spectrum(g, tol=args.tol).lambdas
    reports = convergence_study(g, args.lengths, args.margin, predicted)
    if args.format == "csv":
        return reports_to_csv(reports)
    return dumps({
        "graph": g.to_dict(),
        "margin": args.margin,
        "predicted": sorted(predicted),
        "reports": [r.to_dict() for r in reports],
    })


def cmd_green(args) -> str:
    if not 0 < abs(args.z) < 1:
        raise InputError(f"--z must satisfy 0 < |z| < 1, got {args.z}")
    closed = green_free(args.z, args.i, args.j)
    out = {"z": args.z, "i": args.i, "j": args.j, "lambda": args.z + 1 / args.z, "closed_form": closed}
    if args.L is not None:
        out["L"] = args.L
        out["residual"] = resolvent_check(args.z, args.i, args.j, args.L)
    if args.format == "csv":
        keys = list(out)
        return _csv(keys, [[out[k] for k in keys]])
    return dumps(out)


def cmd_schur_demo(args) -> str:
    res = schur_identity_check(args.dim1, args.dim2, args.seed)
    res = {k: float(v) for k, v in res.items()}
    if args.format == "csv":
        return _csv(["check", "residual"], res.items())
    return dumps({"dim1": args.dim1, "dim2": args.dim2, "seed": args.seed, "residuals": res})


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph", nargs="?", help="graph JSON file or inline JSON object")
    fam = graph_in.add_mutually_exclusive_group()
    fam.add_argument("--star", action="store_true", help="multiple star S(k) rooted at its centre")
    fam.add_argument("--flower", action="store_true", help="flower of cycles rooted at the common vertex")
    graph_in.add_argument("--k", type=parse_ints, help="comma-separated kappa, e.g. 1,1,1")

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=float, default=DEFAULT_TOL, help="root refinement tolerance")

    p = argparse.ArgumentParser(prog="tailspec", description="Spectra of finite graphs with an infinite path attached.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("charpoly", parents=[common, graph_in], help="exact characteristic polynomial")
    s.set_defaults(func=cmd_charpoly)
    s = sub.add_parser("spectrum", parents=[common, graph_in, tol], help="band and discrete spectrum")
    s.set_defaults(func=cmd_spectrum)
    s = sub.add_parser("family", parents=[common, graph_in, tol], help="closed-form star/flower solver")
    s.set_defaults(func=cmd_family)
    s = sub.add_parser("verify", parents=[common, graph_in, tol], help="truncation convergence study")
    s.add_argument("--lengths", type=parse_ints, default=list(DEFAULT_LENGTHS))
    s.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("green", parents=[common], help="free half-line resolvent entry")
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--L", type=int, help="also compare against a truncation of this length")
    s.set_defaults(func=cmd_green)
    s = sub.add_parser("schur-demo", parents=[common], help="block factorization identity residuals")
    s.add_argument("--dim1", type=int, default=3)
    s.add_argument("--dim2", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_schur_demo)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "family" and args.graph is not None:
        print("tailspec: error: family takes no graph argument", file=sys.stderr)
        return 2
    try:
        text = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"tailspec: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"tailspec: numerical failure: {exc}", file=sys.stderr)
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
