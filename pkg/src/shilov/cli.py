"""Command-line front end.

Input is JSON read from a file, from stdin (``-``), or given inline.  Every
command prints one JSON document (or aligned text with ``--format text``)
to stdout; failures print ``{"error": {"code", "message"}}`` and exit with
1 (validation), 2 (numerical instability) or 3 (parse error).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import invariants as inv
from .errors import ParseError, RankMismatch, ShilovError, ValidationError
from .jts import Flavor
from .lagrangian import LagrangianSubspace, kashiwara_index
from .matrices import (
    EPS_RANK,
    BoundaryMatrix,
    direct_invariants,
    embed_torus,
    reduce_to_torus,
    transversality_index,
)
from .polydisc import TorusPoint, standard_triple, torus_invariants


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _read_input(source):
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _points(data, count):
    pts = data.get("points") if isinstance(data, dict) else data
    if not isinstance(pts, list) or len(pts) != count:
        raise ParseError(f"expected a list of {count} points")
    return pts


def _parse_point(obj, flavor_override=None):
    """A torus point, a boundary matrix or a Lagrangian basis."""
    if not isinstance(obj, dict):
        raise ParseError("each point must be a JSON object")
    if "turns" in obj:
        return TorusPoint.from_json(obj)
    if "basis" in obj:
        return LagrangianSubspace.from_json(obj)
    if "re" in obj:
        if flavor_override is not None and "flavor" not in obj:
            obj = {**obj, "flavor": flavor_override.value}
        return BoundaryMatrix.from_json(obj)
    raise ParseError("point must have 'turns', 're'/'im' or 'basis'")


def _same_kind(pts):
    kinds = {type(p) for p in pts}
    if len(kinds) != 1:
        raise ValidationError("all points must be of the same kind")
    if isinstance(pts[0], BoundaryMatrix) and len({p.flavor for p in pts}) != 1:
        raise ValidationError("all matrices must have the same flavor")
    return pts


def _load(args, count):
    flavor = Flavor.parse(args.flavor) if args.flavor else None
    return _same_kind([_parse_point(p, flavor) for p in _points(_read_input(args.input), count)])


def _rank_tol(args):
    return args.tol if args.tol is not None else EPS_RANK


def _triple_report(inv_, reduction=None):
    N = inv.to_monotone_tuple(inv_)
    out = {
        "invariant": inv_.to_json(),
        "N": list(N.values),
        "standard": [t.to_json() for t in standard_triple(N, inv_.r)],
    }
    if reduction is not None:
        g, *ts = reduction
        out["witness"] = g.to_json()
        out["torus"] = [t.to_json() for t in ts]
    return out


def cmd_classify_triple(args):
    pts = _load(args, 3)
    if isinstance(pts[0], TorusPoint):
        return _triple_report(torus_invariants(*pts))
    if isinstance(pts[0], LagrangianSubspace):
        raise ValidationError("classify-triple takes torus points or boundary matrices")
    flavor = pts[0].flavor
    found = direct_invariants(flavor, *pts, tol=_rank_tol(args))
    reduction = reduce_to_torus(flavor, *pts, rank_tol=_rank_tol(args)) if args.witness else None
    return {"flavor": flavor.value, **_triple_report(found, reduction)}


def cmd_classify_pair(args):
    x, y = _load(args, 2)
    if isinstance(x, TorusPoint):
        if x.rank != y.rank:
            raise RankMismatch("torus points of different rank")
        mu, r = sum(a == b for a, b in zip(x, y)), x.rank
    elif isinstance(x, BoundaryMatrix):
        mu, r = transversality_index(x.flavor, x, y, _rank_tol(args)), x.n
    else:
        raise ValidationError("classify-pair takes torus points or boundary matrices")
    return inv.pair_class(mu, r).to_json()


def _parse_N(args):
    if args.N is not None:
        try:
            values = tuple(int(v) for v in args.N.replace(" ", "").split(","))
        except ValueError:
            raise ParseError(f"bad tuple {args.N!r}") from None
        return inv.MonotoneTuple(values)
    return inv.MonotoneTuple.from_json(_read_input(args.input))


def cmd_standard(args):
    if args.rank is None:
        raise ParseError("--rank is required")
    N = _parse_N(args)
    ts = standard_triple(N, args.rank)
    out = {"N": list(N.values), "r": args.rank, "torus": [t.to_json() for t in ts],
           "invariant": inv.from_monotone_tuple(N, args.rank).to_json()}
    if args.flavor:
        flavor = Flavor.parse(args.flavor)
        out["matrices"] = [embed_torus(flavor, t).to_json() for t in ts]
    return out


def cmd_enumerate(args):
    if args.rank is None:
        raise ParseError("--rank is required")
    rows = []
    for N in inv.enumerate_orbits(args.rank):
        o = inv.from_monotone_tuple(N, args.rank)
        rows.append({"N": list(N.values), **o.to_json()})
    return {"r": args.rank, "count": len(rows), "orbits": rows}


def cmd_reduce(args):
    pts = _load(args, 3)
    if not isinstance(pts[0], BoundaryMatrix):
        raise ValidationError("reduce takes three boundary matrices")
    g, *ts = reduce_to_torus(pts[0].flavor, *pts, rank_tol=_rank_tol(args))
    return {"flavor": pts[0].flavor.value, "witness": g.to_json(), "torus": [t.to_json() for t in ts]}


def cmd_maslov(args):
    pts = _load(args, 3)
    if isinstance(pts[0], TorusPoint):
        value = torus_invariants(*pts).iota
    elif isinstance(pts[0], LagrangianSubspace):
        value = kashiwara_index(*pts, tol=_rank_tol(args))
    else:
        value = direct_invariants(pts[0].flavor, *pts, tol=_rank_tol(args)).iota
    return {"maslov": value}


def _complex_vector(obj):
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad vector: {exc}") from None
    return re + 1j * im


def cmd_cartan(args):
    data = _read_input(args.input)
    vecs = data.get("vectors") if isinstance(data, dict) else data
    if not isinstance(vecs, list) or len(vecs) != 3:
        raise ParseError("expected three vectors")
    tol = args.tol if args.tol is not None else 1e-8
    value = inv.cartan_invariant(*(_complex_vector(v) for v in vecs), tol=tol)
    return {"cartan": {"re": value.real, "im": value.imag}}


def cmd_selftest(args):
    from .selftest import run_all

    results = run_all(args.seed)
    return {"seed": args.seed, "passed": all(r.passed for r in results),
            "suites": [r.to_json() for r in results]}


COMMANDS = {
    "classify-triple": cmd_classify_triple,
    "classify-pair": cmd_classify_pair,
    "standard": cmd_standard,
    "enumerate": cmd_enumerate,
    "reduce": cmd_reduce,
    "maslov": cmd_maslov,
    "cartan": cmd_cartan,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shilov", description="Classify triples and pairs on Shilov boundaries.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", nargs="?", help="JSON file, inline JSON, or - for stdin")
    parser.add_argument("--flavor", help="POLYDISC, SYMMETRIC or HERMITIAN")
    parser.add_argument("--rank", type=int)
    parser.add_argument("--N", help="monotone tuple, e.g. 0,0,0,0,1")
    parser.add_argument("--tol", type=float, help="rank/zero threshold override")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--witness", action="store_true", help="include the reducing group element")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _text(obj, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(obj, fmt, stream):
    if fmt == "text":
        stream.write("\n".join(_text(obj)) + "\n")
    else:
        stream.write(json.dumps(obj, sort_keys=True) + "\n")


def main(argv=None) -> int:
    fmt = "json"
    try:
        args = build_parser().parse_intermixed_args(argv)
        fmt = args.format
        result = COMMANDS[args.command](args)
    except ShilovError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, fmt, sys.stdout)
        print(f"shilov: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status
    _emit(result, fmt, sys.stdout)
    if args.command == "selftest" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
