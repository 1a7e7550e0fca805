"""Command-line front end: load, validate, check, construct, report.

Exit codes: 0 on pass/success, 1 on a verified failure (with a witness in
the report), 2 on input errors (unreadable files, schema violations, caps
exceeded).  All reports are deterministic; output files are written
atomically with stable key order.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .ainf import AInfCategory, AInfError
from .colimit import AInfDiagram, DiagramError, GlobalComplex, build_colimit
from .fibration import (
    FibrationError,
    check_fibration,
    recheck_square_witness,
)
from .gf2 import Gf2Vector
from .homotopy import (
    HomotopyError,
    is_kan,
    is_quasi_category,
    maximal_kan_subcomplex,
    recheck_witness,
    tau,
    tau0,
)
from .nerve import (
    NerveError,
    NerveSimplex,
    NerveTruncation,
    enumerate_simplices,
    fill_inner_horn,
    is_nerve_simplex,
)
from .serialize import canonical_dumps, read_json, write_atomic
from .simplicial import SimplicialError, SimplicialMap, SimplicialSet

INPUT_ERRORS = (
    AInfError,
    DiagramError,
    FibrationError,
    HomotopyError,
    NerveError,
    SimplicialError,
    KeyError,
    ValueError,
    OSError,
)


class Workspace:
    """Loads inputs and validates them before any command logic runs."""

    def load_category(self, path: str) -> AInfCategory:
        cat = AInfCategory.from_json(read_json(path))
        units = cat.check_strict_units()
        if units is not None:
            raise AInfError(f"{path}: {units.describe()}")
        violation = cat.check_ainf_relations()
        if violation is not None:
            raise AInfError(f"{path}: {violation.describe()}")
        return cat

    def load_sset(self, path: str) -> SimplicialSet:
        return SimplicialSet.from_json(read_json(path))

    def load_diagram(self, path: str) -> AInfDiagram:
        diagram = AInfDiagram.from_json(read_json(path))
        diagram.validate()
        return diagram


def _emit(doc, out: Optional[str]) -> None:
    if out:
        write_atomic(out, doc)
    else:
        sys.stdout.write(canonical_dumps(doc))


def _parse_horn_values(cat: AInfCategory, vertices: list[str], f_doc: dict) -> dict:
    data = {}
    for key, labels in f_doc.items():
        subset = tuple(int(p) for p in key.split(","))
        pair = (vertices[subset[0]], vertices[subset[-1]])
        vec = cat.zero(pair)
        for lbl in labels:
            if cat.label_pair.get(lbl) != pair:
                raise NerveError(f"label {lbl!r} not in hom{pair}")
            vec = vec + cat.basis_vector(lbl)
        data[subset] = vec
    return data


def cmd_check_ainf(args) -> int:
    ws = Workspace()
    cat = AInfCategory.from_json(read_json(args.category))
    if args.witness:
        witness = read_json(args.witness)
        chain = tuple(witness["chain"])
        residual = cat.relation_residual(chain)
        _emit(
            {
                "check": "ainf_relations",
                "witness_chain": list(chain),
                "reproduced": not residual.is_zero(),
            },
            args.out,
        )
        return 1 if not residual.is_zero() else 0
    units = cat.check_strict_units()
    violation = cat.check_ainf_relations(args.dmax) if units is None else None
    passed = units is None and violation is None
    report = {
        "check": "ainf",
        "dmax": args.dmax if args.dmax is not None else 2 * cat.max_arity,
        "pass": passed,
        "witness": None,
    }
    if units is not None:
        report["witness"] = {"kind": "unit", "detail": list(units.detail), "law": units.kind}
    elif violation is not None:
        pair = (
            cat.label_pair[violation.chain[0]][0],
            cat.label_pair[violation.chain[-1]][1],
        )
        report["witness"] = {
            "kind": "relation",
            "d": violation.d,
            "chain": list(violation.chain),
            "residual": cat.labels_of(pair, violation.residual),
        }
    _emit(report, args.out)
    return 0 if passed else 1


def cmd_nerve(args) -> int:
    ws = Workspace()
    cat = ws.load_category(args.category)
    trunc = NerveTruncation(cat, args.cap)
    doc = trunc.sset.to_json()
    doc["simplices"] = {cid: trunc.by_id[cid].to_json() for cid in sorted(trunc.by_id)}
    _emit(doc, args.out)
    return 0


def cmd_fill_horn(args) -> int:
    ws = Workspace()
    cat = ws.load_category(args.category)
    horn_doc = read_json(args.horn)
    vertices = list(horn_doc["vertices"])
    if len(vertices) != args.n + 1:
        raise NerveError("horn vertex count does not match --n")
    data = _parse_horn_values(cat, vertices, horn_doc.get("f", {}))
    filler = fill_inner_horn(cat, vertices, data, args.k)
    ok, witness = is_nerve_simplex(filler)
    doc = filler.to_json()
    doc["valid"] = ok
    if witness is not None:
        doc["witness_subset"] = list(witness)
    _emit(doc, args.out)
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    ws = Workspace()
    cat = ws.load_category(args.category)
    vertices = args.vertices.split(",") if args.vertices else None
    found = enumerate_simplices(cat, args.n, vertices=vertices)
    _emit(
        {
            "count": len(found),
            "n": args.n,
            "simplices": [s.to_json() for s in found],
        },
        args.out,
    )
    return 0


def cmd_tau(args) -> int:
    ws = Workspace()
    sset = ws.load_sset(args.complex)
    ho = tau(sset, args.cap)
    _emit(ho.to_json(), args.out)
    return 0


def cmd_tau0(args) -> int:
    ws = Workspace()
    sset = ws.load_sset(args.complex)
    classes = tau0(sset, args.cap)
    _emit(
        {"check": "tau0", "cap": args.cap, "classes": [sorted(c) for c in classes]},
        args.out,
    )
    return 0


def cmd_kan_subcomplex(args) -> int:
    ws = Workspace()
    sset = ws.load_sset(args.complex)
    sub = maximal_kan_subcomplex(sset, args.cap)
    _emit(sub.to_json(), args.out)
    return 0


def cmd_check_qcat(args) -> int:
    ws = Workspace()
    sset = ws.load_sset(args.complex)
    if args.witness:
        witness = read_json(args.witness)
        reproduced = recheck_witness(sset, witness)
        _emit(
            {"check": "witness", "cap": args.cap, "reproduced": reproduced},
            args.out,
        )
        return 1 if reproduced else 0
    report = is_kan(sset, args.cap) if args.kan else is_quasi_category(sset, args.cap)
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


def cmd_colimit(args) -> int:
    ws = Workspace()
    diagram = ws.load_diagram(args.diagram)
    gc = build_colimit(diagram, args.cap)
    doc = gc.to_json()
    doc["diagram"] = diagram.to_json()
    _emit(doc, args.out)
    return 0


def _rebuild_colimit(doc: dict) -> GlobalComplex:
    diagram = AInfDiagram.from_json(doc["diagram"])
    diagram.validate()
    gc = build_colimit(diagram, int(doc["cap"]))
    rebuilt = gc.to_json()
    for key in ("L", "p", "cells"):
        if canonical_dumps(rebuilt[key]) != canonical_dumps(doc[key]):
            raise DiagramError(f"stored colimit does not match its diagram ({key})")
    return gc


def cmd_check_fibration(args) -> int:
    doc = read_json(args.complex)
    gc = _rebuild_colimit(doc)
    cap = min(args.cap, gc.cap)
    if args.witness:
        witness = read_json(args.witness)
        reproduced = recheck_square_witness(gc.projection, witness)
        _emit({"check": "witness", "reproduced": reproduced}, args.out)
        return 1 if reproduced else 0
    report = check_fibration(gc, cap, direction=args.direction)
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ainfnerve",
        description="Finite A-infinity categories over F2: nerves, horn "
        "filling, homotopy categories, colimits, fibration checks.",
    )
    parser.add_argument("--seed", type=int, default=None, help="recorded for reproducibility")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-ainf", help="verify the A-infinity relations and strict units")
    p.add_argument("category")
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--witness", help="re-check a previously reported relation witness")
    p.set_defaults(func=cmd_check_ainf)

    p = sub.add_parser("nerve", help="write the truncated nerve as a simplicial set")
    p.add_argument("category")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("fill-horn", help="fill an inner horn by the explicit formula")
    p.add_argument("category")
    p.add_argument("horn")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fill_horn)

    p = sub.add_parser("enumerate", help="enumerate nerve simplices")
    p.add_argument("category")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vertices", help="comma-separated vertex objects")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("tau", help="homotopy category of a quasi-category truncation")
    p.add_argument("complex")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("tau0", help="isomorphism classes of objects in tau")
    p.add_argument("complex")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tau0)

    p = sub.add_parser("kan-subcomplex", help="maximal Kan subcomplex")
    p.add_argument("complex")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_kan_subcomplex)

    p = sub.add_parser("check-qcat", help="exhaustive (inner) horn filling check")
    p.add_argument("complex")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--kan", action="store_true", help="check all horns, not only inner")
    p.add_argument("--out")
    p.add_argument("--witness", help="re-check a previously reported horn witness")
    p.set_defaults(func=cmd_check_qcat)

    p = sub.add_parser("colimit", help="build the colimit of nerves over the base")
    p.add_argument("diagram")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_colimit)

    p = sub.add_parser("check-fibration", help="inner/co-Cartesian fibration checks")
    p.add_argument("complex", help="output of the colimit command")
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--direction", choices=["co", "contra"], default="co")
    p.add_argument("--out")
    p.add_argument("--witness", help="re-check a previously reported witness")
    p.set_defaults(func=cmd_check_fibration)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
