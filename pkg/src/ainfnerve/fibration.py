"""Bounded-dimension verification of inner / co-Cartesian fibration properties.

Everything is certified only up to the stated cap; reports say so and carry
re-checkable witnesses with a deterministic search order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import ordinal
from .homotopy import (
    HornCheckReport,
    enumerate_horns,
    is_quasi_category,
    tau,
)
from .simplicial import SimplexRef, SimplicialMap, SimplicialSet


class FibrationError(ValueError):
    pass


def _ref_json(ref: SimplexRef) -> dict:
    return {"base": ref.base, "degeneracy_word": list(ordinal.epi_to_word(ref.word))}


def _ref_from_json(sset: SimplicialSet, doc: dict) -> SimplexRef:
    word = tuple(int(x) for x in doc["degeneracy_word"])
    base = doc["base"]
    return SimplexRef(base, ordinal.word_to_epi(word, sset.dim_of(base) + len(word)))


def preimage_subcomplex(p: SimplicialMap, generators: Iterable[str]) -> SimplicialSet:
    """Cells of the domain mapping into the subcomplex the generators span."""
    closure = p.target.degenerate_closure_ids(generators)
    keep = [
        cid
        for cid in p.source.all_cells()
        if p.apply(p.source.ref(cid)).base in closure
    ]
    return p.source.subcomplex(keep)


@dataclass
class InnerFibrationReport:
    cap: int
    lifting_pass: bool
    fiber_pass: bool
    squares_checked: int
    fibers: dict[str, bool]
    witness: Optional[dict] = None

    @property
    def agree(self) -> bool:
        return self.lifting_pass == self.fiber_pass

    @property
    def passed(self) -> bool:
        return self.lifting_pass and self.fiber_pass

    def to_json(self) -> dict:
        return {
            "check": "inner_fibration",
            "cap": self.cap,
            "lifting": {"pass": self.lifting_pass, "squares": self.squares_checked},
            "fibers": {cell: ok for cell, ok in sorted(self.fibers.items())},
            "agree": self.agree,
            "pass": self.passed,
            "witness": self.witness,
        }


def is_inner_fibration(p: SimplicialMap, cap: int) -> InnerFibrationReport:
    """Both characterizations: square lifting and fibers being quasi-categories."""
    domain, base = p.source, p.target
    if cap > domain.cap:
        raise FibrationError("cap exceeds the domain truncation")
    witness = None
    lifting_pass = True
    squares = 0
    for n in range(2, cap + 1):
        for k in range(1, n):
            lift_index: dict[tuple, int] = {}
            for z in domain.simplices(n):
                key = (
                    tuple(domain.d(z, i) for i in range(n + 1) if i != k),
                    p.apply(z),
                )
                lift_index[key] = lift_index.get(key, 0) + 1
            for horn in enumerate_horns(domain, n, k):
                images = {i: p.apply(horn[i]) for i in horn}
                for xi in base.simplices(n):
                    if any(
                        base.d(xi, i) != images[i] for i in range(n + 1) if i != k
                    ):
                        continue
                    squares += 1
                    key = (tuple(horn[i] for i in range(n + 1) if i != k), xi)
                    if key not in lift_index:
                        lifting_pass = False
                        if witness is None:
                            witness = {
                                "kind": "square",
                                "n": n,
                                "k": k,
                                "faces": {
                                    str(i): _ref_json(horn[i]) for i in horn
                                },
                                "base": _ref_json(xi),
                            }
    fibers: dict[str, bool] = {}
    fiber_pass = True
    for d in sorted(base.cells):
        for cell in base.nondegenerate(d):
            sub = preimage_subcomplex(p, [cell])
            report = is_quasi_category(sub, cap)
            fibers[cell] = report.passed
            if not report.passed:
                fiber_pass = False
                if witness is None:
                    witness = {
                        "kind": "fiber",
                        "cell": cell,
                        "horn": report.witness,
                    }
    return InnerFibrationReport(cap, lifting_pass, fiber_pass, squares, fibers, witness)


def recheck_square_witness(p: SimplicialMap, witness: dict) -> bool:
    """True when the witnessed square still has no lift."""
    if witness.get("kind") == "fiber":
        from .homotopy import recheck_witness

        sub = preimage_subcomplex(p, [witness["cell"]])
        return recheck_witness(sub, witness["horn"])
    n, k = int(witness["n"]), int(witness["k"])
    horn = {
        int(i): _ref_from_json(p.source, doc) for i, doc in witness["faces"].items()
    }
    xi = _ref_from_json(p.target, witness["base"])
    for z in p.source.simplices(n):
        if p.apply(z) != xi:
            continue
        if all(p.source.d(z, i) == horn[i] for i in range(n + 1) if i != k):
            return False
    return True


def is_cocartesian_edge(
    p: SimplicialMap, edge: SimplexRef, cap: int
) -> tuple[bool, Optional[dict]]:
    """Exhaustive initial-edge lifting: every Lambda^n_0 problem whose 0-1
    edge is the given one must admit a solution over every compatible base.
    """
    domain, base = p.source, p.target
    if edge.dim != 1:
        raise FibrationError("co-Cartesian test needs an edge")
    for n in range(2, cap + 1):
        # The 0-1 edge sits inside every face d_i with i >= 2.
        edge_mono = ordinal.mono_from_subset((0, 1), n - 1)
        predicates = {
            i: (lambda c, m=edge_mono: domain.act(c, m) == edge)
            for i in range(2, n + 1)
        }
        lift_index: dict[tuple, int] = {}
        for z in domain.simplices(n):
            key = (
                tuple(domain.d(z, i) for i in range(1, n + 1)),
                p.apply(z),
            )
            lift_index[key] = lift_index.get(key, 0) + 1
        for horn in enumerate_horns(domain, n, 0, slot_predicates=predicates):
            images = {i: p.apply(horn[i]) for i in horn}
            for xi in base.simplices(n):
                if any(base.d(xi, i) != images[i] for i in range(1, n + 1)):
                    continue
                key = (tuple(horn[i] for i in range(1, n + 1)), xi)
                if key not in lift_index:
                    witness = {
                        "kind": "cocartesian",
                        "edge": _ref_json(edge),
                        "n": n,
                        "faces": {str(i): _ref_json(horn[i]) for i in horn},
                        "base": _ref_json(xi),
                    }
                    return False, witness
    return True, None


@dataclass
class LiftRecord:
    base_edge: dict
    vertex: str
    direct: bool
    criterion: bool
    cocartesian_lift: Optional[dict]
    equivalence_lift: Optional[dict]

    def to_json(self) -> dict:
        return {
            "base_edge": self.base_edge,
            "vertex": self.vertex,
            "direct": self.direct,
            "criterion": self.criterion,
            "cocartesian_lift": self.cocartesian_lift,
            "equivalence_lift": self.equivalence_lift,
        }


@dataclass
class CocartesianReport:
    cap: int
    records: list[LiftRecord]
    witness: Optional[dict] = None

    @property
    def direct_pass(self) -> bool:
        return all(r.direct for r in self.records)

    @property
    def criterion_pass(self) -> bool:
        return all(r.criterion for r in self.records)

    @property
    def passed(self) -> bool:
        return self.direct_pass

    def to_json(self) -> dict:
        return {
            "check": "cocartesian_lifts",
            "cap": self.cap,
            "direct_pass": self.direct_pass,
            "criterion_pass": self.criterion_pass,
            "pass": self.passed,
            "records": [r.to_json() for r in self.records],
            "witness": self.witness,
        }


def has_cocartesian_lifts(
    p: SimplicialMap,
    cap: int,
    require_inner: bool = True,
    equivalence_tester=None,
) -> CocartesianReport:
    """Search a co-Cartesian lift with prescribed codomain over every base
    edge, and evaluate the equivalence-lift criterion alongside.

    The criterion asks for a lift that is an equivalence in the fiber over
    the base edge; colimit projections supply the fiber-aware tester
    (GlobalComplex.edge_equivalence_tester).  Without one, equivalences are
    sought in the preimage subcomplex, which is blind to cross-fiber
    inverses (the base has no reverse edges), so the criterion is then only
    meaningful over degenerate base edges.
    """
    domain, base = p.source, p.target
    if require_inner:
        inner = is_inner_fibration(p, cap)
        if not inner.passed:
            raise FibrationError("map is not an inner fibration at this cap")
    tau_cache: dict[str, object] = {}

    def default_tester_factory(core: str):
        if core not in tau_cache:
            sub = preimage_subcomplex(p, [core])
            tau_cache[core] = tau(sub, max(2, cap))
        ho = tau_cache[core]
        return lambda e: ho.is_iso(ho.class_of(e))

    records: list[LiftRecord] = []
    witness = None
    for m in base.simplices(1):
        target_vertex = base.act(m, ordinal.vertex(1, 1)).base
        tester = (
            equivalence_tester
            if equivalence_tester is not None
            else default_tester_factory(m.base)
        )
        for a in domain.nondegenerate(0):
            if p.apply(domain.ref(a)).base != target_vertex:
                continue
            candidates = [
                e
                for e in domain.simplices(1)
                if p.apply(e) == m and domain.d(e, 0) == domain.ref(a)
            ]
            chosen = None
            for e in candidates:
                ok, _ = is_cocartesian_edge(p, e, cap)
                if ok:
                    chosen = e
                    break
            equivalence = None
            for e in candidates:
                if tester(e):
                    equivalence = e
                    break
            record = LiftRecord(
                base_edge=_ref_json(m),
                vertex=a,
                direct=chosen is not None,
                criterion=equivalence is not None,
                cocartesian_lift=_ref_json(chosen) if chosen else None,
                equivalence_lift=_ref_json(equivalence) if equivalence else None,
            )
            records.append(record)
            if witness is None and (chosen is None or equivalence is None):
                witness = {
                    "kind": "missing_lift",
                    "base_edge": _ref_json(m),
                    "vertex": a,
                    "candidates": [_ref_json(e) for e in candidates],
                }
    return CocartesianReport(cap, records, witness)


@dataclass
class FibrationReport:
    """Combined report for one projection; serializes deterministically."""

    cap: int
    direction: str
    inner: InnerFibrationReport
    cocartesian: Optional[CocartesianReport]

    @property
    def passed(self) -> bool:
        if not self.inner.passed or not self.inner.agree:
            return False
        return self.cocartesian is None or self.cocartesian.passed

    def to_json(self) -> dict:
        return {
            "check": "fibration",
            "cap": self.cap,
            "direction": self.direction,
            "inner_fibration": self.inner.to_json(),
            "cocartesian": self.cocartesian.to_json() if self.cocartesian else None,
            "pass": self.passed,
        }


def check_fibration(target, cap: int, direction: str = "co") -> FibrationReport:
    """Full fibration verification of a colimit or a bare simplicial map.

    direction 'contra' checks the Cartesian dual by passing to opposite
    simplicial sets (an edge is an equivalence iff its opposite is, so the
    fiber tester carries over unchanged).
    """
    if direction not in ("co", "contra"):
        raise FibrationError("direction must be 'co' or 'contra'")
    tester = None
    if isinstance(target, SimplicialMap):
        p = target
    else:  # a GlobalComplex
        p = target.projection
        tester = target.edge_equivalence_tester(cap)
    the_map = p.op() if direction == "contra" else p
    inner = is_inner_fibration(the_map, cap)
    cocart = None
    if inner.passed:
        cocart = has_cocartesian_lifts(
            the_map, cap, require_inner=False, equivalence_tester=tester
        )
    return FibrationReport(cap, direction, inner, cocart)
