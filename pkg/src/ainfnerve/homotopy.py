"""Horn-filling checks, the homotopy category tau, and Kan subcomplexes.

All searches are exhaustive over the truncated simplicial set; horns are
enumerated as compatible families of faces, with hash-join pruning on
shared sub-faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import ordinal
from .simplicial import SimplexRef, SimplicialSet

Horn = dict[int, SimplexRef]


class HomotopyError(ValueError):
    pass


def _ref_json(ref: SimplexRef) -> dict:
    return {"base": ref.base, "degeneracy_word": list(ordinal.epi_to_word(ref.word))}


def enumerate_horns(
    sset: SimplicialSet,
    n: int,
    k: int,
    slot_predicates: Optional[dict[int, object]] = None,
) -> Iterator[Horn]:
    """All maps Lambda^n_k -> X as compatible families {x_i : i != k}.

    Compatibility is the simplicial identity d_i x_j = d_{j-1} x_i for
    i < j (both different from k).  slot_predicates may prune candidates
    per face slot before the join.
    """
    if not 0 <= k <= n or n < 1:
        raise HomotopyError("bad horn indices")
    slots = [i for i in range(n + 1) if i != k]
    candidates = sset.simplices(n - 1)
    # Index face i of every candidate for join lookups.
    face_of: dict[SimplexRef, list[SimplexRef]] = {}
    for ref in candidates:
        face_of[ref] = [sset.d(ref, i) for i in range(n)] if n >= 2 else []
    per_slot = {}
    for j in slots:
        pred = (slot_predicates or {}).get(j)
        per_slot[j] = [c for c in candidates if pred is None or pred(c)]

    def extend(pos: int, chosen: dict[int, SimplexRef]) -> Iterator[Horn]:
        if pos == len(slots):
            yield dict(chosen)
            return
        j = slots[pos]
        for cand in per_slot[j]:
            ok = True
            for prev_pos in range(pos):
                i = slots[prev_pos]
                if n >= 2 and face_of[cand][i] != face_of[chosen[i]][j - 1]:
                    ok = False
                    break
            if ok:
                chosen[j] = cand
                yield from extend(pos + 1, chosen)
                del chosen[j]

    yield from extend(0, {})


def horn_fillers(sset: SimplicialSet, horn: Horn, n: int, k: int) -> list[SimplexRef]:
    out = []
    for ref in sset.simplices(n):
        if all(sset.d(ref, i) == horn[i] for i in range(n + 1) if i != k):
            out.append(ref)
    return out


@dataclass
class HornCheckReport:
    check: str
    cap: int
    passed: bool
    witness: Optional[dict] = None
    horns_checked: int = 0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "cap": self.cap,
            "pass": self.passed,
            "witness": self.witness,
        }


def _check_horns(sset: SimplicialSet, cap: int, inner_only: bool, name: str) -> HornCheckReport:
    if cap > sset.cap:
        raise HomotopyError("cap exceeds the truncation of the complex")
    count = 0
    for n in range(1, cap + 1):
        ks = range(1, n) if inner_only else range(0, n + 1)
        for k in ks:
            filler_index: dict[tuple, list[SimplexRef]] = {}
            for ref in sset.simplices(n):
                key = tuple(
                    sset.d(ref, i) for i in range(n + 1) if i != k
                )
                filler_index.setdefault(key, []).append(ref)
            for horn in enumerate_horns(sset, n, k):
                count += 1
                key = tuple(horn[i] for i in range(n + 1) if i != k)
                if key not in filler_index:
                    witness = {
                        "n": n,
                        "k": k,
                        "faces": {str(i): _ref_json(horn[i]) for i in horn},
                    }
                    return HornCheckReport(name, cap, False, witness, count)
    return HornCheckReport(name, cap, True, None, count)


def is_quasi_category(sset: SimplicialSet, cap: int) -> HornCheckReport:
    """Every inner horn of dimension <= cap extends."""
    return _check_horns(sset, cap, inner_only=True, name="quasi_category")


def is_kan(sset: SimplicialSet, cap: int) -> HornCheckReport:
    """Every horn (outer included) of dimension <= cap extends."""
    return _check_horns(sset, cap, inner_only=False, name="kan")


def recheck_witness(sset: SimplicialSet, witness: dict) -> bool:
    """True when the witnessed horn still has no filler."""
    n, k = int(witness["n"]), int(witness["k"])
    horn: Horn = {}
    for key, doc in witness["faces"].items():
        word = tuple(int(x) for x in doc["degeneracy_word"])
        base = doc["base"]
        horn[int(key)] = SimplexRef(
            base, ordinal.word_to_epi(word, sset.dim_of(base) + len(word))
        )
    return not horn_fillers(sset, horn, n, k)


# -- the homotopy category ---------------------------------------------------


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class HoCategory:
    """Homotopy category of a quasi-category truncation.

    Morphisms are homotopy classes of edges; composition is diagrammatic
    (compose(f, g) travels f first).
    """

    objects: list[str]
    class_ids: list[str]
    edge_class: dict[SimplexRef, str]
    members: dict[str, list[SimplexRef]]
    endpoints: dict[str, tuple[str, str]]
    table: dict[tuple[str, str], str]
    identities: dict[str, str]

    def class_of(self, edge: SimplexRef) -> str:
        try:
            return self.edge_class[edge]
        except KeyError:
            raise HomotopyError("edge not in the truncation")

    def compose(self, f: str, g: str) -> str:
        try:
            return self.table[(f, g)]
        except KeyError:
            raise HomotopyError("classes do not compose")

    def hom_classes(self, x: str, y: str) -> list[str]:
        return [c for c in self.class_ids if self.endpoints[c] == (x, y)]

    def is_identity(self, c: str) -> bool:
        return c in self.identities.values()

    def is_iso(self, c: str) -> bool:
        x, y = self.endpoints[c]
        for back in self.hom_classes(y, x):
            if (
                self.table.get((c, back)) == self.identities[x]
                and self.table.get((back, c)) == self.identities[y]
            ):
                return True
        return False

    def validate(self) -> None:
        for (f, g), h in self.table.items():
            sf, tf = self.endpoints[f]
            sg, tg = self.endpoints[g]
            if tf != sg or self.endpoints[h] != (sf, tg):
                raise HomotopyError("composition table endpoints broken")
        for f in self.class_ids:
            x, y = self.endpoints[f]
            if self.table[(self.identities[x], f)] != f:
                raise HomotopyError("left identity fails")
            if self.table[(f, self.identities[y])] != f:
                raise HomotopyError("right identity fails")
        for f in self.class_ids:
            for g in self.class_ids:
                if self.endpoints[f][1] != self.endpoints[g][0]:
                    continue
                fg = self.table[(f, g)]
                for h in self.class_ids:
                    if self.endpoints[g][1] != self.endpoints[h][0]:
                        continue
                    if self.table[(fg, h)] != self.table[(f, self.table[(g, h)])]:
                        raise HomotopyError("composition not associative")

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "classes": {
                c: {
                    "source": self.endpoints[c][0],
                    "target": self.endpoints[c][1],
                    "size": len(self.members[c]),
                    "identity": self.is_identity(c),
                }
                for c in self.class_ids
            },
            "composition": {f"{f},{g}": h for (f, g), h in sorted(self.table.items())},
        }


def tau(sset: SimplicialSet, cap: int) -> HoCategory:
    """Homotopy category of a quasi-category truncation (cap >= 2 required).

    The homotopy relation is generated by 2-simplices with a degenerate
    outer edge; composition fills the inner 2-horn and cross-checks every
    filler for independence of the choice.
    """
    if cap < 2:
        raise HomotopyError("tau needs cap >= 2")
    report = is_quasi_category(sset, min(cap, sset.cap))
    if not report.passed:
        raise HomotopyError("tau is only defined on quasi-category truncations")
    objects = sset.nondegenerate(0)
    edges = sset.simplices(1)
    uf = _UnionFind()
    for e in edges:
        uf.find(e)
    for z in sset.simplices(2):
        e01 = sset.d(z, 2)
        e12 = sset.d(z, 0)
        e02 = sset.d(z, 1)
        if e01.is_degenerate:
            uf.union(e02, e12)
        if e12.is_degenerate:
            uf.union(e02, e01)
    groups: dict[SimplexRef, list[SimplexRef]] = {}
    for e in edges:
        groups.setdefault(uf.find(e), []).append(e)
    reps = sorted(groups, key=lambda r: (r.base, r.word.values))
    class_ids = [f"m{i}" for i in range(len(reps))]
    by_rep = dict(zip(reps, class_ids))
    edge_class = {e: by_rep[uf.find(e)] for e in edges}
    members = {by_rep[r]: sorted(g, key=lambda e: (e.base, e.word.values)) for r, g in groups.items()}
    endpoints = {}
    for cid, group in members.items():
        ends = {
            (sset.d(e, 1).base, sset.d(e, 0).base) for e in group
        }
        if len(ends) != 1:
            raise HomotopyError("homotopic edges with different endpoints")
        endpoints[cid] = next(iter(ends))
    identities = {}
    for x in objects:
        ident_edge = sset.s(sset.ref(x), 0)
        identities[x] = edge_class[ident_edge]
    # Composition via inner-horn fillers, all choices cross-checked.
    fillers_by_outer: dict[tuple[SimplexRef, SimplexRef], list[SimplexRef]] = {}
    for z in sset.simplices(2):
        key = (sset.d(z, 2), sset.d(z, 0))
        fillers_by_outer.setdefault(key, []).append(z)
    table: dict[tuple[str, str], str] = {}
    for f_cid in class_ids:
        for g_cid in class_ids:
            if endpoints[f_cid][1] != endpoints[g_cid][0]:
                continue
            results = set()
            for f_edge in members[f_cid]:
                for g_edge in members[g_cid]:
                    for z in fillers_by_outer.get((f_edge, g_edge), []):
                        results.add(edge_class[sset.d(z, 1)])
            if not results:
                raise HomotopyError(
                    "no filler found for a composable pair; cap too small"
                )
            if len(results) > 1:
                raise HomotopyError("composition depends on the filler choice")
            table[(f_cid, g_cid)] = results.pop()
    ho = HoCategory(
        objects, class_ids, edge_class, members, endpoints, table, identities
    )
    ho.validate()
    return ho


def tau0(sset: SimplicialSet, cap: int) -> list[frozenset[str]]:
    """Isomorphism classes of objects in tau."""
    ho = tau(sset, cap)
    uf = _UnionFind()
    for x in ho.objects:
        uf.find(x)
    for c in ho.class_ids:
        if ho.is_iso(c):
            x, y = ho.endpoints[c]
            uf.union(x, y)
    groups: dict[str, set[str]] = {}
    for x in ho.objects:
        groups.setdefault(uf.find(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=sorted)


def is_equivalence_edge(sset: SimplicialSet, edge: SimplexRef, cap: int) -> bool:
    ho = tau(sset, cap)
    return ho.is_iso(ho.class_of(edge))


def maximal_kan_subcomplex(sset: SimplicialSet, cap: int) -> SimplicialSet:
    """Keep exactly the cells all of whose edges are equivalences."""
    ho = tau(sset, cap)
    keep = set(sset.nondegenerate(0))
    for d in range(1, max(sset.cells, default=0) + 1):
        for cid in sset.nondegenerate(d):
            ref = sset.ref(cid)
            good = True
            for mono in ordinal.all_monos(1, d):
                edge = sset.act(ref, mono)
                if not ho.is_iso(ho.class_of(edge)):
                    good = False
                    break
            if good:
                keep.add(cid)
    cells = {d: [c for c in ids if c in keep] for d, ids in sset.cells.items()}
    faces = {c: sset.faces[c] for c in keep if c in sset.faces}
    return SimplicialSet(sset.cap, cells, faces)
