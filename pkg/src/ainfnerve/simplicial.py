"""Finitely generated simplicial sets with Eilenberg-Zilber bookkeeping.

A simplicial set is presented by its nondegenerate cells up to a truncation
cap; every simplex is addressed as a SimplexRef = (nondegenerate base id,
epi ordinal map), the unique EZ normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from . import ordinal
from .ordinal import OrdinalMap


class SimplicialError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexRef:
    """A (possibly degenerate) simplex: word*(base) with word an epi."""

    base: str
    word: OrdinalMap

    def __post_init__(self) -> None:
        if not self.word.is_epi:
            raise SimplicialError("degeneracy word must be an epi")

    @property
    def dim(self) -> int:
        return self.word.source_dim

    @property
    def is_degenerate(self) -> bool:
        return not self.word.is_identity


def nondeg_ref(base: str, dim: int) -> SimplexRef:
    return SimplexRef(base, ordinal.identity(dim))


class SimplicialSet:
    """Nondegenerate cells per dimension plus face references."""

    def __init__(
        self,
        cap: int,
        cells: dict[int, list[str]],
        faces: dict[str, tuple[SimplexRef, ...]],
    ) -> None:
        self.cap = cap
        self.cells = {d: list(ids) for d, ids in sorted(cells.items()) if ids}
        self.faces = dict(faces)
        self._dims: dict[str, int] = {}
        for d, ids in self.cells.items():
            if d > cap:
                raise SimplicialError("cell above the truncation cap")
            for cid in ids:
                if cid in self._dims:
                    raise SimplicialError(f"duplicate cell id {cid!r}")
                self._dims[cid] = d
        self._validate_refs()

    def _validate_refs(self) -> None:
        for cid, d in self._dims.items():
            if d == 0:
                continue
            refs = self.faces.get(cid)
            if refs is None or len(refs) != d + 1:
                raise SimplicialError(f"cell {cid!r} must list {d + 1} faces")
            for ref in refs:
                if ref.base not in self._dims:
                    raise SimplicialError(f"face of {cid!r} references unknown cell")
                if ref.word.target_dim != self._dims[ref.base] or ref.dim != d - 1:
                    raise SimplicialError(f"face of {cid!r} has wrong dimension")

    # -- basic queries ---------------------------------------------------

    def dim_of(self, cid: str) -> int:
        return self._dims[cid]

    def has_cell(self, cid: str) -> bool:
        return cid in self._dims

    def nondegenerate(self, dim: int) -> list[str]:
        return list(self.cells.get(dim, []))

    def all_cells(self) -> list[str]:
        return [cid for d in sorted(self.cells) for cid in self.cells[d]]

    def ref(self, cid: str) -> SimplexRef:
        return nondeg_ref(cid, self._dims[cid])

    def face(self, cid: str, i: int) -> SimplexRef:
        return self.faces[cid][i]

    # -- the simplicial action -------------------------------------------

    def act(self, ref: SimplexRef, m: OrdinalMap) -> SimplexRef:
        """Apply the contravariant action of an ordinal map, in normal form."""
        if m.target_dim != ref.dim:
            raise SimplicialError("ordinal map does not match simplex dimension")
        composite = m.then(ref.word)
        epi, mono = composite.epi_mono_factor()
        face = self._face_along(ref.base, mono)
        return SimplexRef(face.base, epi.then(face.word))

    def _face_along(self, base: str, mono: OrdinalMap) -> SimplexRef:
        """Iterated face of a nondegenerate cell along a mono."""
        if mono.is_identity:
            return self.ref(base)
        # Strip the largest missing index first.
        n = mono.target_dim
        missing = max(set(range(n + 1)) - set(mono.values))
        lowered = OrdinalMap(
            mono.source_dim, n - 1, tuple(v if v < missing else v - 1 for v in mono.values)
        )
        face = self.faces[base][missing]
        # face = word*(base'); recurse through its normal form.
        composite = lowered.then(face.word)
        epi, mono2 = composite.epi_mono_factor()
        inner = self._face_along(face.base, mono2)
        return SimplexRef(inner.base, epi.then(inner.word))

    def d(self, ref: SimplexRef, i: int) -> SimplexRef:
        return self.act(ref, ordinal.coface(i, ref.dim))

    def s(self, ref: SimplexRef, i: int) -> SimplexRef:
        if ref.dim + 1 > self.cap:
            raise SimplicialError("degeneracy would exceed the cap")
        return self.act(ref, ordinal.codegeneracy(i, ref.dim))

    def vertices(self, ref: SimplexRef) -> tuple[str, ...]:
        return tuple(
            self.act(ref, ordinal.vertex(i, ref.dim)).base for i in range(ref.dim + 1)
        )

    def simplices(self, dim: int) -> list[SimplexRef]:
        """All dim-simplices, degenerate included, in deterministic order."""
        out: list[SimplexRef] = []
        for p in range(dim + 1):
            for cid in self.cells.get(p, []):
                for epi in ordinal.all_epis(dim, p):
                    out.append(SimplexRef(cid, epi))
        return out

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        """Check the simplicial identities on all nondegenerate cells."""
        for d in sorted(self.cells):
            if d < 2:
                continue
            for cid in self.cells[d]:
                ref = self.ref(cid)
                for j in range(1, d + 1):
                    for i in range(j):
                        left = self.d(self.d(ref, j), i)
                        right = self.d(self.d(ref, i), j - 1)
                        if left != right:
                            raise SimplicialError(
                                f"simplicial identity fails at {cid!r} (i={i}, j={j})"
                            )

    # -- constructions ----------------------------------------------------

    def subcomplex(self, generators: Iterable[str]) -> SimplicialSet:
        """The smallest subcomplex containing the given nondegenerate cells."""
        keep: set[str] = set()
        stack = [g for g in generators]
        while stack:
            cid = stack.pop()
            if cid in keep:
                continue
            keep.add(cid)
            for ref in self.faces.get(cid, ()):
                stack.append(ref.base)
        cells = {d: [c for c in ids if c in keep] for d, ids in self.cells.items()}
        faces = {c: self.faces[c] for c in keep if c in self.faces}
        return SimplicialSet(self.cap, cells, faces)

    def delete_cell(self, target: str) -> SimplicialSet:
        """Remove a nondegenerate cell and everything that depends on it."""
        dropped = {target}
        changed = True
        while changed:
            changed = False
            for cid, refs in self.faces.items():
                if cid in dropped:
                    continue
                if any(r.base in dropped for r in refs):
                    dropped.add(cid)
                    changed = True
        cells = {d: [c for c in ids if c not in dropped] for d, ids in self.cells.items()}
        faces = {c: r for c, r in self.faces.items() if c not in dropped}
        return SimplicialSet(self.cap, cells, faces)

    def op(self) -> SimplicialSet:
        """Opposite simplicial set (order of vertices reversed)."""
        faces = {}
        for cid, refs in self.faces.items():
            d = self._dims[cid]
            faces[cid] = tuple(
                SimplexRef(refs[d - i].base, refs[d - i].word.op()) for i in range(d + 1)
            )
        return SimplicialSet(self.cap, self.cells, faces)

    def degenerate_closure_ids(self, generators: Iterable[str]) -> set[str]:
        return set(self.subcomplex(generators).all_cells())

    def to_json(self) -> dict:
        return {
            "cap": self.cap,
            "cells": {str(d): list(ids) for d, ids in self.cells.items()},
            "faces": {
                cid: [
                    {"base": ref.base, "degeneracy_word": list(ordinal.epi_to_word(ref.word))}
                    for ref in refs
                ]
                for cid, refs in sorted(self.faces.items())
            },
        }

    @staticmethod
    def from_json(doc: dict) -> SimplicialSet:
        try:
            cap = int(doc["cap"])
            cells = {int(d): list(ids) for d, ids in doc["cells"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise SimplicialError(f"malformed simplicial set document: {exc}")
        dims = {cid: d for d, ids in cells.items() for cid in ids}
        faces: dict[str, tuple[SimplexRef, ...]] = {}
        for cid, entries in doc.get("faces", {}).items():
            if cid not in dims:
                raise SimplicialError(f"faces listed for unknown cell {cid!r}")
            refs = []
            for entry in entries:
                base = entry["base"]
                word = tuple(int(i) for i in entry["degeneracy_word"])
                base_dim = dims.get(base)
                if base_dim is None:
                    raise SimplicialError(f"face of {cid!r} references unknown cell")
                refs.append(SimplexRef(base, ordinal.word_to_epi(word, base_dim + len(word))))
            faces[cid] = tuple(refs)
        sset = SimplicialSet(cap, cells, faces)
        sset.validate()
        return sset


# -- standard complexes ----------------------------------------------------


def _subset_id(subset: tuple[int, ...]) -> str:
    return ".".join(str(v) for v in subset)


def _subset_complex(n: int, subsets: list[tuple[int, ...]], cap: int) -> SimplicialSet:
    chosen = set(subsets)
    cells: dict[int, list[str]] = {}
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    for subset in sorted(subsets, key=lambda s: (len(s), s)):
        d = len(subset) - 1
        cells.setdefault(d, []).append(_subset_id(subset))
        if d > 0:
            refs = []
            for i in range(d + 1):
                sub = subset[:i] + subset[i + 1 :]
                if sub not in chosen:
                    raise SimplicialError("subset family not closed under faces")
                refs.append(nondeg_ref(_subset_id(sub), d - 1))
            faces[_subset_id(subset)] = tuple(refs)
    return SimplicialSet(cap, cells, faces)


def standard_simplex(n: int, cap: Optional[int] = None) -> SimplicialSet:
    """The standard n-simplex; nondegenerate cells are vertex subsets."""
    subsets = [
        combo for k in range(1, n + 2) for combo in combinations(range(n + 1), k)
    ]
    return _subset_complex(n, subsets, n if cap is None else cap)


def horn(n: int, k: int, cap: Optional[int] = None) -> SimplicialSet:
    """The horn with the k-th face (and the top cell) removed."""
    if not 0 <= k <= n:
        raise SimplicialError("horn index out of range")
    full = tuple(range(n + 1))
    omit_face = full[:k] + full[k + 1 :]
    subsets = [
        combo
        for size in range(1, n + 2)
        for combo in combinations(range(n + 1), size)
        if combo != full and combo != omit_face
    ]
    return _subset_complex(n, subsets, n if cap is None else cap)


def boundary(n: int, cap: Optional[int] = None) -> SimplicialSet:
    full = tuple(range(n + 1))
    subsets = [
        combo
        for size in range(1, n + 2)
        for combo in combinations(range(n + 1), size)
        if combo != full
    ]
    return _subset_complex(n, subsets, n if cap is None else cap)


def disjoint_union(a: SimplicialSet, b: SimplicialSet, sep: str = "#") -> SimplicialSet:
    """Disjoint union, ids prefixed 'a{sep}' and 'b{sep}'."""
    cap = max(a.cap, b.cap)
    cells: dict[int, list[str]] = {}
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    for tag, sset in (("a", a), ("b", b)):
        for d, ids in sset.cells.items():
            cells.setdefault(d, []).extend(f"{tag}{sep}{cid}" for cid in ids)
        for cid, refs in sset.faces.items():
            faces[f"{tag}{sep}{cid}"] = tuple(
                SimplexRef(f"{tag}{sep}{r.base}", r.word) for r in refs
            )
    return SimplicialSet(cap, cells, faces)


# -- simplicial maps --------------------------------------------------------


class SimplicialMap:
    """A map of simplicial sets, stored on nondegenerate source cells."""

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        assignment: dict[str, SimplexRef],
    ) -> None:
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        for cid in source.all_cells():
            if cid not in self.assignment:
                raise SimplicialError(f"no image for cell {cid!r}")
            image = self.assignment[cid]
            if image.dim != source.dim_of(cid):
                raise SimplicialError(f"image of {cid!r} has wrong dimension")
            if not target.has_cell(image.base):
                raise SimplicialError(f"image of {cid!r} not in target")

    def apply(self, ref: SimplexRef) -> SimplexRef:
        image = self.assignment[ref.base]
        return self.target.act(image, ref.word)

    def is_simplicial(self) -> bool:
        try:
            self.check()
        except SimplicialError:
            return False
        return True

    def check(self) -> None:
        """Faces of images must be images of faces (degeneracies follow)."""
        for cid in self.source.all_cells():
            d = self.source.dim_of(cid)
            if d == 0:
                continue
            ref = self.source.ref(cid)
            for i in range(d + 1):
                left = self.apply(self.source.d(ref, i))
                right = self.target.act(self.apply(ref), ordinal.coface(i, d))
                if left != right:
                    raise SimplicialError(
                        f"map does not commute with face {i} of {cid!r}"
                    )

    def then(self, other: SimplicialMap) -> SimplicialMap:
        if other.source is not self.target:
            raise SimplicialError("composition target mismatch")
        return SimplicialMap(
            self.source,
            other.target,
            {cid: other.apply(self.apply(self.source.ref(cid))) for cid in self.source.all_cells()},
        )

    @staticmethod
    def identity(sset: SimplicialSet) -> SimplicialMap:
        return SimplicialMap(sset, sset, {cid: sset.ref(cid) for cid in sset.all_cells()})

    def op(self) -> SimplicialMap:
        src, tgt = self.source.op(), self.target.op()
        return SimplicialMap(
            src, tgt, {cid: SimplexRef(r.base, r.word.op()) for cid, r in self.assignment.items()}
        )


# -- the category of simplices ----------------------------------------------


@dataclass(frozen=True)
class SimplexObject:
    ref: SimplexRef

    @property
    def dim(self) -> int:
        return self.ref.dim


@dataclass(frozen=True)
class SimplexMorphism:
    source: SimplexObject
    target: SimplexObject
    map: OrdinalMap


class SimplexCategory:
    """The category of simplices of a base complex, up to a cap.

    Objects are all simplices (degenerate included); a morphism x -> y is an
    ordinal map m with m*(y) = x.
    """

    def __init__(self, base: SimplicialSet, cap: int) -> None:
        if cap > base.cap:
            raise SimplicialError("cap exceeds the base truncation")
        self.base = base
        self.cap = cap
        self.objects: list[SimplexObject] = [
            SimplexObject(ref) for d in range(cap + 1) for ref in base.simplices(d)
        ]

    def morphisms(
        self, source: SimplexObject, target: SimplexObject
    ) -> list[SimplexMorphism]:
        out = []
        for m in ordinal.all_maps(source.dim, target.dim):
            if self.base.act(target.ref, m) == source.ref:
                out.append(SimplexMorphism(source, target, m))
        return out

    def all_morphisms(self) -> list[SimplexMorphism]:
        return [
            mor
            for src in self.objects
            for tgt in self.objects
            for mor in self.morphisms(src, tgt)
        ]

    def compose(self, f: SimplexMorphism, g: SimplexMorphism) -> SimplexMorphism:
        if f.target != g.source:
            raise SimplicialError("morphisms not composable")
        return SimplexMorphism(f.source, g.target, f.map.then(g.map))

    def identity_of(self, obj: SimplexObject) -> SimplexMorphism:
        return SimplexMorphism(obj, obj, ordinal.identity(obj.dim))


class SimpView:
    """The nondegenerate/mono subcategory Simp(X) of a simplex category."""

    def __init__(self, cat: SimplexCategory) -> None:
        self.cat = cat
        self.objects = [o for o in cat.objects if not o.ref.is_degenerate]

    def morphisms(self, source: SimplexObject, target: SimplexObject) -> list[SimplexMorphism]:
        return [m for m in self.cat.morphisms(source, target) if m.map.is_mono]

    def all_morphisms(self) -> list[SimplexMorphism]:
        return [
            mor
            for src in self.objects
            for tgt in self.objects
            for mor in self.morphisms(src, tgt)
        ]


def simplex_category(base: SimplicialSet, cap: int) -> SimplexCategory:
    return SimplexCategory(base, cap)
