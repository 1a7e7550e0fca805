"""Diagrams of A-infinity categories over a finite base and their colimit.

A diagram assigns a category to each nondegenerate base cell and a fully
faithful strict embedding to each elementary face inclusion; every object
is tagged with the base vertex it sits over.  The colimit L has k-cells
(core, word, f): a nondegenerate base cell, an epi word, and a k-simplex f
of the nerve of the core category whose vertex tags equal the word.  Its
projection to the base sends the cell to word*(core).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional

from . import ordinal
from .ainf import (
    AInfCategory,
    StrictFunctor,
    degenerate_extension,
    is_fully_faithful_embedding,
)
from .gf2 import Gf2Vector
from .nerve import (
    NerveEnumerator,
    NerveSimplex,
    NerveTruncation,
    enumerate_simplices,
    is_degenerate_at,
    nerve_degeneracy,
    nerve_face_at,
    nerve_of_functor,
)
from .ordinal import OrdinalMap
from .simplicial import SimplexRef, SimplicialMap, SimplicialSet


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class ComposableChain:
    """Morphisms m_1, ..., m_d of the path category with matching endpoints.

    A morphism of Pi(Delta^n) is a pair (source vertex, target vertex) with
    source <= target; there is exactly one morphism per such pair.
    """

    n: int
    morphisms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for s, t in self.morphisms:
            if not 0 <= s <= t <= self.n:
                raise DiagramError("morphism endpoints out of range")
        for (_, t1), (s2, _) in zip(self.morphisms, self.morphisms[1:]):
            if t1 != s2:
                raise DiagramError("chain endpoints do not match")


def pull_back_simplex(emb: StrictFunctor, simplex: NerveSimplex) -> NerveSimplex:
    """Transport a target-nerve simplex back along a fully faithful embedding."""
    inverse_obj = {fx: x for x, fx in emb.object_map.items()}
    try:
        vertices = tuple(inverse_obj[v] for v in simplex.vertices)
    except KeyError as exc:
        raise DiagramError(f"simplex leaves the embedding image: {exc}")
    f: dict[tuple[int, ...], Gf2Vector] = {}
    for subset, value in simplex.f.items():
        pair = (vertices[subset[0]], vertices[subset[-1]])
        f[subset] = emb.inverse_apply(pair, value)
    return NerveSimplex(emb.source, vertices, f)


class AInfDiagram:
    def __init__(
        self,
        base: SimplicialSet,
        categories: Mapping[str, AInfCategory],
        tags: Mapping[str, Mapping[str, int]],
        face_embeddings: Mapping[tuple[str, int], StrictFunctor],
    ) -> None:
        self.base = base
        self.categories = dict(categories)
        self.tags = {cid: dict(t) for cid, t in tags.items()}
        self.face_embeddings = dict(face_embeddings)
        self._embedding_cache: dict[tuple[str, tuple[int, ...]], StrictFunctor] = {}

    # -- access -----------------------------------------------------------

    def category(self, cell: str) -> AInfCategory:
        try:
            return self.categories[cell]
        except KeyError:
            raise DiagramError(f"no category assigned to cell {cell!r}")

    def tag_of(self, cell: str, obj: str) -> int:
        try:
            return self.tags[cell][obj]
        except KeyError:
            raise DiagramError(f"object {obj!r} of cell {cell!r} is untagged")

    def objects_with_tag(self, cell: str, tag: int) -> list[str]:
        return sorted(o for o, t in self.tags.get(cell, {}).items() if t == tag)

    def embedding_along(self, cell: str, mono: OrdinalMap) -> StrictFunctor:
        """The diagram functor for a mono into a nondegenerate cell."""
        d = self.base.dim_of(cell)
        if mono.target_dim != d:
            raise DiagramError("mono does not land in the cell dimension")
        if mono.is_identity:
            return StrictFunctor.identity(self.category(cell))
        key = (cell, mono.values)
        cached = self._embedding_cache.get(key)
        if cached is not None:
            return cached
        missing = max(set(range(d + 1)) - set(mono.values))
        lowered = OrdinalMap(
            mono.source_dim, d - 1, tuple(v if v < missing else v - 1 for v in mono.values)
        )
        face_ref = self.base.face(cell, missing)
        if face_ref.is_degenerate:
            raise DiagramError("diagram base must have nondegenerate faces")
        step = self.face_embeddings.get((cell, missing))
        if step is None:
            raise DiagramError(f"no embedding stored for face {missing} of {cell!r}")
        result = self.embedding_along(face_ref.base, lowered).then(step)
        self._embedding_cache[key] = result
        return result

    def vertex_embedding(self, cell: str, t: int) -> StrictFunctor:
        return self.embedding_along(cell, ordinal.vertex(t, self.base.dim_of(cell)))

    # -- validation ----------------------------------------------------------

    def validate(self, check_categories: bool = True) -> None:
        self.base.validate()
        for d, ids in self.base.cells.items():
            for cid in ids:
                if d >= 1:
                    for ref in self.base.faces[cid]:
                        if ref.is_degenerate:
                            raise DiagramError(
                                "unsupported base: nondegenerate cell "
                                f"{cid!r} has a degenerate face"
                            )
                cat = self.category(cid)
                if check_categories:
                    if cat.check_strict_units() is not None:
                        raise DiagramError(f"category at {cid!r} is not strictly unital")
                    if cat.check_ainf_relations() is not None:
                        raise DiagramError(f"category at {cid!r} fails the relations")
                tag_map = self.tags.get(cid)
                if tag_map is None or set(tag_map) != set(cat.objects):
                    raise DiagramError(f"tags at {cid!r} do not cover the objects")
                for obj, t in tag_map.items():
                    if not 0 <= t <= d:
                        raise DiagramError(f"tag of {obj!r} at {cid!r} out of range")
        for d, ids in self.base.cells.items():
            if d == 0:
                continue
            for cid in ids:
                for i in range(d + 1):
                    emb = self.face_embeddings.get((cid, i))
                    if emb is None:
                        raise DiagramError(f"missing embedding for face {i} of {cid!r}")
                    face_cell = self.base.faces[cid][i].base
                    if emb.source is not self.categories[face_cell] or (
                        emb.target is not self.categories[cid]
                    ):
                        raise DiagramError(
                            f"embedding for face {i} of {cid!r} connects wrong categories"
                        )
                    emb.check_strict()
                    if not is_fully_faithful_embedding(emb):
                        raise DiagramError(
                            f"embedding for face {i} of {cid!r} is not fully faithful"
                        )
                    coface = ordinal.coface(i, d)
                    for obj in emb.source.objects:
                        expected = coface(self.tag_of(face_cell, obj))
                        if self.tag_of(cid, emb.object_map[obj]) != expected:
                            raise DiagramError(
                                f"embedding for face {i} of {cid!r} breaks tags"
                            )
                    for t in range(d):
                        source_objs = self.objects_with_tag(face_cell, t)
                        image = sorted(emb.object_map[o] for o in source_objs)
                        target_objs = self.objects_with_tag(cid, coface(t))
                        if image != target_objs:
                            raise DiagramError(
                                f"embedding for face {i} of {cid!r} is not onto tag {t}"
                            )
        # Functoriality: both coface paths around every square agree.
        for d, ids in self.base.cells.items():
            if d < 2:
                continue
            for cid in ids:
                for j in range(1, d + 1):
                    for i in range(j):
                        left = ordinal.coface(i, d - 1).then(ordinal.coface(j, d))
                        right = ordinal.coface(j - 1, d - 1).then(ordinal.coface(i, d))
                        if left != right:
                            raise DiagramError("coface identity broken")
                        first = self.embedding_along(cid, left)
                        second = self.embedding_along(cid, right)
                        if first.object_map != second.object_map or any(
                            first.hom_images[lbl] != second.hom_images[lbl]
                            for lbl in first.hom_images
                        ):
                            raise DiagramError(
                                f"diagram not functorial on faces {i},{j} of {cid!r}"
                            )

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        cat_ids: dict[int, str] = {}
        cats: dict[str, dict] = {}
        assignment: dict[str, str] = {}
        for cell in sorted(self.categories):
            cat = self.categories[cell]
            if id(cat) not in cat_ids:
                cat_ids[id(cat)] = f"cat{len(cat_ids)}"
                cats[cat_ids[id(cat)]] = cat.to_json()
            assignment[cell] = cat_ids[id(cat)]
        return {
            "base": self.base.to_json(),
            "F": assignment,
            "categories": cats,
            "tags": {cell: dict(sorted(t.items())) for cell, t in sorted(self.tags.items())},
            "embeddings": {
                f"{cell}:{i}": emb.to_json()
                for (cell, i), emb in sorted(self.face_embeddings.items())
            },
        }

    @staticmethod
    def from_json(doc: dict) -> "AInfDiagram":
        try:
            base = SimplicialSet.from_json(doc["base"])
            cats = {cid: AInfCategory.from_json(body) for cid, body in doc["categories"].items()}
            assignment = dict(doc["F"])
            tags = {cell: {o: int(t) for o, t in m.items()} for cell, m in doc["tags"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed diagram document: {exc}")
        categories = {}
        for cell, cat_id in assignment.items():
            if cat_id not in cats:
                raise DiagramError(f"cell {cell!r} references unknown category {cat_id!r}")
            categories[cell] = cats[cat_id]
        face_embeddings = {}
        for key, body in doc.get("embeddings", {}).items():
            cell, _, index = key.rpartition(":")
            face_cell = None
            try:
                i = int(index)
                face_cell = base.faces[cell][i].base
            except (ValueError, KeyError, IndexError):
                raise DiagramError(f"malformed embedding key {key!r}")
            face_embeddings[(cell, i)] = StrictFunctor.from_json(
                body, categories[face_cell], categories[cell]
            )
        return AInfDiagram(base, categories, tags, face_embeddings)


# -- degenerate values ---------------------------------------------------------


@dataclass
class ExtendedFiber:
    """F_P on a (possibly degenerate) base simplex."""

    category: AInfCategory
    tags: dict[str, int]
    proj: StrictFunctor  # tautological projection onto the core value


def extend_to_degenerate(diagram: AInfDiagram, ref: SimplexRef) -> ExtendedFiber:
    """Value of the diagram on a degenerate simplex, built by iterating the
    one-step extension along the degeneracy word (newest copy sits over the
    doubled vertex)."""
    core = diagram.category(ref.base)
    cur_cat = core
    cur_tags = dict(diagram.tags[ref.base])
    cur_proj = StrictFunctor.identity(core)
    cur_dim = diagram.base.dim_of(ref.base)
    cur_epi = ordinal.identity(cur_dim)
    vertex_embeds = [
        diagram.vertex_embedding(ref.base, t) for t in range(cur_dim + 1)
    ]
    for j in reversed(ordinal.epi_to_word(ref.word)):
        ext = degenerate_extension(
            cur_cat, vertex_embeds[j].source, vertex_embeds[j]
        )
        new_tags = {}
        for obj, t in cur_tags.items():
            new_tags[ext.embed_c.object_map[obj]] = t if t <= j else t + 1
        for obj in vertex_embeds[j].source.objects:
            new_tags[ext.embed_d.object_map[obj]] = j + 1
        new_embeds = []
        for t in range(cur_dim + 2):
            if t <= j:
                new_embeds.append(vertex_embeds[t].then(ext.embed_c))
            elif t == j + 1:
                new_embeds.append(ext.embed_d)
            else:
                new_embeds.append(vertex_embeds[t - 1].then(ext.embed_c))
        cur_cat = ext.category
        cur_tags = new_tags
        vertex_embeds = new_embeds
        cur_proj = ext.proj.then(cur_proj)
        cur_dim += 1
        cur_epi = ordinal.codegeneracy(j, cur_dim - 1).then(cur_epi)
    if cur_epi != ref.word:
        raise DiagramError("degeneracy word decomposition failed")
    return ExtendedFiber(cur_cat, cur_tags, cur_proj)


def p_sigma(
    diagram: AInfDiagram,
    sigma: SimplexRef,
    simplex: NerveSimplex,
    tag_map: Optional[Mapping[str, int]] = None,
) -> SimplexRef:
    """The unique base simplex through the vertex tags of a nerve simplex."""
    if tag_map is None:
        if sigma.is_degenerate:
            tag_map = extend_to_degenerate(diagram, sigma).tags
        else:
            tag_map = diagram.tags[sigma.base]
    try:
        seq = tuple(tag_map[v] for v in simplex.vertices)
    except KeyError as exc:
        raise DiagramError(f"untagged object: {exc}")
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise DiagramError("vertex tags are not monotone; no base simplex exists")
    return diagram.base.act(sigma, OrdinalMap(len(seq) - 1, sigma.dim, seq))


# -- the colimit ------------------------------------------------------------------


@dataclass(frozen=True)
class LCell:
    core: str
    word: OrdinalMap
    simplex: NerveSimplex

    def key(self) -> tuple:
        return (self.core, self.word.values, self.simplex.key())


class GlobalComplex:
    """The colimit L with its projection to the base."""

    def __init__(self, diagram: AInfDiagram, cap: int) -> None:
        if cap > diagram.base.cap:
            raise DiagramError("cap exceeds the base truncation")
        self.diagram = diagram
        self.cap = cap
        self.cells: dict[str, LCell] = {}
        self._ids: dict[tuple, str] = {}
        self._fibers: dict[str, NerveTruncation] = {}
        enumerators = {
            cell: NerveEnumerator(diagram.category(cell))
            for ids in diagram.base.cells.values()
            for cell in ids
        }
        cells_by_dim: dict[int, list[str]] = {}
        faces: dict[str, tuple[SimplexRef, ...]] = {}
        per_dim_cells: dict[int, list[LCell]] = {}
        for k in range(cap + 1):
            found: list[LCell] = []
            for m in range(min(k, diagram.base.cap) + 1):
                for core in diagram.base.nondegenerate(m):
                    cat = diagram.category(core)
                    for word in ordinal.all_epis(k, m):
                        tuples = [
                            tuple(combo)
                            for combo in product(
                                *[
                                    diagram.objects_with_tag(core, word(pos))
                                    for pos in range(k + 1)
                                ]
                            )
                        ]
                        if not tuples:
                            continue
                        for simplex in enumerate_simplices(
                            cat, k, vertex_tuples=tuples, enumerator=enumerators[core]
                        ):
                            found.append(LCell(core, word, simplex))
            nondeg = [
                cell
                for cell in found
                if not any(is_degenerate_at(cell.simplex, i) for i in range(k))
            ]
            nondeg.sort(key=lambda cell: cell.key())
            ids = []
            for idx, cell in enumerate(nondeg):
                cid = f"L{k}_{idx}"
                ids.append(cid)
                self.cells[cid] = cell
                self._ids[cell.key()] = cid
            cells_by_dim[k] = ids
            per_dim_cells[k] = nondeg
        for k in range(1, cap + 1):
            for cid in cells_by_dim[k]:
                cell = self.cells[cid]
                refs = []
                for i in range(k + 1):
                    refs.append(self.ref_of(self.face(cell, i)))
                faces[cid] = tuple(refs)
        self.complex = SimplicialSet(cap, cells_by_dim, faces)
        self.projection = SimplicialMap(
            self.complex,
            diagram.base,
            {cid: SimplexRef(cell.core, cell.word) for cid, cell in self.cells.items()},
        )

    # -- simplicial structure on cells ------------------------------------------

    def face(self, cell: LCell, i: int) -> LCell:
        alpha = ordinal.coface(i, cell.word.source_dim).then(cell.word)
        epi, mono = alpha.epi_mono_factor()
        g = nerve_face_at(cell.simplex, i)
        if mono.is_identity:
            return LCell(cell.core, epi, g)
        face_ref = self.diagram.base.act(
            self.diagram.base.ref(cell.core), mono
        )
        if face_ref.is_degenerate:
            raise DiagramError("regular base required")
        emb = self.diagram.embedding_along(cell.core, mono)
        return LCell(face_ref.base, epi, pull_back_simplex(emb, g))

    def degeneracy(self, cell: LCell, i: int) -> LCell:
        return LCell(
            cell.core,
            ordinal.codegeneracy(i, cell.word.source_dim).then(cell.word),
            nerve_degeneracy(cell.simplex, i),
        )

    def ref_of(self, cell: LCell) -> SimplexRef:
        k = cell.word.source_dim
        for i in range(k):
            if is_degenerate_at(cell.simplex, i):
                inner = self.ref_of(self.face(cell, i))
                return SimplexRef(
                    inner.base, ordinal.codegeneracy(i, k - 1).then(inner.word)
                )
        cid = self._ids.get(cell.key())
        if cid is None:
            raise DiagramError("cell not present in the colimit")
        return SimplexRef(cid, ordinal.identity(k))

    # -- fibers and cocone legs ----------------------------------------------------

    def fiber(self, cell: str) -> NerveTruncation:
        """Monotone-tag truncation of the nerve of the value at a cell."""
        if cell not in self._fibers:
            cat = self.diagram.category(cell)
            d = self.diagram.base.dim_of(cell)
            tuples: dict[int, list[tuple[str, ...]]] = {}
            for k in range(self.cap + 1):
                chosen = []
                for seq in product(range(d + 1), repeat=k + 1):
                    if any(a > b for a, b in zip(seq, seq[1:])):
                        continue
                    for combo in product(
                        *[self.diagram.objects_with_tag(cell, t) for t in seq]
                    ):
                        chosen.append(tuple(combo))
                tuples[k] = chosen
            self._fibers[cell] = NerveTruncation(
                cat, self.cap, vertex_tuples=tuples, id_prefix=f"f[{cell}]"
            )
        return self._fibers[cell]

    def phi(self, cell: str) -> SimplicialMap:
        """The cocone leg from the fiber nerve over a nondegenerate cell."""
        fiber = self.fiber(cell)
        assignment: dict[str, SimplexRef] = {}
        for cid in fiber.sset.all_cells():
            simplex = fiber.by_id[cid]
            tag_map = self.diagram.tags[cell]
            seq = tuple(tag_map[v] for v in simplex.vertices)
            t = OrdinalMap(len(seq) - 1, self.diagram.base.dim_of(cell), seq)
            epi, mono = t.epi_mono_factor()
            if mono.is_identity:
                target = LCell(cell, epi, simplex)
            else:
                face_ref = self.diagram.base.act(self.diagram.base.ref(cell), mono)
                emb = self.diagram.embedding_along(cell, mono)
                target = LCell(face_ref.base, epi, pull_back_simplex(emb, simplex))
            assignment[cid] = self.ref_of(target)
        return SimplicialMap(fiber.sset, self.complex, assignment)

    def face_nerve_map(self, cell: str, i: int) -> SimplicialMap:
        """N applied to the embedding along face i, between fiber nerves."""
        face_cell = self.diagram.base.faces[cell][i].base
        emb = self.face_embedding(cell, i)
        source = self.fiber(face_cell)
        target = self.fiber(cell)
        assignment = {}
        for cid in source.sset.all_cells():
            image = nerve_of_functor(emb, source.by_id[cid])
            assignment[cid] = target.ref_of(image)
        return SimplicialMap(source.sset, target.sset, assignment)

    def face_embedding(self, cell: str, i: int) -> StrictFunctor:
        emb = self.diagram.face_embeddings.get((cell, i))
        if emb is None:
            raise DiagramError(f"no embedding for face {i} of {cell!r}")
        return emb

    def edge_equivalence_tester(self, cap: int):
        """Per-edge predicate: is the edge an equivalence in its fiber nerve?

        The fiber nerve here is the full truncation of the core value
        (backward hom spaces included), which is where the equivalence-lift
        criterion lives; the preimage subcomplex cannot see cross-fiber
        inverses because the base has no reverse edges.
        """
        from .homotopy import tau

        depth = max(2, min(cap, self.cap))
        fulls: dict[str, NerveTruncation] = {}
        taus: dict[str, object] = {}

        def tester(ref: SimplexRef) -> bool:
            if ref.dim != 1:
                raise DiagramError("equivalence tester expects an edge")
            if ref.is_degenerate:
                return True
            cell = self.cells[ref.base]
            core = cell.core
            if core not in fulls:
                fulls[core] = NerveTruncation(
                    self.diagram.category(core), depth, id_prefix=f"t[{core}]"
                )
                taus[core] = tau(fulls[core].sset, depth)
            trunc = fulls[core]
            ho = taus[core]
            return ho.is_iso(ho.class_of(trunc.ref_of(cell.simplex)))

        return tester

    def to_json(self) -> dict:
        return {
            "cap": self.cap,
            "base": self.diagram.base.to_json(),
            "L": self.complex.to_json(),
            "p": {
                cid: {
                    "base": cell.core,
                    "degeneracy_word": list(ordinal.epi_to_word(cell.word)),
                }
                for cid, cell in sorted(self.cells.items())
            },
            "cells": {
                cid: {
                    "core": cell.core,
                    "word": list(ordinal.epi_to_word(cell.word)),
                    "simplex": cell.simplex.to_json(),
                }
                for cid, cell in sorted(self.cells.items())
            },
        }


def build_colimit(diagram: AInfDiagram, cap: int) -> GlobalComplex:
    diagram.validate()
    return GlobalComplex(diagram, cap)


# -- universal property -----------------------------------------------------------


@dataclass
class Cocone:
    """A cocone: a target complex plus one leg per nondegenerate base cell."""

    target: SimplicialSet
    legs: dict[str, SimplicialMap]


@dataclass
class UniversalReport:
    commutes: bool
    factors: bool
    unique: Optional[bool]
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.commutes and self.factors and self.unique in (None, True)

    def to_json(self) -> dict:
        return {
            "check": "universal_property",
            "commutes": self.commutes,
            "factors": self.factors,
            "unique": self.unique,
            "pass": self.passed,
            "detail": self.detail,
        }


def mediating_map(gc: GlobalComplex, cocone: Cocone) -> SimplicialMap:
    """U(f, sigma) = leg_sigma(f), assembled cell by cell."""
    assignment = {}
    for cid, cell in gc.cells.items():
        fiber = gc.fiber(cell.core)
        leg = cocone.legs.get(cell.core)
        if leg is None:
            raise DiagramError(f"cocone has no leg at {cell.core!r}")
        ref = fiber.ref_of(cell.simplex)
        assignment[cid] = leg.apply(ref)
    return SimplicialMap(gc.complex, cocone.target, assignment)


def verify_universal_property(
    gc: GlobalComplex,
    cocone: Cocone,
    alternative: Optional[SimplicialMap] = None,
) -> UniversalReport:
    """Check the cocone commutes, factors uniquely through the colimit."""
    base = gc.diagram.base
    for d, ids in base.cells.items():
        if d == 0:
            continue
        for cell in ids:
            leg = cocone.legs.get(cell)
            if leg is None:
                return UniversalReport(False, False, None, f"missing leg at {cell!r}")
            for i in range(d + 1):
                face_cell = base.faces[cell][i].base
                nf = gc.face_nerve_map(cell, i)
                source = gc.fiber(face_cell)
                for cid in source.sset.all_cells():
                    left = leg.apply(nf.apply(source.sset.ref(cid)))
                    right = cocone.legs[face_cell].apply(source.sset.ref(cid))
                    if left != right:
                        return UniversalReport(
                            False, False, None, f"cocone fails at {cell!r} face {i}"
                        )
    u = mediating_map(gc, cocone)
    try:
        u.check()
    except Exception as exc:  # malformed cocone target
        return UniversalReport(True, False, None, f"mediating map not simplicial: {exc}")
    for cell in cocone.legs:
        phi = gc.phi(cell)
        fiber = gc.fiber(cell)
        for cid in fiber.sset.all_cells():
            ref = fiber.sset.ref(cid)
            if u.apply(phi.apply(ref)) != cocone.legs[cell].apply(ref):
                return UniversalReport(True, False, None, f"U . phi != leg at {cell!r}")
    unique: Optional[bool] = None
    if alternative is not None:
        unique = True
        for cell in cocone.legs:
            phi = gc.phi(cell)
            fiber = gc.fiber(cell)
            for cid in fiber.sset.all_cells():
                ref = fiber.sset.ref(cid)
                if alternative.apply(phi.apply(ref)) != cocone.legs[cell].apply(ref):
                    return UniversalReport(
                        True, True, False, "alternative is not a factorization"
                    )
        for cid in gc.complex.all_cells():
            ref = gc.complex.ref(cid)
            if alternative.apply(ref) != u.apply(ref):
                unique = False
                break
    return UniversalReport(True, True, unique)
