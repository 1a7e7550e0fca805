"""Finite, strictly unital A-infinity categories over F2 (ungraded).

Hom spaces carry chosen bases with globally unique labels; the operations
mu^d are sparse tables over basis-label chains.  Composition order is
diagrammatic throughout: mu2(f, g) composes f: X -> Y first, then g: Y -> Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .gf2 import Gf2Matrix, Gf2Vector, Subspace, solve_affine


class AInfError(ValueError):
    pass


Pair = tuple[str, str]


@dataclass(frozen=True)
class RelationViolation:
    d: int
    chain: tuple[str, ...]
    residual: Gf2Vector

    def describe(self) -> str:
        return f"A-infinity relation fails at d={self.d} on {self.chain}"


@dataclass(frozen=True)
class UnitViolation:
    kind: str
    detail: tuple[str, ...]

    def describe(self) -> str:
        return f"strict unit law fails ({self.kind}) at {self.detail}"


class AInfCategory:
    def __init__(
        self,
        objects: Sequence[str],
        hom: Mapping[Pair, Sequence[str]],
        units: Mapping[str, str],
        mu: Mapping[tuple[int, tuple[str, ...]], Gf2Vector],
    ) -> None:
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise AInfError("duplicate object ids")
        self.hom = {pair: tuple(labels) for pair, labels in hom.items() if labels}
        self.units = dict(units)
        self.label_pair: dict[str, Pair] = {}
        self.label_index: dict[str, int] = {}
        for pair, labels in self.hom.items():
            if pair[0] not in self.objects or pair[1] not in self.objects:
                raise AInfError(f"hom pair {pair} references unknown object")
            for i, lbl in enumerate(labels):
                if lbl in self.label_pair:
                    raise AInfError(f"basis label {lbl!r} is not globally unique")
                self.label_pair[lbl] = pair
                self.label_index[lbl] = i
        self.mu = dict(mu)
        self._validate()

    # -- construction helpers ---------------------------------------------

    def _validate(self) -> None:
        for x in self.objects:
            e = self.units.get(x)
            if e is None:
                raise AInfError(f"object {x!r} has no declared unit")
            if self.label_pair.get(e) != (x, x):
                raise AInfError(f"unit of {x!r} must be a basis label of hom({x},{x})")
        for (d, chain), out in self.mu.items():
            if d < 1 or len(chain) != d:
                raise AInfError(f"malformed mu entry of arity {d}")
            pairs = [self.label_pair.get(lbl) for lbl in chain]
            if any(p is None for p in pairs):
                raise AInfError(f"mu entry {chain} uses an unknown label")
            for left, right in zip(pairs, pairs[1:]):
                if left[1] != right[0]:
                    raise AInfError(f"mu entry {chain} is not a composable chain")
            target_pair = (pairs[0][0], pairs[-1][1])
            if out.length != self.dim(target_pair):
                raise AInfError(f"mu entry {chain} lands in the wrong hom space")

    # -- hom space access ---------------------------------------------------

    def dim(self, pair: Pair) -> int:
        return len(self.hom.get(pair, ()))

    def basis(self, pair: Pair) -> tuple[str, ...]:
        return self.hom.get(pair, ())

    def zero(self, pair: Pair) -> Gf2Vector:
        return Gf2Vector.zero(self.dim(pair))

    def basis_vector(self, label: str) -> Gf2Vector:
        pair = self.label_pair[label]
        return Gf2Vector.basis(self.dim(pair), self.label_index[label])

    def element(self, labels: Iterable[str]) -> Gf2Vector:
        labels = list(labels)
        if not labels:
            raise AInfError("cannot infer the hom space of an empty label sum")
        pair = self.label_pair[labels[0]]
        vec = self.zero(pair)
        for lbl in labels:
            if self.label_pair[lbl] != pair:
                raise AInfError("label sum mixes hom spaces")
            vec = vec + self.basis_vector(lbl)
        return vec

    def unit_vector(self, x: str) -> Gf2Vector:
        return self.basis_vector(self.units[x])

    def labels_of(self, pair: Pair, vec: Gf2Vector) -> list[str]:
        labels = self.basis(pair)
        return [labels[i] for i in vec.support()]

    @property
    def max_arity(self) -> int:
        return max((d for (d, _), out in self.mu.items() if not out.is_zero()), default=1)

    # -- structure maps ------------------------------------------------------

    def mu_labels(self, chain: Sequence[str]) -> Gf2Vector:
        """mu^d on a chain of basis labels (absent entry = zero)."""
        d = len(chain)
        pairs = [self.label_pair[lbl] for lbl in chain]
        target = (pairs[0][0], pairs[-1][1])
        out = self.mu.get((d, tuple(chain)))
        return out if out is not None else self.zero(target)

    def mu_apply(self, args: Sequence[tuple[Pair, Gf2Vector]]) -> Gf2Vector:
        """Multilinear mu^d on vectors along a composable object chain."""
        if not args:
            raise AInfError("mu needs at least one argument")
        for (p1, _), (p2, _) in zip(args, args[1:]):
            if p1[1] != p2[0]:
                raise AInfError("mu arguments do not chain")
        target = (args[0][0][0], args[-1][0][1])
        result = self.zero(target)
        supports = []
        for pair, vec in args:
            if vec.length != self.dim(pair):
                raise AInfError("mu argument has the wrong length")
            labels = self.basis(pair)
            supports.append([labels[i] for i in vec.support()])
        for chain in product(*supports):
            result = result + self.mu_labels(chain)
        return result

    def mu1(self, pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        return self.mu_apply([(pair, vec)])

    def mu2(self, pair1: Pair, v1: Gf2Vector, pair2: Pair, v2: Gf2Vector) -> Gf2Vector:
        return self.mu_apply([(pair1, v1), (pair2, v2)])

    def mu1_matrix(self, pair: Pair) -> Gf2Matrix:
        """mu^1 on hom(pair) as a matrix (columns = basis labels)."""
        cols = [self.mu_labels((lbl,)) for lbl in self.basis(pair)]
        return Gf2Matrix.from_columns(cols, height=self.dim(pair))

    # -- chains ---------------------------------------------------------------

    def hom_pairs(self) -> list[Pair]:
        return sorted(self.hom)

    def composable_chains(self, d: int) -> Iterable[tuple[str, ...]]:
        """All length-d chains of basis labels with matching endpoints."""
        by_source: dict[str, list[Pair]] = {}
        for pair in self.hom_pairs():
            by_source.setdefault(pair[0], []).append(pair)

        def extend(chain: tuple[str, ...], at: str, remaining: int):
            if remaining == 0:
                yield chain
                return
            for pair in by_source.get(at, []):
                for lbl in self.basis(pair):
                    yield from extend(chain + (lbl,), pair[1], remaining - 1)

        for start in self.objects:
            yield from extend((), start, d)

    # -- checkers ---------------------------------------------------------------

    def relation_residual(self, chain: Sequence[str]) -> Gf2Vector:
        """Left side of the associativity equation on a generator chain."""
        d = len(chain)
        pairs = [self.label_pair[lbl] for lbl in chain]
        target = (pairs[0][0], pairs[-1][1])
        total = self.zero(target)
        for m in range(1, d + 1):
            for n in range(0, d - m + 1):
                inner = self.mu_labels(chain[n : n + m])
                if inner.is_zero():
                    continue
                inner_pair = (pairs[n][0], pairs[n + m - 1][1])
                args: list[tuple[Pair, Gf2Vector]] = []
                for i in range(n):
                    args.append((pairs[i], self.basis_vector(chain[i])))
                args.append((inner_pair, inner))
                for i in range(n + m, d):
                    args.append((pairs[i], self.basis_vector(chain[i])))
                total = total + self.mu_apply(args)
        return total

    def check_ainf_relations(self, d_max: Optional[int] = None) -> Optional[RelationViolation]:
        """First failing generator chain with d <= d_max, or None.

        d_max defaults to 2 * max_arity, which covers every relation whose
        terms only involve stored operations.
        """
        if d_max is None:
            d_max = 2 * self.max_arity
        if d_max < 1:
            raise AInfError("d_max must be at least 1")
        for d in range(1, d_max + 1):
            for chain in self.composable_chains(d):
                residual = self.relation_residual(chain)
                if not residual.is_zero():
                    return RelationViolation(d, chain, residual)
        return None

    def check_strict_units(self) -> Optional[UnitViolation]:
        for x in self.objects:
            e = self.units[x]
            if not self.mu_labels((e,)).is_zero():
                return UnitViolation("mu1-on-unit", (e,))
        for pair in self.hom_pairs():
            x, y = pair
            ex, ey = self.units[x], self.units[y]
            for lbl in self.basis(pair):
                if self.mu_labels((ex, lbl)) != self.basis_vector(lbl):
                    return UnitViolation("left-unit", (ex, lbl))
                if self.mu_labels((lbl, ey)) != self.basis_vector(lbl):
                    return UnitViolation("right-unit", (lbl, ey))
        unit_labels = set(self.units.values())
        for (d, chain), out in self.mu.items():
            if d >= 3 and not out.is_zero() and any(lbl in unit_labels for lbl in chain):
                return UnitViolation("higher-arity-unit", chain)
        return None

    def is_valid(self, d_max: Optional[int] = None) -> bool:
        return self.check_strict_units() is None and self.check_ainf_relations(d_max) is None

    # -- cohomology ---------------------------------------------------------------

    def cohomology(self) -> "CohomologyCategory":
        return CohomologyCategory(self)

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        mu_entries = []
        for (d, chain), out in sorted(self.mu.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            if out.is_zero():
                continue
            pairs = [self.label_pair[lbl] for lbl in chain]
            target = (pairs[0][0], pairs[-1][1])
            mu_entries.append(
                {"d": d, "inputs": list(chain), "output": self.labels_of(target, out)}
            )
        return {
            "objects": list(self.objects),
            "hom": {f"{x}->{y}": list(labels) for (x, y), labels in sorted(self.hom.items())},
            "units": dict(sorted(self.units.items())),
            "mu": mu_entries,
        }

    @staticmethod
    def from_json(doc: dict) -> "AInfCategory":
        try:
            objects = list(doc["objects"])
            hom_raw = doc["hom"]
            units = dict(doc["units"])
            mu_raw = doc.get("mu", [])
        except (KeyError, TypeError) as exc:
            raise AInfError(f"malformed category document: {exc}")
        hom: dict[Pair, list[str]] = {}
        for key, labels in hom_raw.items():
            if "->" not in key:
                raise AInfError(f"malformed hom key {key!r}")
            x, y = key.split("->", 1)
            hom[(x, y)] = list(labels)
        label_pair = {lbl: pair for pair, labels in hom.items() for lbl in labels}
        index = {
            lbl: i for labels in hom.values() for i, lbl in enumerate(labels)
        }
        mu: dict[tuple[int, tuple[str, ...]], Gf2Vector] = {}
        for entry in mu_raw:
            d = int(entry["d"])
            chain = tuple(entry["inputs"])
            out_labels = list(entry["output"])
            if len(chain) != d:
                raise AInfError(f"mu entry arity mismatch: {entry}")
            for lbl in chain + tuple(out_labels):
                if lbl not in label_pair:
                    raise AInfError(f"mu entry uses unknown label {lbl!r}")
            target = (label_pair[chain[0]][0], label_pair[chain[-1]][1])
            vec = Gf2Vector.zero(len(hom[target]))
            for lbl in out_labels:
                if label_pair[lbl] != target:
                    raise AInfError(f"mu output label {lbl!r} in the wrong hom space")
                vec = vec + Gf2Vector.basis(len(hom[target]), index[lbl])
            mu[(d, chain)] = vec
        return AInfCategory(objects, hom, units, mu)


# -- cohomology category ----------------------------------------------------------


class CohomologyCategory:
    """H = ker mu1 / im mu1 per hom pair, with composition induced by mu2."""

    def __init__(self, cat: AInfCategory) -> None:
        self.cat = cat
        self.objects = cat.objects
        self._boundaries: dict[Pair, Subspace] = {}
        self._cycles: dict[Pair, Subspace] = {}
        for pair in cat.hom_pairs():
            m = cat.mu1_matrix(pair)
            solved = solve_affine(m, Gf2Vector.zero(m.rows))
            assert solved is not None
            _, kernel = solved
            image = Subspace(m.rows, (m.apply(Gf2Vector.basis(m.cols, j)) for j in range(m.cols)))
            cycles = Subspace(m.cols, kernel)
            for lbl_vec in kernel:
                if not m.apply(lbl_vec).is_zero():
                    raise AInfError("differential does not square to zero")
            self._boundaries[pair] = image
            self._cycles[pair] = cycles
            for b in image.basis():
                if not cycles.contains(b):
                    raise AInfError("differential does not square to zero")

    def space_dim(self, pair: Pair) -> int:
        if pair not in self.cat.hom:
            return 0
        return self._cycles[pair].dim - self._boundaries[pair].dim

    def class_count(self, pair: Pair) -> int:
        return 1 << self.space_dim(pair)

    def class_of(self, pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        """Canonical representative of the class of a cycle."""
        if pair not in self.cat.hom:
            if vec.length != 0:
                raise AInfError("vector in an absent hom space")
            return vec
        if not self._cycles[pair].contains(vec):
            raise AInfError("vector is not a cycle")
        return self._boundaries[pair].reduce(vec)

    def classes(self, pair: Pair) -> list[Gf2Vector]:
        """Canonical representatives of every class, deterministic order."""
        if pair not in self.cat.hom:
            return [Gf2Vector.zero(0)]
        seen = {}
        for vec in self._cycles[pair].enumerate():
            rep = self._boundaries[pair].reduce(vec)
            seen[rep.bits] = rep
        return [seen[b] for b in sorted(seen)]

    def compose(self, pair1: Pair, rep1: Gf2Vector, pair2: Pair, rep2: Gf2Vector) -> Gf2Vector:
        if pair1[1] != pair2[0]:
            raise AInfError("classes do not compose")
        target = (pair1[0], pair2[1])
        return self.class_of(target, self.cat.mu_apply([(pair1, rep1), (pair2, rep2)]))

    def identity_class(self, x: str) -> Gf2Vector:
        return self.class_of((x, x), self.cat.unit_vector(x))

    def validate(self) -> None:
        """Executable check: composition well defined, associative, unital."""
        for pair1 in self.cat.hom_pairs():
            for pair2 in self.cat.hom_pairs():
                if pair1[1] != pair2[0]:
                    continue
                for r1 in self.classes(pair1):
                    for r2 in self.classes(pair2):
                        base = self.compose(pair1, r1, pair2, r2)
                        for b in self._boundaries[pair1].basis():
                            if self.compose(pair1, r1 + b, pair2, r2) != base:
                                raise AInfError("composition not well defined")
                        for b in self._boundaries[pair2].basis():
                            if self.compose(pair1, r1, pair2, r2 + b) != base:
                                raise AInfError("composition not well defined")
        for p1 in self.cat.hom_pairs():
            for p2 in self.cat.hom_pairs():
                if p1[1] != p2[0]:
                    continue
                for p3 in self.cat.hom_pairs():
                    if p2[1] != p3[0]:
                        continue
                    for r1 in self.classes(p1):
                        for r2 in self.classes(p2):
                            left = self.compose(p1, r1, p2, r2)
                            for r3 in self.classes(p3):
                                lhs = self.compose((p1[0], p2[1]), left, p3, r3)
                                rhs = self.compose(
                                    p1, r1, (p2[0], p3[1]), self.compose(p2, r2, p3, r3)
                                )
                                if lhs != rhs:
                                    raise AInfError("cohomology composition not associative")
        for pair in self.cat.hom_pairs():
            x, y = pair
            for rep in self.classes(pair):
                if self.compose((x, x), self.identity_class(x), pair, rep) != rep:
                    raise AInfError("cohomology identity fails on the left")
                if self.compose(pair, rep, (y, y), self.identity_class(y)) != rep:
                    raise AInfError("cohomology identity fails on the right")

    def iso_pairs(self, x: str, y: str) -> list[tuple[Gf2Vector, Gf2Vector]]:
        """All (u, v) with u: x -> y, v: y -> x inverse to each other in H."""
        out = []
        for u in self.classes((x, y)):
            for v in self.classes((y, x)):
                if (
                    self.compose((x, y), u, (y, x), v) == self.identity_class(x)
                    and self.compose((y, x), v, (x, y), u) == self.identity_class(y)
                ):
                    out.append((u, v))
        return out

    def isomorphic(self, x: str, y: str) -> bool:
        if x == y:
            return True
        return bool(self.iso_pairs(x, y))


# -- strict functors ----------------------------------------------------------------


class StrictFunctor:
    """An A-infinity functor with vanishing higher components.

    hom_images maps each source basis label to its image vector in
    hom(F(source), F(target)) of the target category.
    """

    def __init__(
        self,
        source: AInfCategory,
        target: AInfCategory,
        object_map: Mapping[str, str],
        hom_images: Mapping[str, Gf2Vector],
    ) -> None:
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.hom_images = dict(hom_images)
        for x in source.objects:
            if self.object_map.get(x) not in target.objects:
                raise AInfError(f"object {x!r} has no valid image")
        for pair in source.hom_pairs():
            tpair = self.pair_image(pair)
            for lbl in source.basis(pair):
                img = self.hom_images.get(lbl)
                if img is None or img.length != target.dim(tpair):
                    raise AInfError(f"label {lbl!r} has no valid image vector")

    def pair_image(self, pair: Pair) -> Pair:
        return (self.object_map[pair[0]], self.object_map[pair[1]])

    def apply(self, pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        out = self.target.zero(self.pair_image(pair))
        labels = self.source.basis(pair)
        for i in vec.support():
            out = out + self.hom_images[labels[i]]
        return out

    def hom_matrix(self, pair: Pair) -> Gf2Matrix:
        cols = [self.hom_images[lbl] for lbl in self.source.basis(pair)]
        return Gf2Matrix.from_columns(cols, height=self.target.dim(self.pair_image(pair)))

    def check_strict(self, d_max: Optional[int] = None) -> None:
        """Commutes with every mu^d componentwise and preserves units."""
        for x in self.source.objects:
            img = self.apply((x, x), self.source.unit_vector(x))
            if img != self.target.unit_vector(self.object_map[x]):
                raise AInfError(f"unit of {x!r} not preserved")
        if d_max is None:
            d_max = max(self.source.max_arity, self.target.max_arity)
        for d in range(1, d_max + 1):
            for chain in self.source.composable_chains(d):
                pairs = [self.source.label_pair[lbl] for lbl in chain]
                source_out = self.source.mu_labels(chain)
                left = self.apply((pairs[0][0], pairs[-1][1]), source_out)
                args = [
                    (self.pair_image(p), self.hom_images[lbl]) for p, lbl in zip(pairs, chain)
                ]
                right = self.target.mu_apply(args)
                if left != right:
                    raise AInfError(f"functor does not commute with mu^{d} on {chain}")

    def is_strict(self, d_max: Optional[int] = None) -> bool:
        try:
            self.check_strict(d_max)
        except AInfError:
            return False
        return True

    def then(self, other: StrictFunctor) -> StrictFunctor:
        if other.source is not self.target:
            raise AInfError("functor composition mismatch")
        images = {}
        for pair in self.source.hom_pairs():
            for lbl in self.source.basis(pair):
                images[lbl] = other.apply(self.pair_image(pair), self.hom_images[lbl])
        return StrictFunctor(
            self.source,
            other.target,
            {x: other.object_map[y] for x, y in self.object_map.items()},
            images,
        )

    @staticmethod
    def identity(cat: AInfCategory) -> StrictFunctor:
        return StrictFunctor(
            cat,
            cat,
            {x: x for x in cat.objects},
            {lbl: cat.basis_vector(lbl) for lbl in cat.label_pair},
        )

    def inverse_object(self, y: str) -> str:
        matches = [x for x, fx in self.object_map.items() if fx == y]
        if len(matches) != 1:
            raise AInfError(f"object {y!r} has no unique preimage")
        return matches[0]

    def inverse_apply(self, pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        """Invert the hom component over a source pair (must be bijective)."""
        m = self.hom_matrix(pair)
        solved = solve_affine(m, vec)
        if solved is None or solved[1]:
            raise AInfError("hom component is not invertible")
        return solved[0]

    def to_json(self) -> dict:
        return {
            "objects": dict(sorted(self.object_map.items())),
            "hom": {
                lbl: self.target.labels_of(self.pair_image(self.source.label_pair[lbl]), vec)
                for lbl, vec in sorted(self.hom_images.items())
            },
        }

    @staticmethod
    def from_json(doc: dict, source: AInfCategory, target: AInfCategory) -> "StrictFunctor":
        object_map = dict(doc["objects"])
        hom_images = {}
        for lbl, out_labels in doc["hom"].items():
            if lbl not in source.label_pair:
                raise AInfError(f"functor maps unknown label {lbl!r}")
            tpair = (
                object_map[source.label_pair[lbl][0]],
                object_map[source.label_pair[lbl][1]],
            )
            vec = target.zero(tpair)
            for out in out_labels:
                if target.label_pair.get(out) != tpair:
                    raise AInfError(f"functor image label {out!r} in the wrong hom space")
                vec = vec + target.basis_vector(out)
            hom_images[lbl] = vec
        return StrictFunctor(source, target, object_map, hom_images)


def is_fully_faithful_embedding(f: StrictFunctor) -> bool:
    """Injective on objects with every hom component a chain isomorphism."""
    images = [f.object_map[x] for x in f.source.objects]
    if len(set(images)) != len(images):
        return False
    for x in f.source.objects:
        for y in f.source.objects:
            pair = (x, y)
            tpair = f.pair_image(pair)
            if f.source.dim(pair) != f.target.dim(tpair):
                return False
            if f.source.dim(pair) == 0:
                continue
            m = f.hom_matrix(pair)
            from .gf2 import rank

            if rank(m) != f.source.dim(pair):
                return False
    return True


def is_quasi_equivalence(f: StrictFunctor) -> bool:
    """Isomorphisms on cohomology homs plus cohomological essential surjectivity."""
    hs = f.source.cohomology()
    ht = f.target.cohomology()
    for x in f.source.objects:
        for y in f.source.objects:
            pair = (x, y)
            tpair = f.pair_image(pair)
            if hs.space_dim(pair) != ht.space_dim(tpair):
                return False
            image_classes = set()
            for rep in hs.classes(pair):
                image_classes.add(ht.class_of(tpair, f.apply(pair, rep)).bits)
            if len(image_classes) != hs.class_count(pair):
                return False
    image_objects = set(f.object_map.values())
    for t in f.target.objects:
        if t in image_objects:
            continue
        if not any(ht.isomorphic(t, img) for img in sorted(image_objects)):
            return False
    return True


# -- degenerate-simplex extension ------------------------------------------------


def _fresh(name: str, used: set[str]) -> str:
    candidate = name + "'"
    while candidate in used:
        candidate += "'"
    used.add(candidate)
    return candidate


@dataclass
class DegenerateExtension:
    category: AInfCategory
    embed_c: StrictFunctor
    embed_d: StrictFunctor
    proj: StrictFunctor


def degenerate_extension(
    c: AInfCategory, d: AInfCategory, i: StrictFunctor
) -> DegenerateExtension:
    """Adjoin a tautological copy of D to C along a fully faithful i: D -> C.

    The result E has objects obj(C) + obj(D); homs into and out of adjoined
    copies are identified with the corresponding homs of C through i, homs
    between two adjoined copies with the homs of D, and all operations are
    inherited from C by conjugation.  The projection collapses each adjoined
    copy onto its image.
    """
    if i.source is not d or i.target is not c:
        raise AInfError("embedding must map D into C")
    if not is_fully_faithful_embedding(i):
        raise AInfError("embedding is not fully faithful")

    used_objects = set(c.objects)
    adjoined = {x: _fresh(x, used_objects) for x in d.objects}
    objects = list(c.objects) + [adjoined[x] for x in d.objects]

    def project(obj: str) -> str:
        if obj in adjoined.values():
            src = next(x for x, fx in adjoined.items() if fx == obj)
            return i.object_map[src]
        return obj

    used_labels = set(c.label_pair)
    used_labels.update(d.label_pair)
    hom: dict[Pair, tuple[str, ...]] = {pair: labels for pair, labels in c.hom.items()}
    # sector_kind[(a, b)]: how the hom between two E-objects is presented.
    new_labels: dict[Pair, tuple[str, ...]] = {}
    label_origin: dict[str, str] = {}
    adjoined_set = set(adjoined.values())

    def underlying_pair(a: str, b: str) -> Pair:
        return (project(a), project(b))

    for a in objects:
        for b in objects:
            if a not in adjoined_set and b not in adjoined_set:
                continue
            if a in adjoined_set and b in adjoined_set:
                da = next(x for x, fx in adjoined.items() if fx == a)
                db = next(x for x, fx in adjoined.items() if fx == b)
                origin = d.basis((da, db))
            else:
                origin = c.basis(underlying_pair(a, b))
            if not origin:
                continue
            fresh = tuple(_fresh(lbl, used_labels) for lbl in origin)
            new_labels[(a, b)] = fresh
            hom[(a, b)] = fresh
            for orig, f in zip(origin, fresh):
                label_origin[f] = orig

    # Transport of an E-sector element to the underlying C-hom vector.
    def to_c(pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        a, b = pair
        if a not in adjoined_set and b not in adjoined_set:
            return vec
        upair = underlying_pair(a, b)
        out = c.zero(upair)
        labels = hom[pair]
        for idx in vec.support():
            origin = label_origin[labels[idx]]
            if a in adjoined_set and b in adjoined_set:
                out = out + i.hom_images[origin]
            else:
                out = out + c.basis_vector(origin)
        return out

    def from_c(pair: Pair, vec: Gf2Vector) -> Gf2Vector:
        a, b = pair
        if a not in adjoined_set and b not in adjoined_set:
            return vec
        labels = hom.get(pair, ())
        out = Gf2Vector.zero(len(labels))
        if a in adjoined_set and b in adjoined_set:
            da = next(x for x, fx in adjoined.items() if fx == a)
            db = next(x for x, fx in adjoined.items() if fx == b)
            d_vec = i.inverse_apply((da, db), vec)
            for idx in d_vec.support():
                origin = d.basis((da, db))[idx]
                pos = [label_origin[l] for l in labels].index(origin)
                out = out + Gf2Vector.basis(len(labels), pos)
            return out
        upair = underlying_pair(a, b)
        for idx in vec.support():
            origin = c.basis(upair)[idx]
            pos = [label_origin[l] for l in labels].index(origin)
            out = out + Gf2Vector.basis(len(labels), pos)
        return out

    units: dict[str, str] = dict(c.units)
    for x in d.objects:
        pair = (adjoined[x], adjoined[x])
        pos = d.basis((x, x)).index(d.units[x])
        units[adjoined[x]] = hom[pair][pos]

    # Conjugate every mu table entry along the sector identifications.
    mu: dict[tuple[int, tuple[str, ...]], Gf2Vector] = {}
    label_pair: dict[str, Pair] = {}
    for pair, labels in hom.items():
        for lbl in labels:
            label_pair[lbl] = pair

    by_source: dict[str, list[Pair]] = {}
    for pair in sorted(hom):
        by_source.setdefault(pair[0], []).append(pair)

    max_arity = max(c.max_arity, 2)

    def chains(at: str, remaining: int, acc: tuple[str, ...]):
        if remaining == 0:
            yield acc
            return
        for pair in by_source.get(at, []):
            for lbl in hom[pair]:
                yield from chains(pair[1], remaining - 1, acc + (lbl,))

    for arity in range(1, max_arity + 1):
        for start in objects:
            for chain in chains(start, arity, ()):
                pairs = [label_pair[lbl] for lbl in chain]
                args = [
                    (underlying_pair(*p), to_c(p, Gf2Vector.basis(len(hom[p]), hom[p].index(lbl))))
                    for p, lbl in zip(pairs, chain)
                ]
                out_c = c.mu_apply(args)
                if out_c.is_zero():
                    continue
                target = (pairs[0][0], pairs[-1][1])
                mu[(arity, chain)] = from_c(target, out_c)

    category = AInfCategory(objects, hom, units, mu)

    embed_c = StrictFunctor(
        c,
        category,
        {x: x for x in c.objects},
        {lbl: category.basis_vector(lbl) for lbl in c.label_pair},
    )
    embed_d_images: dict[str, Gf2Vector] = {}
    for pair in d.hom_pairs():
        epair = (adjoined[pair[0]], adjoined[pair[1]])
        for lbl in d.basis(pair):
            pos = [label_origin[l] for l in hom[epair]].index(lbl)
            embed_d_images[lbl] = Gf2Vector.basis(len(hom[epair]), pos)
    embed_d = StrictFunctor(
        d, category, {x: adjoined[x] for x in d.objects}, embed_d_images
    )
    proj_images: dict[str, Gf2Vector] = {}
    for pair, labels in hom.items():
        upair = underlying_pair(*pair)
        for lbl in labels:
            proj_images[lbl] = to_c(pair, category.basis_vector(lbl))
    proj = StrictFunctor(category, c, {x: project(x) for x in objects}, proj_images)
    return DegenerateExtension(category, embed_c, embed_d, proj)
