"""The nerve of a strictly unital A-infinity category over F2.

An n-simplex is a vertex tuple of objects plus an element f_J of
hom(X_min(J), X_max(J)) for every vertex subset J of size >= 2, subject to
the coherence equation

    mu1(f_J) = sum over interior p of J of f_{J - p}
             + sum over wedge decompositions (J_1, ..., J_s) of
               mu^s(f_{J_1}, ..., f_{J_s}).

Subsets are sorted tuples of vertex positions; absent values are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from . import ordinal, simplicial
from .ainf import AInfCategory, AInfError, Pair, StrictFunctor
from .gf2 import Gf2Vector, solve_affine
from .ordinal import OrdinalMap
from .simplicial import SimplexRef, SimplicialSet

Subset = tuple[int, ...]


class NerveError(ValueError):
    pass


@dataclass(frozen=True)
class WedgeDecomposition:
    """Consecutive blocks of [n] with >= 2 elements sharing endpoints."""

    n: int
    cuts: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = 0
        for c in self.cuts:
            if not prev < c < self.n:
                raise NerveError("cuts must be interior and increasing")
            prev = c
        if not self.cuts:
            raise NerveError("a wedge decomposition needs at least two blocks")

    @property
    def length(self) -> int:
        return len(self.cuts) + 1

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        ends = (0,) + self.cuts + (self.n,)
        return tuple(
            tuple(range(ends[i], ends[i + 1] + 1)) for i in range(len(ends) - 1)
        )


@lru_cache(maxsize=None)
def wedge_decompositions(n: int) -> tuple[WedgeDecomposition, ...]:
    """All decompositions of [n]; there are 2^(n-1) - 1 of them."""
    if n < 1:
        raise NerveError("n must be at least 1")
    out = []
    for r in range(1, n):
        for cuts in combinations(range(1, n), r):
            out.append(WedgeDecomposition(n, cuts))
    return tuple(out)


def subset_blocks(subset: Subset) -> tuple[tuple[Subset, ...], ...]:
    """Block families for each wedge decomposition, reindexed through subset."""
    m = len(subset) - 1
    if m < 1:
        return ()
    families = []
    for decomp in wedge_decompositions(m):
        families.append(
            tuple(tuple(subset[i] for i in block) for block in decomp.blocks())
        )
    return tuple(families)


class NerveSimplex:
    """An n-simplex candidate; construction normalizes absent values to zero."""

    def __init__(
        self,
        category: AInfCategory,
        vertices: Sequence[str],
        f: Mapping[Subset, Gf2Vector],
    ) -> None:
        self.category = category
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise NerveError("a simplex needs at least one vertex")
        for v in self.vertices:
            if v not in category.objects:
                raise NerveError(f"unknown object {v!r}")
        n = self.dim
        self.f: dict[Subset, Gf2Vector] = {}
        for size in range(2, n + 2):
            for subset in combinations(range(n + 1), size):
                pair = self.pair(subset)
                value = f.get(subset)
                if value is None:
                    value = category.zero(pair)
                elif value.length != category.dim(pair):
                    raise NerveError(f"value at {subset} has the wrong length")
                self.f[subset] = value
        for subset in f:
            if subset not in self.f:
                raise NerveError(f"stray subset {subset}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def pair(self, subset: Subset) -> Pair:
        return (self.vertices[subset[0]], self.vertices[subset[-1]])

    def value(self, subset: Subset) -> Gf2Vector:
        if len(subset) < 2:
            raise NerveError("values exist only for subsets of size >= 2")
        return self.f[subset]

    def key(self) -> tuple:
        return (
            self.vertices,
            tuple(sorted((s, v.bits) for s, v in self.f.items() if v.bits)),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NerveSimplex) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "f": {
                ",".join(str(i) for i in subset): self.category.labels_of(
                    self.pair(subset), vec
                )
                for subset, vec in sorted(self.f.items())
                if vec.bits
            },
        }

    @staticmethod
    def from_json(doc: dict, category: AInfCategory) -> "NerveSimplex":
        vertices = list(doc["vertices"])
        f: dict[Subset, Gf2Vector] = {}
        for key, labels in doc.get("f", {}).items():
            subset = tuple(int(p) for p in key.split(","))
            pair = (vertices[subset[0]], vertices[subset[-1]])
            vec = category.zero(pair)
            for lbl in labels:
                if category.label_pair.get(lbl) != pair:
                    raise NerveError(f"label {lbl!r} not in hom{pair}")
                vec = vec + category.basis_vector(lbl)
            f[subset] = vec
        return NerveSimplex(category, vertices, f)


# -- the coherence equation ---------------------------------------------------


def _wedge_sum(
    cat: AInfCategory,
    vertices: Sequence[str],
    data: Mapping[Subset, Gf2Vector],
    subset: Subset,
) -> Gf2Vector:
    """Sum of mu^s over all wedge decompositions of the subset."""
    pair = (vertices[subset[0]], vertices[subset[-1]])
    total = cat.zero(pair)
    for family in subset_blocks(subset):
        args = []
        degenerate = False
        for block in family:
            bpair = (vertices[block[0]], vertices[block[-1]])
            vec = data[block]
            if vec.is_zero():
                degenerate = True
                break
            args.append((bpair, vec))
        if degenerate:
            continue
        total = total + cat.mu_apply(args)
    return total


def _lower_terms(
    cat: AInfCategory,
    vertices: Sequence[str],
    data: Mapping[Subset, Gf2Vector],
    subset: Subset,
) -> Gf2Vector:
    """Right-hand side of the equation at subset (deletions plus wedges)."""
    pair = (vertices[subset[0]], vertices[subset[-1]])
    total = cat.zero(pair)
    for p in range(1, len(subset) - 1):
        total = total + data[subset[:p] + subset[p + 1 :]]
    return total + _wedge_sum(cat, vertices, data, subset)


def simplex_residual(c: NerveSimplex, subset: Subset) -> Gf2Vector:
    """mu1(f_J) + RHS(J); zero exactly when the equation at J holds."""
    if len(subset) < 2:
        raise NerveError("residuals exist only for subsets of size >= 2")
    pair = c.pair(subset)
    lhs = c.category.mu1(pair, c.value(subset))
    if len(subset) == 2:
        return lhs
    return lhs + _lower_terms(c.category, c.vertices, c.f, subset)


def is_nerve_simplex(c: NerveSimplex) -> tuple[bool, Optional[Subset]]:
    """Check every subset equation; returns (ok, first failing subset)."""
    n = c.dim
    for size in range(2, n + 2):
        for subset in combinations(range(n + 1), size):
            if not simplex_residual(c, subset).is_zero():
                return False, subset
    return True, None


# -- faces and degeneracies -----------------------------------------------------


def nerve_face(c: NerveSimplex, m: OrdinalMap) -> NerveSimplex:
    """Restriction along a mono: f'_J = f_{m(J)}."""
    if not m.is_mono or m.target_dim != c.dim:
        raise NerveError("face maps are monos into the simplex dimension")
    vertices = tuple(c.vertices[m(i)] for i in range(m.source_dim + 1))
    f = {}
    for size in range(2, m.source_dim + 2):
        for subset in combinations(range(m.source_dim + 1), size):
            f[subset] = c.value(tuple(m(i) for i in subset))
    return NerveSimplex(c.category, vertices, f)


def nerve_face_at(c: NerveSimplex, i: int) -> NerveSimplex:
    return nerve_face(c, ordinal.coface(i, c.dim))


def nerve_degeneracy(c: NerveSimplex, i: int) -> NerveSimplex:
    """Degenerate (n+1)-simplex doubling vertex i; unit on the doubled edge."""
    n = c.dim
    if not 0 <= i <= n:
        raise NerveError("degeneracy index out of range")
    sigma = ordinal.codegeneracy(i, n)
    vertices = tuple(c.vertices[sigma(p)] for p in range(n + 2))
    f: dict[Subset, Gf2Vector] = {}
    for size in range(2, n + 3):
        for subset in combinations(range(n + 2), size):
            if subset == (i, i + 1):
                f[subset] = c.category.unit_vector(c.vertices[i])
                continue
            image = tuple(sigma(p) for p in subset)
            if len(set(image)) == len(image):
                f[subset] = c.value(image)
            # collapsed subsets other than the doubled edge are zero
    return NerveSimplex(c.category, vertices, f)


def is_degenerate_at(c: NerveSimplex, i: int) -> bool:
    if not 0 <= i < c.dim:
        raise NerveError("degeneracy position out of range")
    if c.vertices[i] != c.vertices[i + 1]:
        return False
    return c == nerve_degeneracy(nerve_face_at(c, i), i)


def ez_normal_form(c: NerveSimplex) -> tuple[NerveSimplex, OrdinalMap]:
    """Unique (nondegenerate core, epi) with c = epi*(core)."""
    n = c.dim
    for i in range(n):
        if is_degenerate_at(c, i):
            core, word = ez_normal_form(nerve_face_at(c, i))
            return core, ordinal.codegeneracy(i, n - 1).then(word)
    return c, ordinal.identity(n)


def act(c: NerveSimplex, m: OrdinalMap) -> NerveSimplex:
    """Contravariant action of an arbitrary ordinal map."""
    epi, mono = m.epi_mono_factor()
    out = nerve_face(c, mono)
    for i in reversed(ordinal.epi_to_word(epi)):
        out = nerve_degeneracy(out, i)
    return out


# -- horn filling -----------------------------------------------------------------


def fill_inner_horn(
    category: AInfCategory,
    vertices: Sequence[str],
    horn_data: Mapping[Subset, Gf2Vector],
    k: int,
    validate_input: bool = True,
) -> NerveSimplex:
    """Fill an inner horn by the explicit formula.

    horn_data must supply f_J for every J except the full subset and the
    k-th facet; the filler sets f_top = 0 and computes the missing facet as
    the sum of the remaining interior deletions and all wedge terms of the
    full subset.
    """
    n = len(vertices) - 1
    if not 0 < k < n:
        raise NerveError("only inner horns can be filled")
    top = tuple(range(n + 1))
    facet = top[:k] + top[k + 1 :]
    data: dict[Subset, Gf2Vector] = {}
    for size in range(2, n + 1):
        for subset in combinations(range(n + 1), size):
            if subset == facet:
                continue
            value = horn_data.get(subset)
            pair = (vertices[subset[0]], vertices[subset[-1]])
            if value is None:
                value = Gf2Vector.zero(len(category.hom.get(pair, ())))
            data[subset] = value
    if validate_input:
        for size in range(2, n + 1):
            for subset in combinations(range(n + 1), size):
                if subset == facet:
                    continue
                lhs = category.mu1(
                    (vertices[subset[0]], vertices[subset[-1]]), data[subset]
                )
                if len(subset) > 2:
                    lhs = lhs + _lower_terms(category, vertices, data, subset)
                if not lhs.is_zero():
                    raise NerveError(f"horn faces fail the equation at {subset}")
    # The missing facet is not an interval of the full subset, so no wedge
    # block below references it and the formula closes over horn data alone.
    missing = Gf2Vector.zero(len(category.hom.get((vertices[facet[0]], vertices[facet[-1]]), ())))
    for p in range(1, n):
        if p == k:
            continue
        missing = missing + data[top[:p] + top[p + 1 :]]
    missing = missing + _wedge_sum(category, vertices, data, top)
    data[facet] = missing
    data[top] = Gf2Vector.zero(len(category.hom.get((vertices[0], vertices[n]), ())))
    return NerveSimplex(category, vertices, data)


# -- enumeration ------------------------------------------------------------------


class _PairSolver:
    """Cached affine solver for mu1(x) = rhs on one hom space."""

    def __init__(self, cat: AInfCategory, pair: Pair) -> None:
        matrix = cat.mu1_matrix(pair)
        self.matrix = matrix
        zero = solve_affine(matrix, Gf2Vector.zero(matrix.rows))
        assert zero is not None
        _, kernel = zero
        self.kernel_span = [Gf2Vector.zero(matrix.cols)]
        for basis_vec in kernel:
            self.kernel_span = self.kernel_span + [
                v + basis_vec for v in self.kernel_span
            ]

    def solutions(self, rhs: Gf2Vector) -> list[Gf2Vector]:
        solved = solve_affine(self.matrix, rhs)
        if solved is None:
            return []
        particular, _ = solved
        return [particular + k for k in self.kernel_span]


class NerveEnumerator:
    def __init__(self, cat: AInfCategory) -> None:
        self.cat = cat
        self._solvers: dict[Pair, _PairSolver] = {}

    def solver(self, pair: Pair) -> _PairSolver:
        if pair not in self._solvers:
            self._solvers[pair] = _PairSolver(self.cat, pair)
        return self._solvers[pair]

    def extensions(
        self,
        vertices: Sequence[str],
        fixed: Mapping[Subset, Gf2Vector],
        skip: frozenset[Subset] = frozenset(),
    ) -> Iterator[dict[Subset, Gf2Vector]]:
        """All coherent f-families for the vertex tuple.

        fixed pins subsets to given values; subsets in skip carry no value
        and impose no equation (used to enumerate horns).
        """
        n = len(vertices) - 1
        subsets = [
            subset
            for size in range(2, n + 2)
            for subset in combinations(range(n + 1), size)
            if subset not in skip
        ]
        cat = self.cat

        def assign(idx: int, data: dict[Subset, Gf2Vector]) -> Iterator[dict]:
            if idx == len(subsets):
                yield dict(data)
                return
            subset = subsets[idx]
            pair = (vertices[subset[0]], vertices[subset[-1]])
            rhs = (
                _lower_terms(cat, vertices, data, subset)
                if len(subset) > 2
                else cat.zero(pair)
            )
            pinned = fixed.get(subset)
            if pinned is not None:
                if cat.mu1(pair, pinned) == rhs:
                    data[subset] = pinned
                    yield from assign(idx + 1, data)
                    del data[subset]
                return
            for x in self.solver(pair).solutions(rhs):
                data[subset] = x
                yield from assign(idx + 1, data)
                del data[subset]

        yield from assign(0, {})


def enumerate_simplices(
    cat: AInfCategory,
    n: int,
    vertices: Optional[Sequence[str]] = None,
    fixed: Optional[Mapping[Subset, Gf2Vector]] = None,
    vertex_tuples: Optional[Iterable[tuple[str, ...]]] = None,
    enumerator: Optional[NerveEnumerator] = None,
) -> list[NerveSimplex]:
    """All n-simplices, optionally with fixed vertices or pinned values.

    The equations are solved level by level: the value at each subset is a
    solution of an affine system whose right side is determined by strictly
    smaller subsets.
    """
    if n == 0 and vertices is None and vertex_tuples is None:
        return [NerveSimplex(cat, (x,), {}) for x in cat.objects]
    enum = enumerator or NerveEnumerator(cat)
    if vertices is not None:
        tuples: Iterable[tuple[str, ...]] = [tuple(vertices)]
    elif vertex_tuples is not None:
        tuples = vertex_tuples
    else:
        tuples = product(cat.objects, repeat=n + 1)
    out = []
    for vt in tuples:
        if len(vt) != n + 1:
            raise NerveError("vertex tuple has the wrong length")
        for data in enum.extensions(vt, fixed or {}):
            out.append(NerveSimplex(cat, vt, data))
    return out


# -- the truncated nerve as a simplicial set ---------------------------------------


class NerveTruncation:
    """nerve cells up to a cap, indexed for face lookups."""

    def __init__(
        self,
        cat: AInfCategory,
        cap: int,
        vertex_tuples: Optional[dict[int, list[tuple[str, ...]]]] = None,
        id_prefix: str = "n",
    ) -> None:
        self.cat = cat
        self.cap = cap
        enum = NerveEnumerator(cat)
        cells: dict[int, list[str]] = {}
        faces: dict[str, tuple[SimplexRef, ...]] = {}
        self.by_id: dict[str, NerveSimplex] = {}
        self._ids: dict[tuple, str] = {}
        for d in range(cap + 1):
            chosen = (
                vertex_tuples.get(d)
                if vertex_tuples is not None
                else None
            )
            found = enumerate_simplices(
                cat, d, vertex_tuples=chosen, enumerator=enum
            )
            nondeg = []
            for simplex in found:
                if any(is_degenerate_at(simplex, i) for i in range(d)):
                    continue
                nondeg.append(simplex)
            nondeg.sort(key=lambda s: s.key())
            ids = []
            for idx, simplex in enumerate(nondeg):
                # Vertices are named by their objects; higher cells get
                # generated ids in canonical enumeration order.
                cid = simplex.vertices[0] if d == 0 else f"{id_prefix}{d}_{idx}"
                ids.append(cid)
                self.by_id[cid] = simplex
                self._ids[simplex.key()] = cid
            cells[d] = ids
        for d in range(1, cap + 1):
            for cid in cells[d]:
                simplex = self.by_id[cid]
                refs = []
                for i in range(d + 1):
                    refs.append(self.ref_of(nerve_face_at(simplex, i)))
                faces[cid] = tuple(refs)
        self.sset = SimplicialSet(cap, cells, faces)

    def ref_of(self, simplex: NerveSimplex) -> SimplexRef:
        core, word = ez_normal_form(simplex)
        cid = self._ids.get(core.key())
        if cid is None:
            raise NerveError("simplex not present in the truncation")
        return SimplexRef(cid, word)

    def simplex_of(self, ref: SimplexRef) -> NerveSimplex:
        return act(self.by_id[ref.base], ref.word)


def nerve_truncation(cat: AInfCategory, cap: int) -> SimplicialSet:
    """The nerve as a capped simplicial set (see NerveTruncation for lookups)."""
    return NerveTruncation(cat, cap).sset


# -- horn surveys (exhaustive, without materializing top cells) ---------------------


@dataclass
class HornSurvey:
    n: int
    k: int
    horns: int
    failures: list[tuple[tuple[str, ...], Optional[Subset]]]

    @property
    def ok(self) -> bool:
        return not self.failures


def survey_inner_horns(
    cat: AInfCategory,
    n: int,
    k: int,
    enumerator: Optional[NerveEnumerator] = None,
) -> HornSurvey:
    """Fill and verify every inner horn of dimension n at position k.

    Horns are enumerated as coherent partial families (all subsets except
    the full one and the k-th facet); each is filled by the explicit
    formula and the filler is checked subset by subset.
    """
    if not 0 < k < n:
        raise NerveError("only inner horns are surveyed")
    enum = enumerator or NerveEnumerator(cat)
    top = tuple(range(n + 1))
    facet = top[:k] + top[k + 1 :]
    skip = frozenset({top, facet})
    failures = []
    count = 0
    for vt in product(cat.objects, repeat=n + 1):
        for data in enum.extensions(vt, {}, skip=skip):
            count += 1
            filler = fill_inner_horn(cat, vt, data, k, validate_input=False)
            ok, witness = is_nerve_simplex(filler)
            if not ok:
                failures.append((vt, witness))
                continue
            for subset, value in data.items():
                if filler.value(subset) != value:
                    failures.append((vt, subset))
                    break
    return HornSurvey(n, k, count, failures)


# -- nerves of functors ---------------------------------------------------------------


class FunctorComponents:
    """Components F^s of an A-infinity functor, for mapping nerve simplices.

    maps[(s, chain)] gives F^s on a chain of source basis labels; the s = 1
    component must cover every label.  Strict functors have no higher
    components.
    """

    def __init__(
        self,
        source: AInfCategory,
        target: AInfCategory,
        object_map: Mapping[str, str],
        maps: Mapping[tuple[int, tuple[str, ...]], Gf2Vector],
    ) -> None:
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.maps = dict(maps)

    @staticmethod
    def from_strict(f: StrictFunctor) -> "FunctorComponents":
        return FunctorComponents(
            f.source,
            f.target,
            f.object_map,
            {(1, (lbl,)): vec for lbl, vec in f.hom_images.items()},
        )

    def target_pair(self, pair: Pair) -> Pair:
        return (self.object_map[pair[0]], self.object_map[pair[1]])

    def apply(self, s: int, args: Sequence[tuple[Pair, Gf2Vector]]) -> Gf2Vector:
        target = self.target_pair((args[0][0][0], args[-1][0][1]))
        out = Gf2Vector.zero(len(self.target.hom.get(target, ())))
        supports = []
        for pair, vec in args:
            labels = self.source.basis(pair)
            supports.append([labels[i] for i in vec.support()])
        for chain in product(*supports):
            entry = self.maps.get((s, chain))
            if entry is not None:
                out = out + entry
        return out


def nerve_of_functor(
    components: FunctorComponents | StrictFunctor, c: NerveSimplex
) -> NerveSimplex:
    """Image simplex: f_J goes to the sum of F^s over block families of J,
    the trivial single-block family included."""
    if isinstance(components, StrictFunctor):
        components = FunctorComponents.from_strict(components)
    if components.source is not c.category:
        raise NerveError("simplex does not live in the functor source")
    vertices = tuple(components.object_map[v] for v in c.vertices)
    f: dict[Subset, Gf2Vector] = {}
    for subset, value in c.f.items():
        tpair = (vertices[subset[0]], vertices[subset[-1]])
        total = Gf2Vector.zero(len(components.target.hom.get(tpair, ())))
        pair = c.pair(subset)
        total = total + components.apply(1, [(pair, value)])
        for family in subset_blocks(subset):
            args = []
            for block in family:
                bpair = (c.vertices[block[0]], c.vertices[block[-1]])
                args.append((bpair, c.f[block]))
            total = total + components.apply(len(family), args)
        f[subset] = total
    return NerveSimplex(components.target, vertices, f)
