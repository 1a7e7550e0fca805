"""Small reference categories and diagrams used across tests and demos."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .ainf import AInfCategory, AInfError, StrictFunctor
from .gf2 import Gf2Vector


def discrete_category(objects: Sequence[str]) -> AInfCategory:
    """Units only; every other hom space is absent."""
    hom = {(x, x): (f"e_{x}",) for x in objects}
    units = {x: f"e_{x}" for x in objects}
    mu = {}
    for x in objects:
        e = f"e_{x}"
        mu[(2, (e, e))] = Gf2Vector.basis(1, 0)
    return AInfCategory(objects, hom, units, mu)


def poset_category(n: int) -> AInfCategory:
    """The poset 0 < 1 < ... < n with one-dimensional homs and mu2 composition."""
    objects = [str(i) for i in range(n + 1)]
    hom = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            hom[(str(i), str(j))] = (f"a{i}{j}",)
    units = {str(i): f"a{i}{i}" for i in range(n + 1)}
    mu = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                mu[(2, (f"a{i}{j}", f"a{j}{k}"))] = Gf2Vector.basis(1, 0)
    return AInfCategory(objects, hom, units, mu)


def two_term_category() -> AInfCategory:
    """hom(X, Y) = span{a, b} with mu1(a) = b; cohomology of (X, Y) vanishes."""
    objects = ["X", "Y"]
    hom = {("X", "X"): ("ex",), ("Y", "Y"): ("ey",), ("X", "Y"): ("a", "b")}
    units = {"X": "ex", "Y": "ey"}
    one = Gf2Vector.basis(1, 0)
    mu = {
        (2, ("ex", "ex")): one,
        (2, ("ey", "ey")): one,
        (1, ("a",)): Gf2Vector.basis(2, 1),
        (2, ("ex", "a")): Gf2Vector.basis(2, 0),
        (2, ("ex", "b")): Gf2Vector.basis(2, 1),
        (2, ("a", "ey")): Gf2Vector.basis(2, 0),
        (2, ("b", "ey")): Gf2Vector.basis(2, 1),
    }
    return AInfCategory(objects, hom, units, mu)


def iso_pair_category() -> AInfCategory:
    """Two objects joined by strict inverse morphisms p, q."""
    objects = ["X", "Y"]
    hom = {
        ("X", "X"): ("ex",),
        ("Y", "Y"): ("ey",),
        ("X", "Y"): ("p",),
        ("Y", "X"): ("q",),
    }
    units = {"X": "ex", "Y": "ey"}
    one = Gf2Vector.basis(1, 0)
    mu = {
        (2, ("ex", "ex")): one,
        (2, ("ey", "ey")): one,
        (2, ("ex", "p")): one,
        (2, ("p", "ey")): one,
        (2, ("ey", "q")): one,
        (2, ("q", "ex")): one,
        (2, ("p", "q")): one,
        (2, ("q", "p")): one,
    }
    return AInfCategory(objects, hom, units, mu)


def disjoint_pair_category() -> AInfCategory:
    """Two objects with an isolated second object (no cross homs)."""
    return discrete_category(["X", "Y"])


def _mu3_skeleton(
    alpha: int,
    gamma: int,
    abc: tuple[Gf2Vector, Gf2Vector, Gf2Vector, Gf2Vector],
    e_coeff: int,
    g_coeff: int,
) -> AInfCategory:
    """Candidate table on hom(X,Y) = {u, v}, hom(Y,X) = {w}, mu1(u) = v."""
    objects = ["X", "Y"]
    hom = {
        ("X", "X"): ("ex",),
        ("Y", "Y"): ("ey",),
        ("X", "Y"): ("u", "v"),
        ("Y", "X"): ("w",),
    }
    units = {"X": "ex", "Y": "ey"}
    one = Gf2Vector.basis(1, 0)
    mu: dict[tuple[int, tuple[str, ...]], Gf2Vector] = {
        (2, ("ex", "ex")): one,
        (2, ("ey", "ey")): one,
        (1, ("u",)): Gf2Vector.basis(2, 1),
    }
    for lbl in ("u", "v"):
        mu[(2, ("ex", lbl))] = Gf2Vector(2, 1 << ("u", "v").index(lbl))
        mu[(2, (lbl, "ey"))] = Gf2Vector(2, 1 << ("u", "v").index(lbl))
    mu[(2, ("ey", "w"))] = one
    mu[(2, ("w", "ex"))] = one
    if alpha:
        mu[(2, ("u", "w"))] = one
    if gamma:
        mu[(2, ("w", "u"))] = one
    a, b, c, d = abc
    for chain, vec in ((("u", "w", "u"), a), (("u", "w", "v"), b), (("v", "w", "u"), c), (("v", "w", "v"), d)):
        if not vec.is_zero():
            mu[(3, chain)] = vec
    if e_coeff:
        mu[(3, ("w", "u", "w"))] = one
    if g_coeff:
        mu[(3, ("w", "v", "w"))] = one
    return AInfCategory(objects, hom, units, mu)


@lru_cache(maxsize=1)
def mu3_category() -> AInfCategory:
    """A strictly unital category with mu1 != 0 and mu3 != 0.

    Found by brute-force search over sparse tables on the fixed skeleton;
    check_ainf_relations run exhaustively (d <= 2 * max_arity) is the
    acceptance oracle.
    """
    vecs = [Gf2Vector(2, bits) for bits in range(4)]
    for alpha, gamma in product((0, 1), repeat=2):
        for abc in product(vecs, repeat=4):
            for e_coeff, g_coeff in product((0, 1), repeat=2):
                if all(v.is_zero() for v in abc) and not (e_coeff or g_coeff):
                    continue  # mu3 must be nonzero
                try:
                    cat = _mu3_skeleton(alpha, gamma, abc, e_coeff, g_coeff)
                except AInfError:
                    continue
                if cat.check_strict_units() is not None:
                    continue
                if cat.check_ainf_relations(4) is not None:
                    continue  # cheap screen before the full check
                if cat.check_ainf_relations(2 * cat.max_arity) is None:
                    return cat
    raise AInfError("search space contains no valid table")


def standard_categories() -> dict[str, AInfCategory]:
    """The fixed roster used by the acceptance suite."""
    return {
        "poset1": poset_category(1),
        "iso_pair": iso_pair_category(),
        "mu3": mu3_category(),
    }


def random_dg_unit_category(rng: random.Random, objects: Sequence[str] = ("A", "B")) -> AInfCategory:
    """Random strictly unital category: units-only mu2, random square-zero mu1.

    mu1 maps into the non-unit span of each hom space, so the associativity
    relations hold for any such choice.
    """
    hom: dict[tuple[str, str], tuple[str, ...]] = {}
    units = {}
    for x in objects:
        extra = rng.randint(0, 1)
        labels = [f"e_{x}"] + [f"l_{x}{x}_{i}" for i in range(extra)]
        hom[(x, x)] = tuple(labels)
        units[x] = f"e_{x}"
    for x in objects:
        for y in objects:
            if x == y:
                continue
            dim = rng.randint(0, 2)
            if dim:
                hom[(x, y)] = tuple(f"l_{x}{y}_{i}" for i in range(dim))
    mu: dict[tuple[int, tuple[str, ...]], Gf2Vector] = {}
    for x in objects:
        e = f"e_{x}"
        for lbl in hom[(x, x)]:
            dim = len(hom[(x, x)])
            idx = hom[(x, x)].index(lbl)
            mu[(2, (e, lbl))] = Gf2Vector(dim, 1 << idx)
            if lbl != e:
                mu[(2, (lbl, e))] = Gf2Vector(dim, 1 << idx)
    for (x, y), labels in hom.items():
        ex, ey = f"e_{x}", f"e_{y}"
        if x == y:
            continue
        for lbl in labels:
            idx = labels.index(lbl)
            mu[(2, (ex, lbl))] = Gf2Vector(len(labels), 1 << idx)
            mu[(2, (lbl, ey))] = Gf2Vector(len(labels), 1 << idx)
    for (x, y), labels in sorted(hom.items()):
        # Random differential supported away from units, squaring to zero.
        non_units = [lbl for lbl in labels if lbl != units.get(x) or x != y]
        non_units = [lbl for lbl in labels if not (x == y and lbl == units[x])]
        if not non_units:
            continue
        dim = len(labels)
        for _ in range(20):
            images = {}
            for lbl in non_units:
                bits = 0
                for other in non_units:
                    if lbl != other and rng.random() < 0.3:
                        bits |= 1 << labels.index(other)
                if bits:
                    images[lbl] = Gf2Vector(dim, bits)

            def d_of(vec: Gf2Vector) -> Gf2Vector:
                out = Gf2Vector.zero(dim)
                for i in vec.support():
                    img = images.get(labels[i])
                    if img is not None:
                        out = out + img
                return out

            if all(d_of(img).is_zero() for img in images.values()):
                for lbl, img in images.items():
                    mu[(1, (lbl,))] = img
                break
    return AInfCategory(list(objects), hom, units, mu)


def mutate_category(cat: AInfCategory, rng: random.Random) -> Optional[AInfCategory]:
    """Flip one coefficient of one stored mu entry; None if nothing to flip."""
    entries = sorted(cat.mu, key=lambda key: (key[0], key[1]))
    if not entries:
        return None
    d, chain = entries[rng.randrange(len(entries))]
    out = cat.mu[(d, chain)]
    if out.length == 0:
        return None
    pos = rng.randrange(out.length)
    flipped = out + Gf2Vector.basis(out.length, pos)
    mu = dict(cat.mu)
    mu[(d, chain)] = flipped
    return AInfCategory(cat.objects, cat.hom, cat.units, mu)


def inclusion_functor(sub: AInfCategory, total: AInfCategory) -> StrictFunctor:
    """Identity-on-labels inclusion of a full subcategory."""
    return StrictFunctor(
        sub,
        total,
        {x: x for x in sub.objects},
        {
            lbl: total.basis_vector(lbl)
            for pair in sub.hom_pairs()
            for lbl in sub.basis(pair)
        },
    )


# -- diagrams over small bases -------------------------------------------------


def constant_diagram(c: AInfCategory, cap: int = 3):
    """The constant diagram on the interval: both vertex values are c and the
    edge value doubles c, with the two copy embeddings."""
    from . import colimit
    from .ainf import StrictFunctor as SF, degenerate_extension
    from .simplicial import standard_simplex

    base = standard_simplex(1, cap=cap)
    ext = degenerate_extension(c, c, SF.identity(c))
    tags_edge = {o: 0 for o in c.objects}
    tags_edge.update({ext.embed_d.object_map[o]: 1 for o in c.objects})
    return colimit.AInfDiagram(
        base,
        {"0": c, "1": c, "0.1": ext.category},
        {
            "0": {o: 0 for o in c.objects},
            "1": {o: 0 for o in c.objects},
            "0.1": tags_edge,
        },
        {("0.1", 0): ext.embed_d, ("0.1", 1): ext.embed_c},
    )


def interval_plus_point_diagram(cap: int = 3):
    """Constant interval diagram next to an isolated point."""
    from . import colimit
    from .ainf import StrictFunctor as SF, degenerate_extension
    from .simplicial import disjoint_union, standard_simplex

    c = discrete_category(["X"])
    base = disjoint_union(standard_simplex(1, cap=cap), standard_simplex(0, cap=cap))
    ext = degenerate_extension(c, c, SF.identity(c))
    z = discrete_category(["Z"])
    tags_edge = {o: 0 for o in c.objects}
    tags_edge.update({ext.embed_d.object_map[o]: 1 for o in c.objects})
    return colimit.AInfDiagram(
        base,
        {"a#0": c, "a#1": c, "a#0.1": ext.category, "b#0": z},
        {
            "a#0": {o: 0 for o in c.objects},
            "a#1": {o: 0 for o in c.objects},
            "a#0.1": tags_edge,
            "b#0": {o: 0 for o in z.objects},
        },
        {("a#0.1", 0): ext.embed_d, ("a#0.1", 1): ext.embed_c},
    )


def broken_edge_category() -> AInfCategory:
    """Iso pair X0 = X1 plus an isolated Y1; the vertex-0 inclusion is fully
    faithful but not essentially surjective on cohomology."""
    objects = ["X0", "X1", "Y1"]
    hom = {
        ("X0", "X0"): ("e0",),
        ("X1", "X1"): ("e1",),
        ("Y1", "Y1"): ("eY",),
        ("X0", "X1"): ("p",),
        ("X1", "X0"): ("q",),
    }
    units = {"X0": "e0", "X1": "e1", "Y1": "eY"}
    one = Gf2Vector.basis(1, 0)
    mu = {
        (2, ("e0", "e0")): one,
        (2, ("e1", "e1")): one,
        (2, ("eY", "eY")): one,
        (2, ("e0", "p")): one,
        (2, ("p", "e1")): one,
        (2, ("e1", "q")): one,
        (2, ("q", "e0")): one,
        (2, ("p", "q")): one,
        (2, ("q", "p")): one,
    }
    return AInfCategory(objects, hom, units, mu)


def broken_diagram(cap: int = 3):
    """Interval diagram whose source embedding misses an object up to iso."""
    from . import colimit
    from .ainf import StrictFunctor as SF
    from .simplicial import standard_simplex

    base = standard_simplex(1, cap=cap)
    f0 = discrete_category(["X"])
    f1 = discrete_category(["X", "Y"])
    edge = broken_edge_category()
    emb0 = SF(f0, edge, {"X": "X0"}, {"e_X": edge.basis_vector("e0")})
    emb1 = SF(
        f1,
        edge,
        {"X": "X1", "Y": "Y1"},
        {"e_X": edge.basis_vector("e1"), "e_Y": edge.basis_vector("eY")},
    )
    return colimit.AInfDiagram(
        base,
        {"0": f0, "1": f1, "0.1": edge},
        {
            "0": {"X": 0},
            "1": {"X": 0, "Y": 0},
            "0.1": {"X0": 0, "X1": 1, "Y1": 1},
        },
        {("0.1", 0): emb1, ("0.1", 1): emb0},
    )
