"""The colimit of nerves over a base: cells, projection, universal property."""

from __future__ import annotations

import random
from itertools import product

import pytest

from ainfnerve import examples, ordinal
from ainfnerve.colimit import (
    Cocone,
    DiagramError,
    build_colimit,
    extend_to_degenerate,
    mediating_map,
    p_sigma,
    verify_universal_property,
)
from ainfnerve.nerve import NerveSimplex, enumerate_simplices
from ainfnerve.simplicial import SimplexRef, SimplicialMap, standard_simplex

SEED = 20260810


def test_p_sigma_vertex_edge_and_degenerate_triangle():
    diagram = examples.constant_diagram(examples.discrete_category(["X"]))
    base = diagram.base
    edge_ref = base.ref("0.1")
    edge_cat = diagram.category("0.1")
    objs = sorted(edge_cat.objects)
    tag0 = diagram.objects_with_tag("0.1", 0)[0]
    tag1 = diagram.objects_with_tag("0.1", 1)[0]
    # A vertex over corner 1 projects to that vertex.
    vertex = NerveSimplex(edge_cat, (tag1,), {})
    assert p_sigma(diagram, edge_ref, vertex) == base.ref("1")
    # An edge between objects over the same vertex is the degenerate edge.
    loop = NerveSimplex(
        edge_cat, (tag0, tag0), {(0, 1): edge_cat.zero((tag0, tag0))}
    )
    assert p_sigma(diagram, edge_ref, loop) == base.s(base.ref("0"), 0)
    # A 2-simplex over vertices (0, 0, 1) hits the degenerate 2-cell s0(edge).
    tri = NerveSimplex(
        edge_cat,
        (tag0, tag0, tag1),
        {
            (0, 1): edge_cat.unit_vector(tag0),
            (1, 2): edge_cat.basis_vector(edge_cat.basis((tag0, tag1))[0]),
            (0, 2): edge_cat.basis_vector(edge_cat.basis((tag0, tag1))[0]),
        },
    )
    expected = base.act(edge_ref, ordinal.OrdinalMap(2, 1, (0, 0, 1)))
    assert p_sigma(diagram, edge_ref, tri) == expected
    assert expected == base.s(edge_ref, 0)


def test_p_sigma_rejects_non_monotone():
    diagram = examples.constant_diagram(examples.discrete_category(["X"]))
    edge_cat = diagram.category("0.1")
    tag0 = diagram.objects_with_tag("0.1", 0)[0]
    tag1 = diagram.objects_with_tag("0.1", 1)[0]
    backwards = NerveSimplex(
        edge_cat, (tag1, tag0), {(0, 1): edge_cat.zero((tag1, tag0))}
    )
    with pytest.raises(DiagramError):
        p_sigma(diagram, diagram.base.ref("0.1"), backwards)


def test_extend_to_degenerate_object_counts():
    c = examples.discrete_category(["P", "Q"])
    diagram = examples.constant_diagram(c)
    base = diagram.base
    once = extend_to_degenerate(diagram, base.s(base.ref("0"), 0))
    assert len(once.category.objects) == 4
    assert once.category.check_strict_units() is None
    assert once.category.check_ainf_relations() is None
    # Twice: the construction adjoins one vertex copy per degeneracy step.
    twice_ref = base.s(base.s(base.ref("0"), 0), 0)
    twice = extend_to_degenerate(diagram, twice_ref)
    assert len(twice.category.objects) == 6
    assert sorted(set(twice.tags.values())) == [0, 1, 2]
    assert twice.category.check_strict_units() is None
    assert twice.category.check_ainf_relations() is None
    twice.proj.check_strict()


def test_extend_nondegenerate_is_identity():
    diagram = examples.constant_diagram(examples.discrete_category(["X"]))
    fib = extend_to_degenerate(diagram, diagram.base.ref("0.1"))
    assert fib.category is diagram.category("0.1")
    assert fib.tags == diagram.tags["0.1"]


def test_colimit_point_base_is_nerve():
    from ainfnerve.colimit import AInfDiagram
    from ainfnerve.nerve import NerveTruncation

    c = examples.poset_category(1)
    base = standard_simplex(0, cap=2)
    diagram = AInfDiagram(base, {"0": c}, {"0": {o: 0 for o in c.objects}}, {})
    gc = build_colimit(diagram, 2)
    trunc = NerveTruncation(c, 2)
    for d in range(3):
        assert len(gc.complex.nondegenerate(d)) == len(trunc.sset.nondegenerate(d))
    gc.complex.validate()
    gc.projection.check()


def test_colimit_interval_zero_cells_and_projection():
    c = examples.discrete_category(["P", "Q"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    assert len(gc.complex.nondegenerate(0)) == 4  # |Obj| + |Obj|
    gc.complex.validate()
    gc.projection.check()
    # p composed with every cocone leg equals the structure map of the cell.
    for cell in ("0", "1", "0.1"):
        phi = gc.phi(cell)
        fiber = gc.fiber(cell)
        for cid in fiber.sset.all_cells():
            ref = fiber.sset.ref(cid)
            image = gc.projection.apply(phi.apply(ref))
            simplex = fiber.by_id[cid]
            expected = p_sigma(diagram, diagram.base.ref(cell), simplex)
            assert image == expected


def _brute_force_pairs(diagram, k: int):
    """Independent (f, Sigma) enumeration through the extension categories."""
    base = diagram.base
    count = 0
    for sigma in base.simplices(k):
        fib = extend_to_degenerate(diagram, sigma)
        for combo in product(
            *[
                sorted(o for o, t in fib.tags.items() if t == pos)
                for pos in range(k + 1)
            ]
        ):
            count += len(enumerate_simplices(fib.category, k, vertices=combo))
    return count


def test_colimit_cells_match_pair_enumeration():
    c = examples.discrete_category(["P", "Q"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    for k in range(3):
        total = sum(
            1
            for cid in gc.complex.all_cells()
            for _ in [0]
            if gc.complex.dim_of(cid) <= k
        )
        # Count all k-cells of L (degenerate included) against the pairs.
        all_k = len(gc.complex.simplices(k))
        assert all_k == _brute_force_pairs(diagram, k), f"dimension {k}"


def test_colimit_simplicial_identities_random():
    rng = random.Random(SEED)
    c = examples.discrete_category(["P", "Q"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    cells = [gc.cells[cid] for cid in gc.complex.all_cells() if gc.complex.dim_of(cid) >= 1]
    for _ in range(500):
        cell = cells[rng.randrange(len(cells))]
        k = cell.word.source_dim
        if k >= 2:
            j = rng.randint(1, k)
            i = rng.randint(0, j - 1)
            left = gc.face(gc.face(cell, j), i)
            right = gc.face(gc.face(cell, i), j - 1)
            assert left.key() == right.key()
        i = rng.randint(0, k)
        up = gc.degeneracy(cell, i)
        assert gc.face(up, i).key() == cell.key()
        assert gc.face(up, i + 1).key() == cell.key()


def test_universal_property_identity_cocone():
    c = examples.discrete_category(["P"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    legs = {cell: gc.phi(cell) for cell in ("0", "1", "0.1")}
    cocone = Cocone(gc.complex, legs)
    ident = SimplicialMap.identity(gc.complex)
    report = verify_universal_property(gc, cocone, alternative=ident)
    assert report.passed
    u = mediating_map(gc, cocone)
    for cid in gc.complex.all_cells():
        assert u.apply(gc.complex.ref(cid)) == gc.complex.ref(cid)


def test_universal_property_point_cocone():
    c = examples.discrete_category(["P"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    point = standard_simplex(0, cap=2)
    legs = {}
    for cell in ("0", "1", "0.1"):
        fiber = gc.fiber(cell)
        legs[cell] = SimplicialMap(
            fiber.sset,
            point,
            {
                cid: SimplexRef(
                    "0",
                    ordinal.word_to_epi(
                        tuple(range(fiber.sset.dim_of(cid) - 1, -1, -1)),
                        fiber.sset.dim_of(cid),
                    ),
                )
                for cid in fiber.sset.all_cells()
            },
        )
    report = verify_universal_property(gc, cocone := Cocone(point, legs))
    assert report.passed
    u = mediating_map(gc, cocone)
    for cid in gc.complex.nondegenerate(0):
        assert u.apply(gc.complex.ref(cid)) == point.ref("0")


def test_universal_property_edge_fiber_cocone():
    c = examples.discrete_category(["P"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    target = gc.fiber("0.1").sset
    legs = {
        "0.1": SimplicialMap.identity(target),
        "0": gc.face_nerve_map("0.1", 1),
        "1": gc.face_nerve_map("0.1", 0),
    }
    report = verify_universal_property(gc, Cocone(target, legs))
    assert report.passed
    # The mediating map restricted over the edge agrees with the canonical
    # inclusion-induced identification.
    u = mediating_map(gc, Cocone(target, legs))
    fiber = gc.fiber("0.1")
    phi = gc.phi("0.1")
    for cid in fiber.sset.all_cells():
        ref = fiber.sset.ref(cid)
        assert u.apply(phi.apply(ref)) == ref


def test_universal_property_detects_non_cocone():
    c = examples.discrete_category(["P", "Q"])
    diagram = examples.constant_diagram(c, cap=2)
    gc = build_colimit(diagram, 2)
    point = standard_simplex(0, cap=2)
    # Break commutation by sending one vertex fiber somewhere inconsistent:
    # a two-point target with mismatched vertex images.
    from ainfnerve.simplicial import disjoint_union

    two = disjoint_union(standard_simplex(0, cap=2), standard_simplex(0, cap=2))

    def const_leg(cell, vertex):
        fiber = gc.fiber(cell)
        return SimplicialMap(
            fiber.sset,
            two,
            {
                cid: SimplexRef(
                    vertex,
                    ordinal.word_to_epi(
                        tuple(range(fiber.sset.dim_of(cid) - 1, -1, -1)),
                        fiber.sset.dim_of(cid),
                    ),
                )
                for cid in fiber.sset.all_cells()
            },
        )

    legs = {
        "0": const_leg("0", "a#0"),
        "1": const_leg("1", "b#0"),
        "0.1": const_leg("0.1", "a#0"),
    }
    report = verify_universal_property(gc, Cocone(two, legs))
    assert not report.passed and not report.commutes


def test_diagram_serialization_round_trip():
    diagram = examples.broken_diagram(cap=2)
    doc = diagram.to_json()
    from ainfnerve.colimit import AInfDiagram

    back = AInfDiagram.from_json(doc)
    back.validate()
    assert back.to_json() == doc


def test_diagram_validation_catches_broken_tags():
    diagram = examples.constant_diagram(examples.discrete_category(["X"]))
    diagram.validate()
    bad_tags = {cell: dict(t) for cell, t in diagram.tags.items()}
    obj = next(iter(bad_tags["0.1"]))
    bad_tags["0.1"][obj] = 1 - bad_tags["0.1"][obj]
    from ainfnerve.colimit import AInfDiagram

    broken = AInfDiagram(
        diagram.base, diagram.categories, bad_tags, diagram.face_embeddings
    )
    with pytest.raises(DiagramError):
        broken.validate()
