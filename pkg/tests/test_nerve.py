"""Nerve simplices: the coherence equation, horn filling, faces, enumeration."""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from ainfnerve import examples, ordinal
from ainfnerve.gf2 import Gf2Vector
from ainfnerve.nerve import (
    NerveError,
    NerveSimplex,
    NerveTruncation,
    enumerate_simplices,
    ez_normal_form,
    fill_inner_horn,
    is_degenerate_at,
    is_nerve_simplex,
    nerve_degeneracy,
    nerve_face,
    nerve_face_at,
    nerve_of_functor,
    simplex_residual,
    survey_inner_horns,
    wedge_decompositions,
)

SEED = 20260810


def test_wedge_decomposition_counts():
    assert wedge_decompositions(1) == ()
    two = wedge_decompositions(2)
    assert len(two) == 1
    assert two[0].blocks() == ((0, 1), (1, 2))
    assert len(wedge_decompositions(3)) == 3
    for n in range(1, 7):
        assert len(wedge_decompositions(n)) == 2 ** (n - 1) - 1
        for decomp in wedge_decompositions(n):
            blocks = decomp.blocks()
            assert all(len(b) >= 2 for b in blocks)
            for left, right in zip(blocks, blocks[1:]):
                assert left[-1] == right[0]
            assert blocks[0][0] == 0 and blocks[-1][-1] == n


def _poset1_triangle(e_val: Gf2Vector | None = None) -> NerveSimplex:
    cat = examples.poset_category(1)
    a = cat.basis_vector("a01")
    f = {
        (0, 1): a,
        (1, 2): cat.basis_vector("a11"),
        (0, 2): a,
        (0, 1, 2): e_val if e_val is not None else cat.zero(("0", "1")),
    }
    return NerveSimplex(cat, ("0", "1", "1"), f)


def test_residual_formula_at_triangle():
    cat = examples.two_term_category()
    # mu1(f_012) + f_02 + mu2(f_01, f_12) on vertices (X, X, Y).
    f01 = cat.unit_vector("X")
    f12 = cat.basis_vector("a")
    f02 = cat.basis_vector("b")
    f012 = cat.basis_vector("a")
    simplex = NerveSimplex(
        cat, ("X", "X", "Y"), {(0, 1): f01, (1, 2): f12, (0, 2): f02, (0, 1, 2): f012}
    )
    expected = cat.mu1(("X", "Y"), f012) + f02 + cat.mu2(("X", "X"), f01, ("X", "Y"), f12)
    assert simplex_residual(simplex, (0, 1, 2)) == expected


def test_residual_linear_in_top_value():
    cat = examples.two_term_category()
    base = NerveSimplex(
        cat,
        ("X", "X", "Y"),
        {
            (0, 1): cat.unit_vector("X"),
            (1, 2): cat.basis_vector("b"),
            (0, 2): cat.basis_vector("b"),
            (0, 1, 2): cat.zero(("X", "Y")),
        },
    )
    ok, _ = is_nerve_simplex(base)
    assert ok
    perturbed = NerveSimplex(
        cat,
        base.vertices,
        {**base.f, (0, 2): base.value((0, 2)) + cat.basis_vector("b")},
    )
    assert simplex_residual(perturbed, (0, 1, 2)) == cat.basis_vector("b")


def test_all_units_simplex_valid_up_to_dim_4():
    cat = examples.discrete_category(["X"])
    e = cat.unit_vector("X")
    for n in range(1, 5):
        f = {}
        for size in range(2, n + 2):
            for subset in combinations(range(n + 1), size):
                f[subset] = e
        ok, witness = is_nerve_simplex(NerveSimplex(cat, ("X",) * (n + 1), f))
        assert ok, f"failed at {witness} in dimension {n}"


def test_two_simplex_with_wrong_long_edge_fails():
    cat = examples.poset_category(2)
    f = {
        (0, 1): cat.basis_vector("a01"),
        (1, 2): cat.basis_vector("a12"),
        (0, 2): cat.zero(("0", "2")),  # should be a02 = mu2(a01, a12)
        (0, 1, 2): cat.zero(("0", "2")),
    }
    ok, witness = is_nerve_simplex(NerveSimplex(cat, ("0", "1", "2"), f))
    assert not ok and witness == (0, 1, 2)


def test_fill_inner_horn_dim2():
    cat = examples.poset_category(2)
    horn = {(0, 1): cat.basis_vector("a01"), (1, 2): cat.basis_vector("a12")}
    filler = fill_inner_horn(cat, ("0", "1", "2"), horn, 1)
    assert filler.value((0, 2)) == cat.mu2(
        ("0", "1"), cat.basis_vector("a01"), ("1", "2"), cat.basis_vector("a12")
    )
    assert filler.value((0, 1, 2)).is_zero()
    ok, _ = is_nerve_simplex(filler)
    assert ok


def test_fill_inner_horn_units():
    cat = examples.discrete_category(["X"])
    e = cat.unit_vector("X")
    filler = fill_inner_horn(cat, ("X", "X", "X"), {(0, 1): e, (1, 2): e}, 1)
    assert filler.value((0, 2)) == e


def test_fill_outer_horn_rejected():
    cat = examples.poset_category(2)
    with pytest.raises(NerveError):
        fill_inner_horn(cat, ("0", "1", "2"), {}, 0)


def test_fill_rejects_invalid_faces():
    cat = examples.poset_category(2)
    with pytest.raises(NerveError):
        # vertices (0,1,2,2); face (0,1,2) inside the horn violates its
        # equation because f_02 is forced to a02.
        fill_inner_horn(
            cat,
            ("0", "1", "2", "2"),
            {
                (0, 1): cat.basis_vector("a01"),
                (1, 2): cat.basis_vector("a12"),
                (2, 3): cat.basis_vector("a22"),
                (0, 2): cat.zero(("0", "2")),
                (0, 3): cat.zero(("0", "2")),
                (1, 3): cat.basis_vector("a12"),
                (0, 1, 2): cat.zero(("0", "2")),
                (0, 1, 3): cat.zero(("0", "2")),
                (1, 2, 3): cat.zero(("1", "2")),
            },
            1,
        )


def test_mu3_category_dim3_horns_fill():
    cat = examples.mu3_category()
    for k in (1, 2):
        survey = survey_inner_horns(cat, 3, k)
        assert survey.ok, survey.failures[:3]
        assert survey.horns > 0


def test_face_along_02_is_long_edge():
    simplex = _poset1_triangle()
    edge = nerve_face(simplex, ordinal.mono_from_subset((0, 2), 2))
    assert edge.vertices == ("0", "1")
    assert edge.value((0, 1)) == simplex.value((0, 2))


def test_degeneracy_unit_edge():
    cat = examples.poset_category(1)
    edge = NerveSimplex(cat, ("0", "1"), {(0, 1): cat.basis_vector("a01")})
    degen = nerve_degeneracy(edge, 0)
    assert degen.value((0, 1)) == cat.unit_vector("0")
    assert degen.value((1, 2)) == edge.value((0, 1))
    assert degen.value((0, 2)) == edge.value((0, 1))
    assert degen.value((0, 1, 2)).is_zero()
    ok, _ = is_nerve_simplex(degen)
    assert ok


def test_face_degeneracy_identities_random():
    rng = random.Random(SEED)
    cat = examples.mu3_category()
    simplices = enumerate_simplices(cat, 2)
    valid = [s for s in simplices]
    for _ in range(500):
        simplex = valid[rng.randrange(len(valid))]
        i = rng.randint(0, simplex.dim)
        up = nerve_degeneracy(simplex, i)
        ok, _ = is_nerve_simplex(up)
        assert ok
        assert nerve_face_at(up, i) == simplex
        assert nerve_face_at(up, i + 1) == simplex
        # d_i d_j = d_{j-1} d_i on the degenerate 3-simplex.
        for j in range(1, up.dim + 1):
            for ii in range(j):
                assert nerve_face_at(nerve_face_at(up, j), ii) == nerve_face_at(
                    nerve_face_at(up, ii), j - 1
                )


def _brute_force_simplices(cat, vertices):
    """All coherent families by raw product over every f assignment."""
    n = len(vertices) - 1
    subsets = [
        s for size in range(2, n + 2) for s in combinations(range(n + 1), size)
    ]
    spaces = []
    for s in subsets:
        pair = (vertices[s[0]], vertices[s[-1]])
        spaces.append([Gf2Vector(cat.dim(pair), b) for b in range(1 << cat.dim(pair))])
    found = []
    for values in product(*spaces):
        candidate = NerveSimplex(cat, vertices, dict(zip(subsets, values)))
        ok, _ = is_nerve_simplex(candidate)
        if ok:
            found.append(candidate)
    return found


def test_enumeration_matches_brute_force():
    rng = random.Random(SEED + 1)
    cats = {
        "poset1": examples.poset_category(1),
        "two_term": examples.two_term_category(),
        "mu3": examples.mu3_category(),
    }
    for name, cat in cats.items():
        for n in (1, 2):
            for vertices in product(cat.objects, repeat=n + 1):
                brute = {s.key() for s in _brute_force_simplices(cat, vertices)}
                fast = {
                    s.key() for s in enumerate_simplices(cat, n, vertices=vertices)
                }
                assert fast == brute, f"{name} at {vertices}"


def test_two_simplex_count_formula():
    """Extensions of a fixed boundary count 2^dim(ker mu1) or zero."""
    cat = examples.two_term_category()
    a = cat.basis_vector("a")
    b = cat.basis_vector("b")
    ex = cat.unit_vector("X")
    # Boundary (ex, b, b): residual b + mu2(ex, b) = 0, a boundary; kernel of
    # mu1 on hom(X, Y) is spanned by b.
    fixed = {(0, 1): ex, (1, 2): b, (0, 2): b}
    found = enumerate_simplices(cat, 2, vertices=("X", "X", "Y"), fixed=fixed)
    assert len(found) == 2
    # Boundary (ex, a, 0): residual mu2(ex, a) + 0 = a, not a boundary.
    fixed = {(0, 1): ex, (1, 2): a, (0, 2): cat.zero(("X", "Y"))}
    found = enumerate_simplices(cat, 2, vertices=("X", "X", "Y"), fixed=fixed)
    assert found == []


def test_discrete_nerve_has_nondegenerate_zero_cells():
    """The ungraded nerve of a unit-only category is not just a point."""
    cat = examples.discrete_category(["X"])
    cells = enumerate_simplices(cat, 1)
    nondeg = [c for c in cells if not is_degenerate_at(c, 0)]
    assert len(nondeg) == 1  # the zero edge
    assert nondeg[0].value((0, 1)).is_zero()


def test_truncation_poset1_counts_and_identities():
    trunc = NerveTruncation(examples.poset_category(1), 2)
    sset = trunc.sset
    sset.validate()
    assert len(sset.nondegenerate(0)) == 2
    # Faithful count: one zero edge per ordered pair (the (1,0) hom space is
    # the zero module) plus the basis edge of hom(0, 1).
    assert len(sset.nondegenerate(1)) == 5


def test_truncation_two_object_discrete():
    trunc = NerveTruncation(examples.discrete_category(["X", "Y"]), 1)
    assert len(trunc.sset.nondegenerate(0)) == 2
    # Zero edges exist between every ordered pair and on every object.
    assert len(trunc.sset.nondegenerate(1)) == 4


def test_ez_normal_form_idempotent_unique():
    rng = random.Random(SEED + 2)
    cat = examples.poset_category(1)
    base = enumerate_simplices(cat, 1)
    for _ in range(500):
        simplex = base[rng.randrange(len(base))]
        word = []
        for _ in range(rng.randint(0, 2)):
            i = rng.randint(0, simplex.dim)
            simplex = nerve_degeneracy(simplex, i)
            word.append(i)
        core, epi = ez_normal_form(simplex)
        assert not any(is_degenerate_at(core, i) for i in range(core.dim))
        # Rebuild and renormalize: the normal form must agree.
        rebuilt = core
        for i in reversed(ordinal.epi_to_word(epi)):
            rebuilt = nerve_degeneracy(rebuilt, i)
        assert rebuilt == simplex


def test_nerve_of_functor_identity_and_inclusion():
    cat = examples.mu3_category()
    ident = examples.inclusion_functor(cat, cat)
    for simplex in enumerate_simplices(cat, 2)[:50]:
        image = nerve_of_functor(ident, simplex)
        assert image == simplex
    sub = examples.discrete_category(["X"])
    total = examples.disjoint_pair_category()
    incl = examples.inclusion_functor(sub, total)
    point = NerveSimplex(sub, ("X",), {})
    edge = NerveSimplex(sub, ("X", "X"), {(0, 1): sub.unit_vector("X")})
    image = nerve_of_functor(incl, edge)
    assert image.vertices == ("X", "X")
    assert image.value((0, 1)) == total.unit_vector("X")
    ok, _ = is_nerve_simplex(image)
    assert ok


def test_nerve_of_functor_quasi_equivalence_images_valid():
    sub = examples.discrete_category(["X"])
    cat = examples.iso_pair_category()
    from ainfnerve.ainf import StrictFunctor

    incl = StrictFunctor(sub, cat, {"X": "X"}, {"e_X": cat.basis_vector("ex")})
    for n in (1, 2, 3):
        for simplex in enumerate_simplices(sub, n):
            image = nerve_of_functor(incl, simplex)
            ok, witness = is_nerve_simplex(image)
            assert ok, witness
