"""Quasi-category/Kan checks, tau, equivalence edges, Kan subcomplexes."""

from __future__ import annotations

import random

import pytest

from ainfnerve import examples
from ainfnerve.homotopy import (
    HomotopyError,
    enumerate_horns,
    horn_fillers,
    is_equivalence_edge,
    is_kan,
    is_quasi_category,
    maximal_kan_subcomplex,
    recheck_witness,
    tau,
    tau0,
)
from ainfnerve.nerve import NerveTruncation
from ainfnerve.simplicial import disjoint_union, horn, standard_simplex

SEED = 20260810


def test_standard_simplex_quasi_but_not_kan():
    sset = standard_simplex(2, cap=2)
    assert is_quasi_category(sset, 2).passed
    report = is_kan(sset, 2)
    assert not report.passed
    assert recheck_witness(sset, report.witness)


def test_horn_is_not_a_quasi_category():
    sset = horn(2, 1)
    report = is_quasi_category(sset, 2)
    assert not report.passed
    assert report.witness["n"] == 2 and report.witness["k"] == 1


def test_nerve_truncations_are_quasi_categories():
    for cat in examples.standard_categories().values():
        trunc = NerveTruncation(cat, 3)
        assert is_quasi_category(trunc.sset, 3).passed


def test_tau_poset1_matches_cohomology_shape():
    cat = examples.poset_category(1)
    trunc = NerveTruncation(cat, 2)
    ho = tau(trunc.sset, 2)
    assert sorted(ho.objects) == ["0", "1"]
    h = cat.cohomology()
    # Class counts agree with cohomology, zero classes included.
    assert len(ho.hom_classes("0", "1")) == h.class_count(("0", "1"))
    assert len(ho.hom_classes("0", "0")) == h.class_count(("0", "0"))
    assert len(ho.hom_classes("1", "0")) == h.class_count(("1", "0"))


def test_tau_point_is_terminal():
    sset = standard_simplex(0, cap=2)
    ho = tau(sset, 2)
    assert len(ho.objects) == 1
    assert len(ho.class_ids) == 1


def test_tau_rejects_non_quasi_categories():
    with pytest.raises(HomotopyError):
        tau(horn(2, 1), 2)


def _tau_vs_cohomology(cat):
    trunc = NerveTruncation(cat, 2)
    ho = tau(trunc.sset, 2)
    h = cat.cohomology()
    assert sorted(ho.objects) == sorted(cat.objects)
    correspondence = {}
    for cid in ho.class_ids:
        x, y = ho.endpoints[cid]
        member = ho.members[cid][0]
        simplex = trunc.simplex_of(member)
        rep = h.class_of((x, y), simplex.value((0, 1)))
        # Homotopic edges must share a cohomology class.
        for other in ho.members[cid]:
            other_rep = h.class_of((x, y), trunc.simplex_of(other).value((0, 1)))
            assert other_rep == rep
        correspondence[cid] = (x, y, rep)
    # Bijectivity per hom pair.
    for x in cat.objects:
        for y in cat.objects:
            classes = ho.hom_classes(x, y)
            reps = {correspondence[c][2].bits for c in classes}
            assert len(reps) == len(classes) == h.class_count((x, y))
    # Composition tables match under the correspondence.
    for (f, g), out in ho.table.items():
        x, y = ho.endpoints[f]
        _, z = ho.endpoints[g]
        left = h.compose((x, y), correspondence[f][2], (y, z), correspondence[g][2])
        assert left == correspondence[out][2]
    # Identities match.
    for x in cat.objects:
        assert correspondence[ho.identities[x]][2] == h.identity_class(x)


def test_tau_equals_cohomology_on_roster():
    for cat in examples.standard_categories().values():
        _tau_vs_cohomology(cat)
    _tau_vs_cohomology(examples.two_term_category())


def test_tau0_counts():
    poset = NerveTruncation(examples.poset_category(1), 2)
    assert len(tau0(poset.sset, 2)) == 2
    iso = NerveTruncation(examples.iso_pair_category(), 2)
    assert len(tau0(iso.sset, 2)) == 1
    two_points = disjoint_union(standard_simplex(0, cap=2), standard_simplex(0, cap=2))
    assert len(tau0(two_points, 2)) == 2


def test_equivalence_edges():
    cat = examples.poset_category(1)
    trunc = NerveTruncation(cat, 2)
    sset = trunc.sset
    degenerate = sset.s(sset.ref(sset.nondegenerate(0)[0]), 0)
    assert is_equivalence_edge(sset, degenerate, 2)
    # The basis edge of hom(0,1) has no inverse up to homotopy.
    for cid in sset.nondegenerate(1):
        simplex = trunc.by_id[cid]
        if simplex.vertices == ("0", "1") and not simplex.value((0, 1)).is_zero():
            assert not is_equivalence_edge(sset, sset.ref(cid), 2)
    iso = NerveTruncation(examples.iso_pair_category(), 2)
    h = examples.iso_pair_category().cohomology()
    for cid in iso.sset.nondegenerate(1):
        simplex = iso.by_id[cid]
        x, y = simplex.vertices
        value = simplex.value((0, 1))
        invertible = any(
            value == u and h.iso_pairs(x, y) for (u, _) in h.iso_pairs(x, y)
        )
        if invertible:
            assert is_equivalence_edge(iso.sset, iso.sset.ref(cid), 2)


def test_maximal_kan_subcomplex_poset():
    trunc = NerveTruncation(examples.poset_category(1), 2)
    sub = maximal_kan_subcomplex(trunc.sset, 2)
    # No surviving cell touches both vertices.
    for cid in sub.all_cells():
        verts = set(sub.vertices(sub.ref(cid)))
        assert len(verts) == 1
    assert is_kan(sub, 2).passed
    # Idempotent.
    again = maximal_kan_subcomplex(sub, 2)
    assert again.to_json() == sub.to_json()


def test_maximal_kan_subcomplex_identity_when_all_equivalences():
    trunc = NerveTruncation(examples.iso_pair_category(), 2)
    # Not every edge is an equivalence (zero edges are not), so filter first.
    sub = maximal_kan_subcomplex(trunc.sset, 2)
    sub2 = maximal_kan_subcomplex(sub, 2)
    assert sub2.to_json() == sub.to_json()
    assert is_kan(sub, 2).passed


def test_tau_composition_with_multiple_fillers():
    """At least one composable pair admits two distinct fillers."""
    cat = examples.two_term_category()
    trunc = NerveTruncation(cat, 2)
    sset = trunc.sset
    pairs_with_multiple = 0
    index: dict[tuple, int] = {}
    for z in sset.simplices(2):
        key = (sset.d(z, 2), sset.d(z, 0))
        index[key] = index.get(key, 0) + 1
    pairs_with_multiple = sum(1 for v in index.values() if v >= 2)
    assert pairs_with_multiple > 0
    tau(sset, 2).validate()


def test_enumerate_horns_matches_manual_count_on_delta2():
    sset = standard_simplex(2, cap=2)
    horns = list(enumerate_horns(sset, 2, 1))
    for h in horns:
        assert horn_fillers(sset, h, 2, 1)
    assert len(horns) > 0
