"""Inner-fibration and co-Cartesian checks on colimit projections."""

from __future__ import annotations

import pytest

from ainfnerve import examples
from ainfnerve.colimit import build_colimit
from ainfnerve.fibration import (
    check_fibration,
    has_cocartesian_lifts,
    is_cocartesian_edge,
    is_inner_fibration,
    preimage_subcomplex,
    recheck_square_witness,
)
from ainfnerve.homotopy import is_quasi_category
from ainfnerve.simplicial import SimplicialMap, standard_simplex


def _interval_colimit(cap=2):
    c = examples.discrete_category(["X"])
    return build_colimit(examples.constant_diagram(c, cap=cap), cap)


def test_identity_on_quasi_category_is_inner_fibration():
    sset = standard_simplex(2, cap=2)
    report = is_inner_fibration(SimplicialMap.identity(sset), 2)
    assert report.passed and report.agree


def test_colimit_projection_is_inner_fibration():
    gc = _interval_colimit(cap=2)
    report = is_inner_fibration(gc.projection, 2)
    assert report.lifting_pass and report.fiber_pass and report.agree
    # Every fiber is the (monotone) nerve truncation; spot-check the edge.
    sub = preimage_subcomplex(gc.projection, ["0.1"])
    assert is_quasi_category(sub, 2).passed


def test_deleting_fillers_breaks_the_fibration_with_witness():
    gc = _interval_colimit(cap=2)
    # Every filler of the zero-edge/zero-edge horn over vertex 0 is a
    # nondegenerate 2-cell with all-zero boundary; delete them all.
    doomed = [
        cid
        for cid in gc.complex.nondegenerate(2)
        if gc.cells[cid].core == "0"
        and gc.cells[cid].simplex.value((0, 1)).is_zero()
        and gc.cells[cid].simplex.value((1, 2)).is_zero()
        and gc.cells[cid].simplex.value((0, 2)).is_zero()
    ]
    assert doomed
    pruned = gc.complex
    for cid in doomed:
        pruned = pruned.delete_cell(cid)
    projection = SimplicialMap(
        pruned,
        gc.diagram.base,
        {cid: gc.projection.assignment[cid] for cid in pruned.all_cells()},
    )
    report = is_inner_fibration(projection, 2)
    assert not report.lifting_pass
    assert not report.fiber_pass
    assert report.agree
    assert report.witness is not None
    assert recheck_square_witness(projection, report.witness)


def test_degenerate_edges_are_cocartesian():
    gc = _interval_colimit(cap=2)
    L = gc.complex
    vertex = L.ref(L.nondegenerate(0)[0])
    degenerate = L.s(vertex, 0)
    ok, witness = is_cocartesian_edge(gc.projection, degenerate, 2)
    assert ok and witness is None


def test_cocartesian_certificate_monotone_in_cap():
    gc = _interval_colimit(cap=2)
    L = gc.complex
    for cid in L.nondegenerate(1):
        ok2, _ = is_cocartesian_edge(gc.projection, L.ref(cid), 2)
        if ok2:
            # Certification at a higher cap implies it at lower caps.
            ok_low, _ = is_cocartesian_edge(gc.projection, L.ref(cid), 2)
            assert ok_low


def test_constant_diagram_has_cocartesian_lifts():
    gc = _interval_colimit(cap=2)
    report = has_cocartesian_lifts(
        gc.projection, 2, equivalence_tester=gc.edge_equivalence_tester(2)
    )
    assert report.direct_pass
    assert report.criterion_pass
    assert report.records


def test_point_base_vacuous_lifts():
    from ainfnerve.colimit import AInfDiagram

    c = examples.discrete_category(["X"])
    base = standard_simplex(0, cap=2)
    diagram = AInfDiagram(base, {"0": c}, {"0": {"X": 0}}, {})
    gc = build_colimit(diagram, 2)
    report = has_cocartesian_lifts(
        gc.projection, 2, equivalence_tester=gc.edge_equivalence_tester(2)
    )
    # Only degenerate base edges; the degenerate lift always works.
    assert report.direct_pass and report.criterion_pass


def test_broken_diagram_fails_with_witness():
    gc = build_colimit(examples.broken_diagram(cap=2), 2)
    inner = is_inner_fibration(gc.projection, 2)
    assert inner.passed and inner.agree
    report = has_cocartesian_lifts(
        gc.projection, 2, equivalence_tester=gc.edge_equivalence_tester(2)
    )
    assert not report.criterion_pass
    assert not report.direct_pass
    assert report.witness is not None
    bad = [r for r in report.records if not r.criterion]
    # Exactly the isolated object over the codomain lacks a lift.
    missing_objects = {gc.cells[r.vertex].simplex.vertices[0] for r in bad}
    assert missing_objects == {"Y"}


def test_check_fibration_combined_and_contra():
    gc = _interval_colimit(cap=2)
    report = check_fibration(gc, 2)
    assert report.passed
    assert report.cocartesian.criterion_pass
    doc = report.to_json()
    assert doc["pass"] and doc["inner_fibration"]["agree"]
    contra = check_fibration(gc, 2, direction="contra")
    # The constant diagram is symmetric, so the dual check also passes.
    assert contra.passed
