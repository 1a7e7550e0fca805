"""End-to-end CLI checks: exit codes, round trips, witness re-feeding."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from ainfnerve import examples
from ainfnerve.cli import main
from ainfnerve.nerve import NerveTruncation
from ainfnerve.serialize import canonical_dumps, read_json, write_atomic


@pytest.fixture()
def workdir(tmp_path: Path) -> Path:
    return tmp_path


def _write(path: Path, doc) -> str:
    write_atomic(str(path), doc)
    return str(path)


def test_check_ainf_pass_and_fail(workdir):
    good = _write(workdir / "poset.json", examples.poset_category(2).to_json())
    assert main(["check-ainf", good, "--dmax", "4"]) == 0
    cat = examples.poset_category(4)
    doc = cat.to_json()
    doc["mu"].append({"d": 3, "inputs": ["a01", "a12", "a23"], "output": ["a03"]})
    bad = _write(workdir / "bad.json", doc)
    out = workdir / "report.json"
    assert main(["check-ainf", bad, "--dmax", "8", "--out", str(out)]) == 1
    report = read_json(str(out))
    assert not report["pass"] and report["witness"]["kind"] == "relation"
    # Re-feeding the witness reproduces the failure.
    wfile = _write(workdir / "witness.json", {"chain": report["witness"]["chain"]})
    assert main(["check-ainf", bad, "--witness", str(wfile)]) == 1


def test_check_ainf_schema_error(workdir):
    bad = _write(workdir / "broken.json", {"objects": ["X"], "hom": {}, "units": {}})
    assert main(["check-ainf", bad]) == 2


def test_nerve_and_qcat_roundtrip(workdir):
    cat = _write(workdir / "cat.json", examples.poset_category(1).to_json())
    nerve_out = workdir / "nerve.json"
    assert main(["nerve", cat, "--cap", "2", "--out", str(nerve_out)]) == 0
    assert main(["check-qcat", str(nerve_out), "--cap", "2"]) == 0
    # Serialize -> load -> serialize is byte-identical.
    doc = read_json(str(nerve_out))
    from ainfnerve.simplicial import SimplicialSet

    again = SimplicialSet.from_json(doc).to_json()
    again["simplices"] = doc["simplices"]
    assert canonical_dumps(again) == canonical_dumps(doc)


def test_check_qcat_failure_with_witness(workdir):
    from ainfnerve.simplicial import horn

    sset = _write(workdir / "horn.json", horn(2, 1).to_json())
    out = workdir / "report.json"
    assert main(["check-qcat", sset, "--cap", "2", "--out", str(out)]) == 1
    report = read_json(str(out))
    wfile = _write(workdir / "w.json", report["witness"])
    assert main(["check-qcat", sset, "--cap", "2", "--witness", str(wfile)]) == 1


def test_fill_horn_command(workdir):
    cat = examples.poset_category(2)
    cat_file = _write(workdir / "cat.json", cat.to_json())
    horn_file = _write(
        workdir / "horn.json",
        {"vertices": ["0", "1", "2"], "f": {"0,1": ["a01"], "1,2": ["a12"]}},
    )
    out = workdir / "filler.json"
    assert (
        main(["fill-horn", cat_file, str(horn_file), "--n", "2", "--k", "1", "--out", str(out)])
        == 0
    )
    filler = read_json(str(out))
    assert filler["valid"]
    assert filler["f"]["0,2"] == ["a02"]
    assert "0,1,2" not in filler["f"]  # the top value is zero


def test_enumerate_command(workdir):
    cat_file = _write(workdir / "cat.json", examples.poset_category(1).to_json())
    out = workdir / "cells.json"
    assert main(["enumerate", cat_file, "--n", "1", "--vertices", "0,1", "--out", str(out)]) == 0
    doc = read_json(str(out))
    assert doc["count"] == 2  # zero edge and the basis edge


def test_tau_commands(workdir):
    trunc = NerveTruncation(examples.iso_pair_category(), 2)
    sset_file = _write(workdir / "nerve.json", trunc.sset.to_json())
    out = workdir / "tau.json"
    assert main(["tau", sset_file, "--cap", "2", "--out", str(out)]) == 0
    doc = read_json(str(out))
    assert len(doc["objects"]) == 2
    out0 = workdir / "tau0.json"
    assert main(["tau0", sset_file, "--cap", "2", "--out", str(out0)]) == 0
    assert read_json(str(out0))["classes"] == [["X", "Y"]]
    # tau on a non-quasi-category is an input error.
    from ainfnerve.simplicial import horn

    bad = _write(workdir / "bad.json", horn(2, 1).to_json())
    assert main(["tau", bad, "--cap", "2"]) == 2


def test_kan_subcomplex_command(workdir):
    trunc = NerveTruncation(examples.poset_category(1), 2)
    sset_file = _write(workdir / "nerve.json", trunc.sset.to_json())
    out = workdir / "kan.json"
    assert main(["kan-subcomplex", sset_file, "--cap", "2", "--out", str(out)]) == 0
    doc = read_json(str(out))
    assert main(["check-qcat", str(out), "--cap", "2", "--kan"]) == 0


def test_colimit_then_fibration_end_to_end(workdir):
    diagram = examples.constant_diagram(examples.discrete_category(["X"]), cap=2)
    dfile = _write(workdir / "diagram.json", diagram.to_json())
    colimit_out = workdir / "colimit.json"
    assert main(["colimit", str(dfile), "--cap", "2", "--out", str(colimit_out)]) == 0
    fib_out = workdir / "fibration.json"
    assert (
        main(["check-fibration", str(colimit_out), "--cap", "2", "--out", str(fib_out)])
        == 0
    )
    report = read_json(str(fib_out))
    assert report["pass"]
    assert report["inner_fibration"]["pass"] and report["inner_fibration"]["agree"]
    assert report["cocartesian"]["direct_pass"] and report["cocartesian"]["criterion_pass"]
    # Determinism: rebuilding yields the identical file.
    colimit_again = workdir / "colimit2.json"
    assert main(["colimit", str(dfile), "--cap", "2", "--out", str(colimit_again)]) == 0
    assert (workdir / "colimit.json").read_bytes() == colimit_again.read_bytes()
    # Tampered colimit files are rejected as input errors.
    doc = read_json(str(colimit_out))
    doc["cells"].popitem()
    tampered = _write(workdir / "tampered.json", doc)
    assert main(["check-fibration", str(tampered), "--cap", "2"]) == 2


def test_broken_diagram_fibration_exit_code(workdir):
    dfile = _write(workdir / "diagram.json", examples.broken_diagram(cap=2).to_json())
    colimit_out = workdir / "colimit.json"
    assert main(["colimit", str(dfile), "--cap", "2", "--out", str(colimit_out)]) == 0
    out = workdir / "fib.json"
    assert main(["check-fibration", str(colimit_out), "--cap", "2", "--out", str(out)]) == 1
    report = read_json(str(out))
    assert not report["cocartesian"]["criterion_pass"]
    assert report["cocartesian"]["witness"] is not None


def test_contra_direction(workdir):
    diagram = examples.constant_diagram(examples.discrete_category(["X"]), cap=2)
    dfile = _write(workdir / "diagram.json", diagram.to_json())
    colimit_out = workdir / "colimit.json"
    main(["colimit", str(dfile), "--cap", "2", "--out", str(colimit_out)])
    assert main(["check-fibration", str(colimit_out), "--cap", "2", "--direction", "contra"]) == 0


def test_category_roundtrip_bytes(workdir):
    for cat in (examples.poset_category(2), examples.mu3_category()):
        path = workdir / "cat.json"
        write_atomic(str(path), cat.to_json())
        first = path.read_bytes()
        from ainfnerve.ainf import AInfCategory

        again = AInfCategory.from_json(json.loads(first))
        write_atomic(str(path), again.to_json())
        assert path.read_bytes() == first
