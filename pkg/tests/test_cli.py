import json
from pathlib import Path

import pytest

from conftest import FIXTURES
from edclattice import io
from edclattice.cli import run
from edclattice.models import FiniteTopology

W3 = str(FIXTURES / "w3.json")
CHAIN = str(FIXTURES / "chain_family.json")


def run_json(*argv):
    code, out, err = run(["--json", *argv])
    return code, (json.loads(out) if out else None), err


def section(rep, name):
    return next(s for s in rep["sections"] if s["name"] == name)


def test_check_w3_extra_all():
    code, rep, _ = run_json("check", W3, "--extra", "all", "--mereotopological")
    assert code == 0 and rep["verdict"] == "pass"
    extra = {r["axiom"]: r for r in section(rep, "extra axioms")["data"]["results"]}
    for k in ("Nor1", "Nor2", "Nor3", "ExtO", "ExtOhat"):
        assert extra[k]["status"] == "pass"
    assert extra["ConC"]["witness"] == {"a": "{1,2}", "b": "{3}"}


def test_check_chain_family():
    code, rep, _ = run_json("check", CHAIN, "--extra", "ExtOhat")
    assert code == 0
    assert section(rep, "core axioms")["passed"]
    r = section(rep, "extra axioms")["data"]["results"][0]
    assert r["status"] == "fail" and r["witness"]
    assert section(rep, "extra axioms")["data"]["confirmed"]


def test_check_fails_on_mutant(tmp_path):
    code, _, _ = run(["generate", "--kind", "mutant", "--from", W3, "--count", "1", "--out", str(tmp_path)])
    assert code == 0
    code, rep, _ = run_json("check", str(tmp_path / "mutant-0000.json"))
    assert code == 1 and rep["verdict"] == "fail"


def test_malformed_exit_code():
    code, out, err = run(["check", str(FIXTURES / "malformed.json")])
    assert code == 2 and out == "" and "line 3, column 19" in err


def test_unknown_axiom_exit_code():
    assert run(["check", W3, "--extra", "Nor9"])[0] == 2


def test_rcc8_w3():
    code, rep, _ = run_json("rcc8", W3)
    assert code == 0
    rows = {(p["a"], p["b"]): p["relation"] for p in section(rep, "rcc8 table")["data"]["pairs"]}
    assert rows[("{1}", "{2}")] == "EC"
    assert rows[("{1}", "{1,2}")] == "NTPP"
    assert rows[("{1}", "{1,3}")] == "TPP"
    assert rows[("{1}", "{3}")] == "DC"
    assert all(r == "EQ" for (a, b), r in rows.items() if a == b)
    audit = section(rep, "jepd audit")
    assert audit["passed"] and audit["data"]["violations"] == [] and audit["data"]["pairs"] == 49


def test_rcc8_selected_pairs_and_precheck(tmp_path):
    code, rep, _ = run_json("rcc8", W3, "--pairs", "{1}:{2};5:6")
    assert code == 0 and len(section(rep, "rcc8 table")["data"]["pairs"]) == 2
    run(["generate", "--kind", "mutant", "--from", W3, "--count", "1", "--out", str(tmp_path)])
    code, out, err = run(["rcc8", str(tmp_path / "mutant-0000.json")])
    assert code == 1 and "AxiomPrecheckFailed" in err


def test_represent_relational():
    code, rep, _ = run_json("represent", W3, "--mode", "relational")
    assert code == 0
    assert section(rep, "canonical structure")["data"]["points"] == 3
    assert section(rep, "relational representation")["passed"]


def test_represent_maxclans():
    code, rep, _ = run_json("represent", W3, "--mode", "maxclans")
    assert code == 0
    data = section(rep, "maxclans space")["data"]
    assert data["points"] == 2
    clauses = {c["clause"]: c for c in data["clauses"]}
    assert clauses["dual_dense"]["holds"]
    assert all(clauses[f"C_separability_{k}"]["holds"] for k in ("C", "Chat", "Ll"))
    assert clauses["contact"]["holds"]


def test_represent_chain_clans_annotated():
    code, rep, _ = run_json("represent", CHAIN, "--mode", "clans")
    notes = section(rep, "clans space")["notes"]
    assert any(n.startswith("preconditions not met") for n in notes)
    assert code == 0


def test_represent_ro_dual():
    code, rep, _ = run_json("represent", W3, "--mode", "ro-dual")
    assert code == 0
    assert [s["name"] for s in rep["sections"]] == ["efilters space", "minimal-efilters space", "coclusters space"]


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["generate", "--kind", "relational", "--size", "4", "--count", "10", "--seed", "7", "--out", str(d)])[0] == 0
    files = sorted(p.name for p in a.iterdir())
    assert len(files) == 11 and "manifest.json" in files
    for f in files:
        assert (a / f).read_bytes() == (b / f).read_bytes()


def test_generate_mutants_fail_named_axioms(tmp_path):
    run(["generate", "--kind", "mutant", "--from", W3, "--count", "25", "--out", str(tmp_path)])
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["count"] == 25
    for entry in manifest["files"]:
        assert entry["expected"] == "fail" and entry["failing_axioms"]
        code, rep, _ = run_json("check", str(tmp_path / entry["file"]))
        failing = [r["axiom"] for r in section(rep, "core axioms")["data"]["results"] if r["status"] == "fail"]
        assert code == 1 and failing == entry["failing_axioms"]


def test_generate_topologies_validate(tmp_path):
    run(["generate", "--kind", "topology", "--size", "4", "--count", "8", "--out", str(tmp_path)])
    for f in sorted(tmp_path.glob("topology-*.json")):
        m = io.load(f)
        FiniteTopology(m.topology.m, m.topology.closed_sets)


def test_generate_guardrail(tmp_path):
    code, _, err = run(["generate", "--kind", "relational", "--size", "9", "--out", str(tmp_path)])
    assert code == 2 and "--force" in err


def test_report_round_trip():
    _, rep, _ = run_json("check", W3)
    assert io.digest(io.build_model(rep["model"]).E) == rep["digest"]
    assert io.build_model(rep["model"]).E == io.load(W3).E


def test_reports_are_byte_identical():
    for argv in (["check", W3, "--extra", "all"], ["rcc8", W3], ["represent", W3, "--mode", "clusters"]):
        assert run(argv) == run(argv)
        assert run(["--json", *argv]) == run(["--json", *argv])


def test_figures(tmp_path):
    d = tmp_path / "figs"
    code, rep, _ = run_json("--figures", str(d), "check", W3)
    assert code == 0 and sorted(p.name for p in d.iterdir()) == ["hasse.png", "relations.png"]
    first = (d / "hasse.png").read_bytes()
    run(["--figures", str(d), "check", W3])
    assert (d / "hasse.png").read_bytes() == first
    assert run(["rcc8", W3, "--figures", str(d)])[0] == 0 and (d / "rcc8.png").exists()
    assert run(["represent", W3, "--figures", str(d)])[0] == 0 and (d / "canonical-relation.png").exists()


def test_text_output_has_tables():
    code, out, _ = run(["check", W3])
    assert code == 0
    assert "== core axioms: pass" in out and out.rstrip().endswith("verdict: pass")


def test_module_entry_point():
    import subprocess
    import sys

    p = subprocess.run([sys.executable, "-m", "edclattice", "check", W3], capture_output=True, text=True)
    assert p.returncode == 0 and "verdict: pass" in p.stdout


def test_missing_file():
    assert run(["check", "no/such/file.json"])[0] == 2


def test_bad_arguments():
    with pytest.raises(SystemExit):
        from edclattice.cli import build_parser

        build_parser().parse_args(["represent", W3, "--mode", "nope"])
    assert run(["represent", W3, "--mode", "nope"])[0] == 2
