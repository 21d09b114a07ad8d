import json
import subprocess
import sys

import jsonschema
import pytest

from corpus import FIXTURES
from ldpc_gauge.cli import EXIT_BUDGET, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run
from ldpc_gauge.formats import schema_path

TORIC = str(FIXTURES / "toric_L3.json")
REPORT_SCHEMA = json.loads(schema_path("report").read_text())


def _ok(argv):
    code, out = run(argv)
    assert code == EXIT_OK, argv
    return out


def _report(argv):
    obj = json.loads(_ok(argv))
    jsonschema.validate(obj, REPORT_SCHEMA)
    return obj


@pytest.fixture
def family_file(tmp_path):
    def make(name, params, fmt="json"):
        path = tmp_path / f"{name}_{params.replace('=', '').replace(',', '_')}.{fmt}"
        path.write_text(_ok(["family", name, "--params", params, "--format", fmt]))
        return str(path)

    return make


def test_family_matches_fixture():
    assert _ok(["family", "toric", "--params", "L=3"]) == (FIXTURES / "toric_L3.json").read_text()
    assert _ok(["family", "newman_moore", "--params", "L=4", "--format", "alist"]) == (
        FIXTURES / "newman_moore_L4.alist"
    ).read_text()


def test_analyze(family_file):
    rep = _report(["analyze", family_file("ising", "D=1,L=5", "alist"), "--locality-bound", "4"])
    assert rep["command"] == "analyze"
    assert rep["parameters"]["label"] == "[5,1,5]"
    assert rep["redundancies"]["global_classes"] == 1
    toric = _report(["analyze", TORIC])
    assert [h["betti"] for h in toric["homology"]] == [1, 2, 1]


def test_gauge_toric():
    rep = _report(["gauge", TORIC])
    assert rep["quantum"]["label"] == "[[18,2,3]]"
    assert rep["rate_identity"]["equal"]
    assert rep["gauge_fixed_matches_css"]
    assert rep["gauged"]["plaquette_source"] == "embedded"
    assert len(rep["dictionary"]) == 7


def test_gauge_auto_plaquettes_from_classification(family_file):
    # at L=5 the torus loops exceed the bound and stay global
    rep = _report(["gauge", family_file("ising", "D=2,L=5", "alist"), "--locality-bound", "4"])
    assert rep["gauged"]["plaquette_source"] == "classified"
    assert rep["quantum"]["label"] == "[[50,2,5]]"


def test_gauge_without_plaquettes(family_file):
    rep = _report(["gauge", family_file("ising", "D=1,L=4"), "--plaquettes", "none"])
    assert "quantum" not in rep
    assert rep["gauged"]["terms"] == 12


def test_gauge_plaquette_file(tmp_path):
    from ldpc_gauge.families import ising
    from ldpc_gauge.formats import code_to_json, matrix_to_json

    inst = ising(2, 3)
    code_path = tmp_path / "code.json"
    code_path.write_text(json.dumps(code_to_json(inst.code)))
    plaq_path = tmp_path / "plaq.json"
    plaq_path.write_text(json.dumps(matrix_to_json(inst.plaquettes)))
    rep = _report(["gauge", str(code_path), "--plaquettes", str(plaq_path)])
    assert rep["gauged"]["plaquette_source"] == "file"
    assert rep["quantum"]["k"] == 2


def test_dualize_verdicts(family_file):
    path = family_file("ising", "D=1,L=6")
    assert all(_report(["dualize", path, "--map", "kw"])["verdicts"].values())
    ext = _report(["dualize", path, "--map", "kw", "--extended"])
    assert ext["verdicts"] == {"symplectic": True, "register_size": 7}
    assert all(_report(["dualize", path, "--map", "dw"])["verdicts"].values())
    assert all(_report(["dualize", path, "--map", "kt"])["verdicts"].values())


def test_spt_global_cut(family_file):
    rep = _report(["spt", family_file("ising", "D=1,L=6"), "--obc", "global"])
    assert rep["cluster"]["log2_degeneracy"] == 0
    assert rep["open"]["log2_degeneracy"] == len(rep["open"]["edge_pairs"]) == 2


def test_spt_cycles_cut():
    rep = _report(["spt", TORIC, "--obc", "cycles"])
    assert rep["open"]["removed_edges"]
    assert set(rep["open"]["matter_pieces"]) == {"X0"}


def test_barrier_report_and_csv():
    rep = _report(["barrier", TORIC])
    assert [row["E_min"] for row in rep["profile"]][:3] == [0, 4, 6]
    assert rep["locally_minimal"]["bound_holds"]
    csv_out = _ok(["barrier", TORIC, "--output", "csv"])
    assert csv_out.splitlines()[0] == "F,E_min,exact"


def test_text_output():
    out = _ok(["analyze", TORIC, "--output", "text"])
    assert "command: analyze" in out.splitlines()


@pytest.mark.parametrize("command", ["gauge", "barrier"])
def test_reports_do_not_depend_on_threads(command):
    outs = {_ok([command, TORIC, "--threads", str(t)]) for t in (1, 4, 1, 4)}
    assert len(outs) == 1


def test_usage_errors(family_file, tmp_path):
    assert run([])[0] == EXIT_USAGE
    assert run(["explode", TORIC])[0] == EXIT_USAGE
    assert run(["gauge", TORIC, "--couplings", "1,2"])[0] == EXIT_USAGE
    assert run(["gauge", TORIC, "--threads", "0"])[0] == EXIT_USAGE
    assert run(["analyze", str(tmp_path / "missing.alist")])[0] == EXIT_USAGE
    assert run(["family", "ising", "--params", "L"])[0] == EXIT_USAGE
    assert run(["barrier", family_file("newman_moore", "L=4", "alist")])[0] == EXIT_USAGE
    assert run(["spt", family_file("ising", "D=1,L=4"), "--obc", "cycles"])[0] == EXIT_USAGE


def test_parse_errors():
    for path in sorted((FIXTURES / "malformed").iterdir()):
        assert run(["analyze", str(path)]) == (EXIT_PARSE, ""), path.name


def test_budget_exit_keeps_report():
    code, out = run(["gauge", TORIC, "--cap", "4"])
    assert code == EXIT_BUDGET
    rep = json.loads(out)
    assert rep["budget_exceeded"] and rep["quantum"]["d_X"] is None
    assert rep["quantum"]["label"] == "[[18,2,?]]"


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "ldpc_gauge.cli", "analyze", TORIC], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "analyze"
    bad = subprocess.run(
        [sys.executable, "-m", "ldpc_gauge.cli", "analyze", str(FIXTURES / "malformed" / "trailing.alist")],
        capture_output=True,
        text=True,
    )
    assert bad.returncode == EXIT_PARSE
    assert "line 11" in bad.stderr
