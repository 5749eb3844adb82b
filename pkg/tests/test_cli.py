"""End-to-end command line behavior: JSON documents, exit codes, stability."""

import json

import pytest

from pmfiber import VerificationError
from pmfiber.cli import main

from conftest import A4_ROWS, A6_ROWS


def write_matrix(path, rows, field="Q"):
    doc = {
        "n": len(rows),
        "field": field,
        "entries": [[str(x) for x in row] for row in rows],
    }
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def a4_file(tmp_path):
    return write_matrix(tmp_path / "a4.json", A4_ROWS)


@pytest.fixture
def a6_file(tmp_path):
    return write_matrix(tmp_path / "a6.json", A6_ROWS)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


# -- happy paths --------------------------------------------------------------------


def test_minors_document(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "minors", a4_file)
    assert code == 0
    table = doc["result"]["minors"]
    assert len(table) == 16
    assert table[""] == "1"
    assert table["1,2,3,4"] == "87"
    assert table["1"] == "2" and table["4"] == "-1"


def test_detpoly_text_and_json(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "detpoly", a4_file)
    assert code == 0
    assert isinstance(doc["polynomials"]["f"], str)
    code2, doc2, _ = run_cli(capsys, "detpoly", "--json-poly", a4_file)
    assert code2 == 0
    assert doc2["polynomials"]["f"]["1,2,3,4"] == "1"
    assert doc2["polynomials"]["f"][""] == "87"


def test_adjugate_grid(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "adjugate", a4_file)
    assert code == 0
    grid = doc["polynomials"]["adjugate"]
    assert len(grid) == 4 and len(grid[0]) == 4
    assert grid[0][1] == "x3*x4 + 3*x3 + 3*x4 + 9"


def test_cuts_document(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "cuts", a4_file)
    assert code == 0
    assert doc["result"]["count"] == 1
    assert doc["result"]["cuts"][0]["X"] == [1, 2]
    assert doc["result"]["cuts"][0]["complement"] == [3, 4]


def test_classify_and_witness_loop(capsys, tmp_path, a4_file):
    code, doc, _ = run_cli(capsys, "classify", a4_file)
    assert code == 0
    assert doc["result"]["verdict"] == "MultiPoint"
    assert doc["result"]["reason"] == "HasCutNotSymmetrizable"
    assert doc["result"]["cut"] == [1, 2]
    witness_file = tmp_path / "witness.json"
    witness_file.write_text(json.dumps(doc["witness"]))

    # the witness shares every principal minor with the input...
    _, minors_a, _ = run_cli(capsys, "minors", a4_file)
    _, minors_w, _ = run_cli(capsys, "minors", str(witness_file))
    assert minors_a["result"]["minors"] == minors_w["result"]["minors"]

    # ...yet no diagonal equivalence certificate exists
    code_eq, doc_eq, _ = run_cli(capsys, "equiv", a4_file, str(witness_file))
    assert code_eq == 0
    assert doc_eq["result"]["equivalent"] is False
    assert doc_eq["certificate"] is None


def test_witness_explicit_cut(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "witness", "--cut", "1,2", a4_file)
    assert code == 0
    assert doc["result"]["kind"] == "CutSwap"
    assert doc["result"]["cut"] == [1, 2]
    assert doc["witness"]["n"] == 4


def test_witness_reducible_route(capsys, a6_file):
    code, doc, _ = run_cli(capsys, "witness", a6_file)
    assert code == 0
    assert doc["result"]["kind"] == "ReduciblePattern"
    assert doc["result"]["cut"] is None


def test_witness_no_cut_is_precondition_error(capsys, tmp_path):
    f = write_matrix(tmp_path / "dense.json", [[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    code, doc, _ = run_cli(capsys, "witness", f)
    assert code == 2
    assert "error" in doc


def test_equiv_finds_planted_certificate(capsys, tmp_path):
    # B = D A D^-1 with D = diag(1, 2, 3): B_ij = d_i * A_ij / d_j
    a = write_matrix(tmp_path / "a.json", [[0, 2, 1], [1, 0, 3], [2, 2, 1]])
    b = tmp_path / "b.json"
    b.write_text(
        json.dumps(
            {
                "n": 3,
                "field": "Q",
                "entries": [["0", "1", "1/3"], ["2", "0", "2"], ["6", "3", "1"]],
            }
        )
    )
    code, doc, _ = run_cli(capsys, "equiv", a, str(b))
    assert code == 0
    assert doc["result"]["equivalent"] is True
    assert doc["certificate"]["d"] == ["1", "2", "3"]
    assert doc["certificate"]["transposed"] is False


def test_structure_document(capsys, a6_file):
    code, doc, _ = run_cli(capsys, "structure", a6_file)
    assert code == 0
    assert doc["result"]["blocks"] == [[1, 5], [2, 4], [3, 6]]
    assert doc["result"]["product_matches"] is True
    assert doc["polynomials"]["factors"] == [
        "x1*x5 + 2*x1 + x5 + 3",
        "x2*x4 + x2 - 3*x4 - 4",
        "x3*x6 + 3*x3 + 4*x6 + 20",
    ]


def test_fibershape_document(capsys, a6_file):
    code, doc, _ = run_cli(capsys, "fibershape", a6_file)
    assert code == 0
    assert doc["result"]["blocks"] == [[1, 5], [2, 4], [3, 6]]
    assert doc["result"]["free_positions"] == [[1, 2], [1, 3], [2, 3]]


def test_symmetrize_hermitize(capsys, tmp_path):
    s = write_matrix(tmp_path / "s.json", [[0, 1], [4, 0]])
    code, doc, _ = run_cli(capsys, "symmetrize", s)
    assert code == 0
    assert doc["result"]["verdict"] == "SymmetricEquivalentOverField"
    assert doc["certificate"]["witness_d"]["d"] == ["1", "1/2"]

    h = tmp_path / "h.json"
    h.write_text(
        json.dumps(
            {
                "n": 2,
                "field": "Q(i)",
                "entries": [["1", "2i"], ["-i/2", "1"]],
            }
        )
    )
    code2, doc2, _ = run_cli(capsys, "hermitize", str(h))
    assert code2 == 0
    assert doc2["result"]["verdict"] == "SymmetricEquivalentOverField"
    assert doc2["certificate"]["e"] == ["1", "4"]
    assert doc2["certificate"]["witness_d"]["d"] == ["1", "2"]


def test_symfiber_document(capsys, tmp_path):
    f = write_matrix(
        tmp_path / "sym.json",
        [[1, 2, 0, 0], [2, 1, 0, 0], [0, 0, 3, 4], [0, 0, 4, 3]],
    )
    code, doc, _ = run_cli(capsys, "symfiber", f)
    assert code == 0
    assert doc["result"]["irreducible"] is False
    assert doc["result"]["blocks"] == [[1, 2], [3, 4]]


def test_stablecert_document(capsys, tmp_path):
    f = tmp_path / "herm.json"
    f.write_text(
        json.dumps(
            {
                "n": 2,
                "field": "Q(i)",
                "entries": [["2", "1+i"], ["1-i", "3"]],
            }
        )
    )
    code, doc, _ = run_cli(capsys, "stablecert", str(f))
    assert code == 0
    assert doc["result"]["verdict"] == "Certified"
    assert doc["result"]["failing_block"] is None


def test_verify_document(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "verify", a4_file)
    assert code == 0
    assert doc["result"]["all_ok"] is True
    assert set(doc["report"]) == {"dodgson", "resultant", "laplace", "adjugate"}
    code2, doc2, _ = run_cli(capsys, "verify", "--identity", "dodgson", a4_file)
    assert code2 == 0
    assert set(doc2["report"]) == {"dodgson"}


def test_selftest_document(capsys):
    code, doc, _ = run_cli(
        capsys, "selftest", "--n", "4", "--trials", "2", "--seed", "3",
        "--suite", "dodgson", "--suite", "equiv_recovery",
    )
    assert code == 0
    assert doc["result"]["all_ok"] is True
    assert [r["name"] for r in doc["report"]] == ["dodgson", "equiv_recovery"]


# -- output stability ---------------------------------------------------------------


def test_output_is_byte_stable(capsys, a4_file):
    _, _, first = run_cli(capsys, "classify", a4_file)
    _, _, second = run_cli(capsys, "classify", a4_file)
    assert first == second
    _, _, third = run_cli(capsys, "witness", a4_file)
    _, _, fourth = run_cli(capsys, "witness", a4_file)
    assert third == fourth


# -- exit codes ---------------------------------------------------------------------


def test_exit_malformed_json(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, doc, _ = run_cli(capsys, "minors", str(f))
    assert code == 2 and "error" in doc


def test_exit_malformed_entry(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(
        json.dumps({"n": 2, "field": "Q", "entries": [["1", "oops"], ["0", "1"]]})
    )
    code, doc, _ = run_cli(capsys, "minors", str(f))
    assert code == 2 and "error" in doc


def test_exit_imaginary_over_q(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(
        json.dumps({"n": 1, "field": "Q", "entries": [["2i"]]})
    )
    code, doc, _ = run_cli(capsys, "minors", str(f))
    assert code == 2


def test_exit_shape_mismatch(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"n": 2, "field": "Q", "entries": [["1", "2"]]}))
    code, doc, _ = run_cli(capsys, "minors", str(f))
    assert code == 2


def test_exit_missing_file(capsys, tmp_path):
    code, doc, _ = run_cli(capsys, "minors", str(tmp_path / "nope.json"))
    assert code == 2


def test_exit_size_limit(capsys, tmp_path):
    n = 17
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    f = write_matrix(tmp_path / "big.json", rows)
    code, doc, _ = run_cli(capsys, "minors", f)
    assert code == 3 and "error" in doc


def test_exit_bad_cut_argument(capsys, a4_file):
    code, doc, _ = run_cli(capsys, "witness", "--cut", "1,zap", a4_file)
    assert code == 2
    code2, _, _ = run_cli(capsys, "witness", "--cut", "1,9", a4_file)
    assert code2 == 2
    code3, _, _ = run_cli(capsys, "witness", "--cut", "1,3", a4_file)
    assert code3 == 2  # {1,3} is not a cut of this matrix


def test_exit_internal_verification_maps_to_4(capsys, a4_file, monkeypatch):
    import pmfiber.cli as cli_mod

    def boom(A):
        raise VerificationError("synthetic failure")

    monkeypatch.setattr(cli_mod, "find_cuts", boom)
    code, doc, _ = run_cli(capsys, "cuts", a4_file)
    assert code == 4 and doc["error"] == "synthetic failure"


def test_selftest_failure_maps_to_4(capsys, monkeypatch):
    import pmfiber.cli as cli_mod
    from pmfiber.selftest import SuiteResult

    def fake(n=5, trials=25, seed=0, suites=None):
        return [SuiteResult("dodgson", trials, 1, ["trial 0: synthetic"])]

    monkeypatch.setattr(cli_mod, "run_selftest", fake)
    code, doc, _ = run_cli(capsys, "selftest", "--trials", "2")
    assert code == 4
    assert doc["result"]["all_ok"] is False
