"""File formats and the command-line front end: round trips, exit codes,
deterministic reports."""

import json

from mscheme import files
from mscheme.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_scheme_file_round_trip(tmp_path, isth):
    doc = files.scheme_to_doc(isth)
    path = tmp_path / "copy.json"
    files.dump_doc(doc, path)
    again = files.load_scheme(path)
    assert again == isth
    assert files.scheme_to_doc(again) == doc


def test_parse_serialize_canonicalizes(tmp_path):
    raw = {"elements": [{"id": "0", "rho": 0}, {"id": "a", "rho": 1}],
           "covers": [["0", "a"]], "comment": "tiny"}
    path = tmp_path / "tiny.json"
    with open(path, "w") as fh:
        json.dump(raw, fh)
    m = files.load_scheme(path)
    doc = files.scheme_to_doc(m)
    assert doc["elements"] == raw["elements"]
    assert doc["covers"] == raw["covers"]


def test_check_exit_codes(capsys, tmp_path):
    code, out = run_cli(capsys, "check", "scheme", "isth.json")
    assert code == 0 and "valid scheme" in out

    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": [{"id": "0", "rho": 0}], "covers": "nope"}')
    code, _ = run_cli(capsys, "check", "scheme", str(bad))
    assert code == 2

    code, _ = run_cli(capsys, "check", "scheme", "no_such_file.json")
    assert code == 2

    code, out = run_cli(capsys, "check", "geometric", "notgeom.json")
    assert code == 1 and "G2" in out

    code, out = run_cli(capsys, "check", "semimatroid", "semi4.json")
    assert code == 0 and "valid semimatroid" in out


def test_check_rejects_scheme_axiom_violation(capsys, tmp_path):
    doc = files.scheme_to_doc(files.load_scheme(files.fixture_path("cw_r.json")))
    doc["elements"][1]["rho"] = 0  # atom "1"
    path = tmp_path / "bad_scheme.json"
    files.dump_doc(doc, path)
    code, out = run_cli(capsys, "check", "scheme", str(path))
    assert code == 1 and "M4" in out


def test_invariants_output(capsys):
    code, out = run_cli(capsys, "invariants", "nonpos.json")
    assert code == 0
    assert "tutte: x^3 + 3*x - 2" in out
    code, out = run_cli(capsys, "invariants", "dow_triv.json")
    assert "tutte: x^2 + 4*x + 3 + 4*y + 2*y^2" in out
    assert "characteristic: t^2 - 6*t + 8" in out


def test_invariants_singleton(capsys, tmp_path):
    path = tmp_path / "single.json"
    files.dump_doc({"elements": [{"id": "0", "rho": 0}], "covers": []}, path)
    code, out = run_cli(capsys, str("invariants"), str(path))
    assert code == 0 and "tutte: 1" in out


def test_invariants_deterministic(capsys):
    _, first = run_cli(capsys, "invariants", "dow_nontriv.json")
    _, second = run_cli(capsys, "invariants", "dow_nontriv.json")
    assert first == second


def test_transform_delete(capsys, tmp_path, monkeypatch):
    out_file = tmp_path / "deleted.json"
    code, out = run_cli(capsys, "transform", "delete", "isth.json",
                        "--atom", "a", "--out", str(out_file))
    assert code == 0 and "result: 2 elements, rank 1" in out
    m = files.load_scheme(out_file)
    assert m.elements == ("0", "b")


def test_transform_simplify(capsys, tmp_path):
    out_file = tmp_path / "simple.json"
    code, out = run_cli(capsys, "transform", "simplify", "cw_r.json",
                        "--out", str(out_file))
    assert code == 0 and "result: 3 elements" in out


def test_transform_contract_bottom_is_identity(capsys, tmp_path, isth):
    out_file = tmp_path / "same.json"
    code, _ = run_cli(capsys, "transform", "contract", "isth.json",
                      "--element", "0", "--out", str(out_file))
    assert code == 0
    assert files.load_scheme(out_file) == isth


def test_transform_unknown_element(capsys, tmp_path):
    code, out = run_cli(capsys, "transform", "delete", "isth.json",
                        "--atom", "zz", "--out", str(tmp_path / "x.json"))
    assert code == 1


def test_construct_uniform(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run_cli(capsys, "construct", "uniform", "1", "2")
    assert code == 0
    m = files.load_scheme(tmp_path / "constructed_uniform_1_2.json")
    from mscheme import tutte_direct
    assert str(tutte_direct(m)) == "x + y"


def test_construct_toric_then_iso(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run_cli(capsys, "construct", "toric", "toric1.json")
    assert code == 0 and "geometric certificate: 5 layers" in out
    code, out = run_cli(capsys, "iso", str(tmp_path / "constructed_toric1.json"),
                        "isth.json")
    assert code == 0 and "verdict: isomorphic" in out


def test_construct_dowling(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run_cli(capsys, "construct", "dowling", "-n", "2",
                        "--group", "z2.json", "--action", "t2_trivial.json")
    assert code == 0 and "result: 31 elements, rank 2" in out
    built = files.load_scheme(tmp_path / "constructed_dowling_2.json")
    assert built == files.load_scheme(files.fixture_path("dow_triv.json"))


def test_construct_quotient(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run_cli(capsys, "construct", "quotient",
                        "--semimatroid", "semi4.json", "--group", "z2.json",
                        "--action", "z2_swap.json")
    assert code == 0 and "quotient tutte: x^2 + 1" in out


def test_construct_linear(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run_cli(capsys, "construct", "linear", "i2.json")
    assert code == 0 and "rank 2" in out


def test_export_dot(capsys):
    code, out = run_cli(capsys, "export", "dot", "isth.json")
    assert code == 0
    assert out.count("->") == 6
    assert out.count("label=") == 5
    assert '"a" [label="a : 1"]' in out


def test_iso_distinguishes_the_partition_fixtures(capsys):
    code, out = run_cli(capsys, "iso", "dow_triv.json", "dow_nontriv.json")
    assert code == 1 and "not isomorphic" in out


def test_fixture_env_override(tmp_path, monkeypatch, isth):
    alt = tmp_path / "isth.json"
    doc = files.scheme_to_doc(isth)
    doc["elements"][0]["id"] = "bottom"
    doc["covers"] = [[("bottom" if a == "0" else a), b] for a, b in doc["covers"]]
    files.dump_doc(doc, alt)
    monkeypatch.setenv(files.FIXTURE_ENV, str(tmp_path))
    m = files.load_scheme(files.resolve_input("isth.json"))
    assert "bottom" in m.elements
