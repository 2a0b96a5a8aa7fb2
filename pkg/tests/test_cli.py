import json

from lambdapm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_parse_verb(capsys):
    code, out = run(capsys, "parse", "--term", "\\x. x")
    assert code == 0 and out["term"] == "\\x. x"


def test_parse_strict_rejects_free(capsys):
    code, _ = run(capsys, "parse", "--term", "x y", "--strict")
    assert code == 2


def test_pbohm_report(capsys):
    code, out = run(capsys, "pbohm", "--m", "(\\x.x)(\\y.y)", "--n", "\\y.y",
                    "--depth", "3", "--fuel", "100")
    assert code == 0
    assert out["value"] == {"kind": "exact", "num": 1, "den_pow2": 1}


def test_rreduce_report(capsys):
    code, out = run(capsys, "rreduce", "--term", "(\\x.x<x>)<y,z>")
    assert code == 0 and out == ["y<z>", "z<y>"]


def test_solvable_divergence_certificate(capsys):
    code, out = run(capsys, "solvable", "--term", "(\\x. x x)(\\x. x x)",
                    "--fuel", "10")
    assert code == 0 and out["status"] == "divergent" and "cycle" in out


def test_check_axioms_exit_codes(capsys):
    code, out = run(capsys, "check-axioms", "--space", "sierpinski",
                    "--mode", "pm")
    assert code == 0 and out["violations"] == []


def test_quantify_check_failure_exit(capsys):
    code, out = run(capsys, "quantify-check", "--poset", "sierpinski",
                    "--metric", "basis")
    assert code == 0 and out["pass"]


def test_bad_input_exit_code(capsys):
    code, _ = run(capsys, "pbohm", "--m", "(((", "--n", "x", "--depth", "2")
    assert code == 2


def test_reports_are_byte_stable(capsys):
    main(["enum-isometry", "--a", "x", "--b", "x y", "--prefix", "8"])
    first = capsys.readouterr().out
    main(["enum-isometry", "--a", "x", "--b", "x y", "--prefix", "8"])
    assert capsys.readouterr().out == first


def test_verify_single_suite(capsys):
    code = main(["verify", "--suite", "identities"])
    captured = capsys.readouterr()
    assert code == 0
    reports = json.loads(captured.out)
    assert reports[0]["passed"] is True


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["--output", str(target), "ptree", "--a", "x", "--b", "x"])
    assert code == 0
    data = json.loads(target.read_text())
    assert data["value"] == {"kind": "exact", "num": 1, "den_pow2": 1}
