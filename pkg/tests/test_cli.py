import json


from excedance_lab.cli import main
from excedance_lab.multipoly import Context, poly_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_text(capsys):
    code, out, _ = run_cli(capsys, "family", "--name", "A_pq", "--n", "2")
    assert code == 0
    assert out.strip() == "p^2*q^2 + q*x"


def test_family_json_round_trip(capsys):
    code, out, _ = run_cli(
        capsys, "family", "--name", "one_over_k", "--n", "5", "--k", "3",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    ctx = Context()
    poly = poly_from_json(ctx, payload["poly"])
    assert poly == ctx.poly(payload["text"])
    # coefficient total is the 3^(5-cyc)-weighted count of S_5
    from oracles import plain_exc_fix_cyc

    total = sum(cnt * 3 ** (5 - c) for (e, f, c), cnt in plain_exc_fix_cyc(5).items())
    assert poly.substitute({"x": 1}).constant_term() == total


def test_family_symbolic_default(capsys):
    code, out, _ = run_cli(capsys, "family", "--name", "alpha_minus", "--n", "1")
    assert code == 0
    assert out.strip() == "-2 + r"


def test_family_springer(capsys):
    code, out, _ = run_cli(capsys, "family", "--name", "springer", "--n", "5")
    assert code == 0
    assert out.strip() == "361"


def test_family_csv(capsys):
    code, out, _ = run_cli(
        capsys, "family", "--name", "A_q", "--n", "2", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "monomial,coeff"
    assert "q*x,1" in lines and "q^2,1" in lines


def test_family_bad_name(capsys):
    code, _, err = run_cli(capsys, "family", "--name", "nope", "--n", "2")
    assert code == 2
    assert "unknown family" in err


def test_enumerate_csv(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--kind", "signed", "--n", "2",
        "--stats", "exc,fix", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "word,cycles,exc,fix"
    assert len(lines) == 9
    assert lines[1].startswith("-2 -1,")


def test_enumerate_json(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "--kind", "colored", "--n", "1", "--r", "3",
        "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)
    assert [row["word"] for row in rows] == ["1^0", "1^1", "1^2"]


def test_enumerate_unknown_stat(capsys):
    code, _, err = run_cli(
        capsys, "enumerate", "--kind", "plain", "--n", "2", "--stats", "bogus"
    )
    assert code == 2


def test_enumerate_guard_env(capsys, monkeypatch):
    monkeypatch.setenv("EXCEDANCE_LAB_MAX_CLASS", "5")
    code, _, err = run_cli(capsys, "enumerate", "--kind", "plain", "--n", "4")
    assert code == 2
    assert "exceeds guard" in err


def test_grammar_derive(capsys, tmp_path):
    rules = tmp_path / "rules.txt"
    rules.write_text("I -> I*p*q\np -> x*y\nx -> x*y\ny -> x*y\n")
    code, out, _ = run_cli(
        capsys, "grammar", "derive", "--rules", str(rules), "--seed", "I", "--n", "2"
    )
    assert code == 0
    ctx = Context()
    assert ctx.poly(out.strip()) == ctx.poly("I*(p^2*q^2 + q*x*y)")


def test_shape_json(capsys):
    code, out, _ = run_cli(
        capsys, "shape", "--family", "A_pq", "--n", "6", "--p", "1/2",
        "--q", "1/3", "--report", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["m"] == 5
    assert payload["verdicts"]["alternatingly_increasing"] is True


def test_shape_rejects_free_variables(capsys):
    code, _, err = run_cli(capsys, "shape", "--family", "A_pq", "--n", "3")
    assert code == 2
    assert "univariate" in err


def test_fs_action(capsys):
    code, out, _ = run_cli(
        capsys, "fs-action", "--perm", "(1,10,6,5,7,3,2,8)(4,9)", "--x", "3"
    )
    assert code == 0
    assert out.strip() == "(1,3,10,6,5,7,2,8)(4,9)"


def test_fs_action_classify(capsys):
    code, out, _ = run_cli(capsys, "fs-action", "--perm", "(1,4,2)(3)")
    assert code == 0
    assert "4:cpk" in out and "2:cdd" in out


def test_verify_text_and_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--id", "cor-springer", "--max-n", "4")
    assert code == 0
    assert "cor-springer: pass" in out
    code, _, err = run_cli(capsys, "verify", "--id", "missing-id")
    assert code == 2
    assert "unknown identity" in err


def test_verify_json(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--id", "thm18-crun", "--max-n", "3", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert "5" in payload["details"]["xi_plus[3]"]


def test_suite_subset(capsys):
    code, out, _ = run_cli(
        capsys, "suite", "--profile", "quick",
        "--ids", "cor-springer,rec-anxq", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == {"pass": 2, "fail": 0, "skipped": 0}
    assert [r["id"] for r in payload["results"]] == ["cor-springer", "rec-anxq"]


def test_suite_text_table(capsys):
    code, out, _ = run_cli(
        capsys, "suite", "--profile", "quick", "--ids", "cor-springer"
    )
    assert code == 0
    assert "pass" in out and "total: 1" in out
