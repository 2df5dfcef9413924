"""Command-line interface: documents, exit codes, round trips."""
import json

from bigstep.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    docs = [json.loads(line) for line in captured.out.splitlines() if line]
    return code, docs, captured.err


def test_eval_ok(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda",
                            "--mode", "total", "(\\x:nat.x) 3")
    assert code == 0
    assert docs == [{"kind": "ok", "result": "3"}]


def test_eval_wrong_exit_code(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda",
                            "--mode", "total", "0 0")
    assert code == 2
    assert docs[0]["kind"] == "wrong"


def test_eval_omega_trace(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda",
                            "--mode", "trace", "omega")
    assert code == 3
    doc = docs[0]
    assert doc["kind"] == "infinity"
    assert doc["trace"]["prefix"] == []
    assert len(doc["trace"]["period"]) == 3
    assert doc["trace"]["period"][1] == doc["trace"]["period"][2]


def test_eval_timeout_exit(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda",
                            "--fuel", "3", "omega")
    assert code == 4
    assert docs[0]["kind"] == "timeout"


def test_eval_exhaustive_choice(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda",
                            "--exhaustive", "1 (+) 2")
    assert code == 0
    assert {d["result"] for d in docs} == {"1", "2"}


def test_step_emits_seven_documents_for_identity_application(capsys):
    code, docs, _ = run_cli(capsys, "step", "--lang", "lambda",
                            "--max-steps", "10", "(\\x:nat.x) 3")
    assert code == 0
    assert len(docs) == 7
    assert docs[-1]["result"] == "3"
    assert docs[0]["children"][0]["result"] == "?"
    for doc in docs:
        assert set(doc) == {"config", "result", "rule", "children"}


def test_typecheck_lambda(capsys):
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "lambda",
                            "\\x:nat. succ x")
    assert code == 0 and docs == [{"type": "nat -> nat"}]
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "lambda", "0 0")
    assert code == 2 and "error" in docs[0]


def test_typecheck_fj_goldens(capsys):
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "fj",
                            "new C(<I>\\x. x)")
    assert code == 0 and docs == [{"type": "C"}]
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "fj", "new C(\\x. x)")
    assert code == 2


def test_eval_fj_and_impfj(capsys):
    code, docs, _ = run_cli(capsys, "eval", "--lang", "fj", "new C(<I>\\x. x)")
    assert code == 0 and docs[0]["result"] == "obj C(\\x. x)"
    code, docs, _ = run_cli(capsys, "eval", "--lang", "impfj",
                            "new B(new A()).test()")
    assert code == 0 and docs[0]["result"].endswith("#2>")


def test_soundness_fixtures(capsys):
    code, docs, _ = run_cli(capsys, "soundness", "--lang", "lambda",
                            "--fixture", "fool", "--fuel", "50")
    assert code == 5
    violation = docs[0]["violations"][0]
    assert violation["condition"] == "forall-progress"
    assert violation["premise"] == 1

    code, docs, _ = run_cli(capsys, "soundness", "--lang", "lambda",
                            "--fixture", "dropped-succ", "--fuel", "50")
    assert code == 5
    assert docs[0]["violations"][0]["condition"] == "exists-progress"

    code, docs, _ = run_cli(capsys, "soundness", "--lang", "lambda",
                            "--depth", "2", "--fuel", "100")
    assert code == 0
    assert docs[0]["violations"] == []


def test_corules_demo(capsys):
    code, docs, _ = run_cli(capsys, "corules", "--goal", "(1:2)*=2")
    assert code == 0 and docs[0]["corules"] and docs[0]["coinductive"]
    code, docs, _ = run_cli(capsys, "corules", "--goal", "(1:2)*=5")
    assert code == 2 and not docs[0]["corules"] and docs[0]["coinductive"]
    code, docs, _ = run_cli(capsys, "corules", "--goal", "1:2:nil=2")
    assert code == 0


def test_parse_error_exit(capsys):
    code, _, err = run_cli(capsys, "eval", "--lang", "lambda", "succ )")
    assert code == 1
    assert "parse error" in err


def test_file_input(tmp_path, capsys):
    f = tmp_path / "term.lam"
    f.write_text("succ (succ 1)")
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda", str(f))
    assert code == 0 and docs[0]["result"] == "3"


def test_table_from_file(tmp_path, capsys):
    f = tmp_path / "table.fj"
    f.write_text("""
    interface P { Q id(Q2 x); }
    interface Q {}
    class Q2 {}
    """)
    # table parses but the identity body has type Q2, not the required Q
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "fj",
                            "--table", str(f), "<P>\\x. x")
    assert code == 2
    f2 = tmp_path / "table2.fj"
    f2.write_text("interface P { P id(P x); }")
    code, docs, _ = run_cli(capsys, "typecheck", "--lang", "fj",
                            "--table", str(f2), "<P>\\x. x")
    assert code == 0 and docs == [{"type": "P"}]


def test_env_fuel_default(capsys, monkeypatch):
    monkeypatch.setenv("BSM_FUEL", "2")
    code, docs, _ = run_cli(capsys, "eval", "--lang", "lambda", "omega")
    assert code == 4


def test_nonpositive_fuel_rejected(capsys):
    code, _, err = run_cli(capsys, "eval", "--lang", "lambda", "--fuel", "0", "1")
    assert code == 1 and "positive" in err
