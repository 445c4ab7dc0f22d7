import json
from importlib import resources

import jsonschema
import pytest

from ncja.cli import build_parser, main


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return invoke


def schema(command):
    return json.loads((resources.files("ncja") / "schemas" / f"{command}.json").read_text())


class TestProve:
    @pytest.mark.parametrize("logic, sequent, code", [
        ("mall", "A, B |- A * B", 0),
        ("all", "A, B |- A & B", 1),
        ("cl", "|- A", 1),
        ("il", "|- A \\/ ~A", 1),
        ("l", "A, A \\ B |- B", 0),
    ])
    def test_exit_codes(self, run, logic, sequent, code):
        assert run("prove", "--logic", logic, sequent)[0] == code

    def test_show_tree(self, run):
        code, out, _ = run("prove", "--logic", "mall", "A, B |- A * B", "--show-tree")
        assert code == 0 and "[tensorR]" in out and "proof checks: yes" in out

    def test_unknown_on_tiny_budget(self, run):
        code, out, _ = run("prove", "--logic", "cl", "|- ((A -> B) -> A) -> A", "--budget", "1")
        assert code == 2 and "max_nodes" in out

    @pytest.mark.parametrize("argv", [
        ["prove", "--logic", "cl", "A |- ("],
        ["prove", "--logic", "nope", "A |- A"],
        ["prove", "--logic", "cl", "A * B |- A"],
        ["prove", "--logic", "cl", "A |- A", "--budget", "0"],
        ["prove", "--logic", "cl"],
        ["frobnicate"],
    ])
    def test_malformed_input(self, run, argv):
        code, _, err = run(*argv)
        assert code == 64 and "error" in err

    def test_json(self, run):
        code, out, _ = run("prove", "--logic", "mall", "A, B |- A * B", "--show-tree", "--json")
        data = json.loads(out)
        jsonschema.validate(data, schema("prove"))
        assert data["status"] == "proved" and data["proof"]["rule"] == "tensorR"


class TestConsistent:
    def test_lambek_list(self, run):
        code, out, _ = run("consistent", "--logic", "L", "A, A \\ bot, C")
        assert "consistent: yes; robust: no" in out and code == 1

    def test_plain_mode(self, run):
        code, out, _ = run("consistent", "--logic", "L", "A, A \\ bot, C", "--mode", "plain")
        assert code == 0 and "robust" not in out

    def test_file_input(self, run, tmp_path):
        path = tmp_path / "j.json"
        path.write_text(json.dumps({"formulas": ["A", "B", "~(A /\\ B)"]}))
        code, out, _ = run("consistent", "--logic", "CL", str(path), "--json")
        data = json.loads(out)
        jsonschema.validate(data, schema("consistent"))
        assert code == 1 and data["consistent"] is False


class TestAggregate:
    def test_dilemma(self, run):
        code, out, _ = run("aggregate", "dilemma-cl")
        assert "outcome: {A, B, ~(A /\\ B)}" in out and "inconsistent under CL" in out
        assert code == 1

    def test_collective_logic(self, run):
        code, out, _ = run("aggregate", "dilemma-cl", "--collective-logic", "ALL")
        assert code == 0 and "consistent under ALL" in out

    def test_lambek(self, run):
        code, out, _ = run("aggregate", "dilemma-lambek")
        assert "outcome: [A, B, ((A . B) \\ bot)]" in out and "inconsistent under L" in out

    def test_voter_rationality(self, run):
        code, _, err = run("aggregate", "lambek-incomplete", "--voters", "robust")
        assert code == 64 and "voter 1" in err

    def test_rule_flag(self, run):
        code, out, _ = run("aggregate", "dilemma-cl", "--rule", "quota:3")
        assert code == 0 and "rule: quota:3" in out

    def test_json(self, run):
        _, out, _ = run("aggregate", "dilemma-lambek", "--json")
        data = json.loads(out)
        jsonschema.validate(data, schema("aggregate"))
        assert data["consistent"] is False


class TestAgendaCheck:
    def test_median_property(self, run):
        code, out, _ = run("agenda-check", "dilemma-cl", "--property", "mp")
        assert code == 1 and "witness: {A, B, ~(A /\\ B)}" in out

    def test_kmp(self, run):
        assert run("agenda-check", "dilemma-cl", "--property", "kmp", "--k", "3")[0] == 0
        assert run("agenda-check", "dilemma-cl", "--property", "kmp")[0] == 64

    def test_json_with_mis(self, run):
        _, out, _ = run("agenda-check", "dilemma-cl", "--mis", "--json")
        data = json.loads(out)
        jsonschema.validate(data, schema("agenda-check"))
        assert data["mis"]["max_size"] == 3


class TestSafety:
    def test_all_safe(self, run):
        code, out, _ = run("safety", "all-dilemma", "--class", "maj")
        assert code == 0
        assert "safe (2024 of 2024 voter-set combinations checked, all outcomes robustly consistent in ALL)" in out

    def test_weakening_unsafe(self, run):
        code, out, _ = run("safety", "all-dilemma", "--collective-logic", "ALLW", "--show-tree")
        assert code == 1 and "[WL]" in out

    def test_quota(self, run):
        assert run("safety", "dilemma-cl", "--class", "quota", "--m", "3")[0] == 0
        assert run("safety", "dilemma-cl", "--class", "quota", "--m", "2")[0] == 1

    def test_jobs_output_identical(self, run):
        one = run("safety", "dilemma-cl", "--json")[1]
        many = run("safety", "dilemma-cl", "--json", "--jobs", "3")[1]
        assert one == many

    @pytest.mark.parametrize("argv", [
        ["safety", "dilemma-cl", "--n", "4"],
        ["safety", "dilemma-cl", "--class", "quota"],
        ["safety", "dilemma-cl", "--jobs", "0"],
        ["safety", "no-such-agenda"],
    ])
    def test_bad_input(self, run, argv):
        assert run(*argv)[0] == 64

    @pytest.mark.parametrize("argv", [
        ["safety", "dilemma-cl"],
        ["safety", "mall-complete", "--complete", "--outcome-test", "consistent"],
        ["safety", "dilemma-cl", "--class", "wr-a-i"],
        ["safety", "dilemma-r"],
    ])
    def test_json(self, run, argv):
        jsonschema.validate(json.loads(run(*argv, "--json")[1]), schema("safety"))


class TestReproduce:
    def test_single(self, run):
        code, out, _ = run("reproduce", "dilemma-cl")
        assert code == 0 and "pass" in out

    def test_all(self, run):
        code, out, _ = run("reproduce", "--all")
        assert code == 0 and out.count(" pass ") == 12

    def test_all_parallel_same_order(self, run):
        serial = json.loads(run("reproduce", "--all", "--json")[1])
        parallel = json.loads(run("reproduce", "--all", "--json", "--jobs", "4")[1])
        jsonschema.validate(parallel, schema("reproduce"))
        assert serial == parallel

    def test_usage(self, run):
        assert run("reproduce")[0] == 64
        assert run("reproduce", "nope")[0] == 64
        assert run("reproduce", "dilemma-cl", "--all")[0] == 64


class TestMisc:
    def test_logics(self, run):
        code, out, _ = run("logics", "--json")
        data = json.loads(out)
        jsonschema.validate(data, schema("logics"))
        assert len(data["logics"]) == 12

    def test_help_documents_exit_codes(self, run):
        assert main(["--help"]) == 0
        text = build_parser().format_help()
        assert "64" in text and "unknown" in text
