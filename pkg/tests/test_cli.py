"""CLI behaviour: exit codes, output shapes, and fixture replay."""

import json

import pytest

from depmodal.cli import main
from depmodal.fixtures import fixture_names, fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

class TestCheck:
    def test_positional_form(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("open_door"), "s",
                           "K Dg({bar_p};{bar_r})")
        assert code == 0
        assert out.strip() == "true"

    def test_flag_form(self, capsys):
        code, out, _ = run(capsys, "check",
                           "-m", fixture_path("open_door"),
                           "-w", "s", "-f", "Dl({bar_p};{bar_r})")
        assert code == 0
        assert out.strip() == "false"   # a false answer is still success

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "check", fixture_path("open_door"), "s",
                           "K Dg({bar_p};{bar_r})", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["value"] is True
        assert data["routes"] == {"direct": True, "evidence": True}

    def test_unknown_world_is_evaluation_error(self, capsys):
        code, _, err = run(capsys, "check", fixture_path("open_door"),
                           "nowhere", "top")
        assert code == 4
        assert "unknown world" in err

    def test_undeclared_name_is_evaluation_error(self, capsys):
        code, _, err = run(capsys, "check", fixture_path("open_door"), "s",
                           "Dg({ghost};{bar_p})")
        assert code == 4
        assert "undeclared" in err

    def test_malformed_formula_is_usage_error(self, capsys):
        code, _, err = run(capsys, "check", fixture_path("open_door"), "s",
                           "Dg({x};{z}")
        assert code == 2
        assert "position" in err

    def test_missing_argument_is_usage_error(self, capsys):
        code, _, err = run(capsys, "check", fixture_path("open_door"), "s")
        assert code == 2
        assert "missing formula" in err

    def test_missing_file_is_model_error(self, capsys):
        code, _, err = run(capsys, "check", "no/such/file.edl", "s", "top")
        assert code == 3


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

class TestValidate:
    @pytest.mark.parametrize("name", fixture_names())
    def test_bundled_fixtures_pass(self, capsys, name):
        code, out, _ = run(capsys, "validate", fixture_path(name))
        assert code == 0
        assert "ok" in out

    @pytest.mark.parametrize("name,needle", [
        ("broken_partition", "not covered"),
        ("missing_assignment", "missing value"),
        ("mirror_violation", "mirror violation"),
    ])
    def test_invalid_fixtures_diagnosed(self, capsys, name, needle):
        code, _, err = run(capsys, "validate", fixture_path(name))
        assert code == 3
        assert needle in err


# ---------------------------------------------------------------------------
# extension / generative
# ---------------------------------------------------------------------------

class TestExtension:
    def test_every_world_satisfies_biconditional(self, capsys):
        code, out, _ = run(capsys, "extension", fixture_path("judging_case_2"),
                           "A ((p_b -> p_c) & (p_c -> p_b))")
        assert code == 0
        assert out.split() == ["s", "t", "u"]

    def test_empty_extension(self, capsys):
        code, out, _ = run(capsys, "extension", fixture_path("open_door"), "bot")
        assert code == 0
        assert "no worlds" in out


class TestGenerative:
    def test_family_and_verdicts(self, capsys):
        code, out, _ = run(capsys, "generative", fixture_path("judging_case_2"),
                           "s", "{bar_a,bar_b,bar_c}", "--kind", "l")
        assert code == 0
        assert "family: {bar_a} {bar_a,bar_b,bar_c}" in out
        assert "lemma=true partition=true graph=true" in out

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "generative", fixture_path("dl_strictness_witness"),
                           "b", "{x,y}", "--kind", "l", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["family"] == [["x"], ["y"]]
        assert data["verdicts"] == {"lemma": False, "partition": False,
                                    "graph": False}
        assert data["generative_family"] == [["x"], ["y"]]

    def test_kind_required(self, capsys):
        code, _, _ = run(capsys, "generative", fixture_path("open_door"), "s")
        assert code == 2

    def test_empty_candidate_rejected(self, capsys):
        code, _, err = run(capsys, "generative", fixture_path("open_door"), "s",
                           "{}", "--kind", "g")
        assert code == 2


# ---------------------------------------------------------------------------
# bisim
# ---------------------------------------------------------------------------

class TestBisim:
    def test_witness_points_distinguished(self, capsys):
        path = fixture_path("dl_strictness_witness")
        code, out, _ = run(capsys, "bisim", path, "a", path, "b")
        assert code == 0
        assert "not bisimilar" in out
        assert "distinguishing: Dl({y};{y})" in out

    def test_bisimilar_points(self, capsys):
        path = fixture_path("dl_strictness_witness")
        code, out, _ = run(capsys, "bisim", path, "a", path, "a")
        assert code == 0
        assert out.strip() == "bisimilar"

    def test_signature_mismatch_reported(self, capsys):
        code, _, err = run(capsys, "bisim", fixture_path("open_door"), "s",
                           fixture_path("dl_strictness_witness"), "a")
        assert code == 4
        assert "signatures differ" in err

    def test_flag_form(self, capsys):
        path = fixture_path("dl_strictness_witness")
        code, out, _ = run(capsys, "bisim", "-m", path, "-w", "a",
                           "--model2", path, "--world2", "b", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["bisimilar"] is False
        assert data["distinguishing"] == "Dl({y};{y})"


# ---------------------------------------------------------------------------
# axioms / examples
# ---------------------------------------------------------------------------

class TestAxioms:
    def test_small_run(self, capsys):
        code, out, _ = run(capsys, "axioms", "--trials", "5", "--seed", "0")
        assert code == 0
        assert "counterexamples=0" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "axioms", "--trials", "3", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["trials"] == 3
        assert data["counterexamples"] == []


class TestExamples:
    @pytest.mark.parametrize("name", fixture_names())
    def test_replay_passes(self, capsys, name):
        code, out, _ = run(capsys, "examples", name)
        assert code == 0
        assert "FAIL" not in out
        assert "PASS" in out

    def test_judging_case_2_replay(self, capsys):
        code, out, _ = run(capsys, "examples", "judging_case_2")
        assert code == 0
        assert out.count("PASS") == 6
        assert "6/6 claims hold" in out

    def test_unknown_name(self, capsys):
        code, _, err = run(capsys, "examples", "no_such_fixture")
        assert code == 2
        assert "unknown fixture" in err


def test_route_disagreement_is_internal_error(capsys, monkeypatch):
    from depmodal import semantics

    def broken(m, s, kind, x, y):
        return True

    monkeypatch.setattr(semantics, "dep_holds_direct", broken)
    code, _, err = run(capsys, "check", fixture_path("open_door"), "s",
                       "Dl({bar_p};{bar_r})")
    assert code == 5
    assert "routes disagree" in err


def test_no_command_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
