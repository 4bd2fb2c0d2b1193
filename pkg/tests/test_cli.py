"""Tests for the sortc command line."""
import json
import os
import subprocess
import sys
from os import path

import jsonschema
import pytest

from DSRCheck.cli import SCHEMA_PATH, main

ROOT = path.dirname(path.dirname(path.abspath(__file__)))
PROGRAMS = path.join(ROOT, "data", "programs")
CORPUS = sorted(name for name in os.listdir(PROGRAMS) if name.endswith(".dsr"))


def _sortc(*args, env=None):
    return subprocess.run(
        [sys.executable, path.join(ROOT, "sortc.py"), *args],
        cwd=ROOT,
        capture_output=True,
        text=True,
        env={**os.environ, **(env or {})},
    )


def _json(capsys, *args):
    code = main(list(args) + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_check_parity_against_even():
    result = _sortc("check", path.join(PROGRAMS, "parity.dsr"), "--goal", "even")
    assert result.returncode == 0, f"Failed to check parity.dsr: {result.stderr}"


def test_check_backpatching_signature():
    result = _sortc("check", path.join(PROGRAMS, "sigstar.dsr"))
    assert result.returncode == 3, f"Unexpected exit code {result.returncode}"
    assert "[SUBSORT_BACKPATCH]" in result.stderr


def test_run_beta():
    result = _sortc("run", path.join(PROGRAMS, "beta.dsr"))
    assert result.returncode == 0, f"Failed to run beta.dsr: {result.stderr}"
    assert result.stdout == "()\n"


@pytest.mark.parametrize("argv", [[], ["check"], ["frobnicate", "x.dsr"], ["run", "x.dsr", "--fuel", "-1"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 64


def test_unreadable_file(tmp_path):
    assert main(["check", str(tmp_path / "missing.dsr")]) == 66


def test_parse_error_exit_code(tmp_path, capsys):
    source = tmp_path / "broken.dsr"
    source.write_text("data d { C : unit }\nin (fn x =>\n", encoding="utf-8")
    assert main(["check", str(source)]) == 2
    assert "[PARSE]" in capsys.readouterr().err


@pytest.mark.parametrize("command", ["check", "run", "sig", "coverage"])
def test_undecodable_input_is_a_parse_error(tmp_path, capsys, command):
    source = tmp_path / "latin.dsr"
    source.write_bytes(b"\xff\xfe()")
    assert main([command, str(source)]) == 2
    assert "[PARSE]" in capsys.readouterr().err


def test_undecodable_input_json(tmp_path, capsys):
    source = tmp_path / "latin.dsr"
    source.write_bytes(b"\xff\xfe()")
    code, document = _json(capsys, "check", str(source))
    assert code == 2
    jsonschema.validate(document, json.load(open(SCHEMA_PATH, encoding="utf-8")))
    [diagnostic] = document["diagnostics"]
    assert diagnostic["code"] == "PARSE"
    assert "UTF-8" in diagnostic["message"]


def test_bad_goal_is_a_parse_error(program_path):
    assert main(["check", program_path("parity.dsr"), "--goal", "even ->"]) == 2


@pytest.mark.parametrize("name", ["parity.dsr", "sigstar.dsr", "cnf_missing_var.dsr", "sigopt.dsr"])
def test_json_output_matches_schema(capsys, program_path, name):
    schema = json.load(open(SCHEMA_PATH, encoding="utf-8"))
    for command in ("check", "run", "sig", "coverage"):
        main([command, program_path(name), "--json"])
        document = json.loads(capsys.readouterr().out)
        jsonschema.validate(document, schema)
        assert document["command"] == command


def test_json_exit_code_follows_diagnostics(capsys, program_path):
    code, document = _json(capsys, "check", program_path("cnf_missing_var.dsr"))
    assert code == 1 and not document["ok"]
    [diagnostic] = document["diagnostics"]
    assert diagnostic["code"] == "NONEXHAUSTIVE"
    assert diagnostic["extra"]["witness"].startswith("Var(")
    assert (diagnostic["line"], diagnostic["col"]) != (None, None)


@pytest.mark.parametrize("name", CORPUS)
def test_json_output_is_deterministic(name):
    first = _sortc("check", path.join(PROGRAMS, name), "--json")
    second = _sortc("check", path.join(PROGRAMS, name), "--json")
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode


def test_coverage_prints_both_cons_tracks(capsys, program_path):
    assert main(["coverage", program_path("sigopt.dsr")]) == 0
    lines = [line.strip() for line in capsys.readouterr().out.splitlines()]
    start = lines.index("Cons(x)")
    assert lines[start + 1:start + 3] == ["x:empty ⊢ list", "x:list ⊢ list"]


def test_coverage_optimized(capsys, program_path):
    code, document = _json(capsys, "coverage", program_path("sigopt.dsr"), "--optimize")
    assert code == 0
    [case] = document["result"]["cases"]
    assert case["arms"][1]["text"] == ["x:list ⊢ list"]
    assert case["exhaustive"]


def test_sig_closure(capsys, program_path):
    assert main(["sig", program_path("parity.dsr"), "--closure"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "even <= bits_s" in lines
    assert "even <= odd" not in lines


def test_sig_json(capsys, program_path):
    code, document = _json(capsys, "sig", program_path("list_subempty.dsr"), "--inversion")
    assert code == 0
    result = document["result"]
    assert [s["name"] for s in result["sorts"]] == ["list", "empty", "subempty"]
    assert ["subempty", "list"] in result["edges"]
    assert result["inversion"]["subempty"] == ["Nil : unit -> subempty;"]


def test_run_trace(capsys, program_path):
    assert main(["run", program_path("parity.dsr"), "--trace"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "One(One(Empty()))"
    assert lines[0].split()[0] == "0"


def test_run_out_of_fuel_is_a_warning(capsys, program_path):
    code, document = _json(capsys, "run", program_path("parity.dsr"), "--fuel", "0")
    assert code == 0 and document["ok"]
    assert [(d["code"], d["severity"]) for d in document["diagnostics"]] == [("OUT_OF_FUEL", "warning")]
    assert document["result"]["outcome"]["kind"] == "out_of_fuel"


def test_run_refuses_ill_typed_programs(capsys, program_path):
    assert main(["run", program_path("variance.dsr")]) == 1
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("mode, colored", [("always", True), ("never", False)])
def test_color_modes(monkeypatch, capsys, program_path, mode, colored):
    monkeypatch.setenv("SORTC_COLOR", mode)
    main(["check", program_path("parity_bad.dsr")])
    assert ("\x1b[" in capsys.readouterr().err) == colored
