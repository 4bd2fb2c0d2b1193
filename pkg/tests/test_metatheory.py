"""Smoke tests for the metatheory suite and the sortc-meta command."""
import json

import pytest

from DSRCheck.benchmark.cli import main
from DSRCheck.benchmark.metatheory import (
    PROPERTIES,
    REPORT_COLUMNS,
    SuiteConfig,
    load_corpus,
    run_metatheory_suite,
)

# the first trials replay the shipped corpus, which every one of these must survive
DYNAMIC = ["progress", "values_dont_step", "step_determinism", "erased_evaluation"]


def test_load_corpus():
    names = [entry.name for entry in load_corpus()]
    assert names == sorted(names)
    assert "parity.dsr" in names and "sigstar.dsr" in names


def test_load_missing_corpus(tmp_path):
    assert load_corpus(str(tmp_path / "nowhere")) == []


def test_suite_on_corpus():
    report = run_metatheory_suite(SuiteConfig(trials=8, only=DYNAMIC, progress=False))
    assert list(report.columns) == REPORT_COLUMNS
    assert list(report.property) == DYNAMIC
    assert (report.failures == 0).all()
    assert (report.trials == 8).all()
    assert (report.requested == 8).all()
    assert not report.gave_up.any()


def test_unknown_property():
    with pytest.raises(KeyError):
        run_metatheory_suite(SuiteConfig(trials=1, only=["soundness"], progress=False))


def test_corrupted_subtyping_is_caught():
    report = run_metatheory_suite(
        SuiteConfig(trials=20, only=["progress"], corrupt_subtyping=True, progress=False)
    )
    [row] = report.to_dict(orient="records")
    assert row["failures"] >= 1
    assert row["counterexample"].startswith("variance.dsr")


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_every_property_holds_on_small_inputs(name):
    config = SuiteConfig(
        trials=3, term_size=5, value_size=4, type_depth=2, max_discard_ratio=5, only=[name], progress=False
    )
    [row] = run_metatheory_suite(config).to_dict(orient="records")
    assert row["failures"] == 0, row["counterexample"]
    assert row["trials"] + row["discarded"] >= 3
    assert row["trials"] <= row["requested"] == 3


@pytest.mark.parametrize("name", ["progress", "values_dont_step", "step_determinism", "printer_roundtrip"])
def test_corpus_replay_is_never_discarded(name):
    [row] = run_metatheory_suite(SuiteConfig(trials=3, only=[name], progress=False)).to_dict(orient="records")
    assert row["discarded"] == 0
    assert row["trials"] == 3
    assert not row["gave_up"]


def test_corrupted_subtyping_breaks_transitivity_chain():
    report = run_metatheory_suite(
        SuiteConfig(trials=100, only=["subtyping_transitivity"], corrupt_subtyping=True, progress=False)
    )
    [row] = report.to_dict(orient="records")
    assert row["failures"] >= 1


def test_transitivity_chain_is_decided():
    [row] = run_metatheory_suite(
        SuiteConfig(trials=40, only=["subtyping_transitivity"], progress=False)
    ).to_dict(orient="records")
    assert row["failures"] == 0, row["counterexample"]
    assert row["trials"] == 40


def test_starved_property_gives_up():
    [row] = run_metatheory_suite(
        SuiteConfig(trials=2, only=["annotatability"], oracle_depth=0, max_discard_ratio=0, progress=False)
    ).to_dict(orient="records")
    assert row["gave_up"]
    assert row["trials"] < 2
    assert row["failures"] == 0


def test_every_property_is_registered():
    assert len(PROPERTIES) == len(set(PROPERTIES))
    for name in ("dichotomy", "preservation", "oracle_agreement", "decidability", "weakening"):
        assert name in PROPERTIES


def test_meta_cli_writes_report(tmp_path, capsys):
    output = tmp_path / "report.json"
    code = main(["--trials", "3", "--only", "progress", "--quiet", "--output", str(output)])
    assert code == 0
    report = json.loads(output.read_text(encoding="utf-8"))
    assert report["config"]["trials"] == 3
    assert [row["property"] for row in report["properties"]] == ["progress"]
    assert "progress" in capsys.readouterr().out


def test_meta_cli_csv(tmp_path):
    output = tmp_path / "report.csv"
    assert main(["--trials", "2", "--only", "step_determinism", "--quiet", "--output", str(output)]) == 0
    assert output.read_text(encoding="utf-8").splitlines()[0] == ",".join(REPORT_COLUMNS)


def test_meta_cli_fails_when_property_gives_up(tmp_path, capsys):
    output = tmp_path / "report.json"
    argv = ["--trials", "2", "--only", "annotatability", "--oracle-depth", "0", "--max-discard-ratio", "0"]
    assert main(argv + ["--quiet", "--output", str(output)]) == 1
    assert "GAVE UP annotatability" in capsys.readouterr().err
    [row] = json.loads(output.read_text(encoding="utf-8"))["properties"]
    assert row["gave_up"] is True


def test_meta_cli_rejects_zero_trials():
    with pytest.raises(SystemExit):
        main(["--trials", "0"])
