"""Tests for the staged certificate runner and its CLI."""

import json

import pytest

from autcert.pipeline import (
    STAGE_ORDER,
    CertificateReport,
    PipelineOptions,
    StageResult,
    main,
    run_all,
    run_stage,
)

EXPECTED_STAGES = (
    "config",
    "cremona",
    "quotient",
    "fibrations",
    "lattice",
    "heights",
    "canonical",
    "dynamics",
    "nonfg",
)


@pytest.fixture(scope="module")
def default_report() -> CertificateReport:
    return run_all()


def _leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _leaves(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _leaves(v)
    else:
        yield obj


# -- run_all -----------------------------------------------------------------------


def test_default_run_passes(default_report):
    assert default_report.verdict == "pass"
    assert [s.name for s in default_report.stages] == list(EXPECTED_STAGES)
    assert all(s.status == "pass" for s in default_report.stages)
    assert STAGE_ORDER == EXPECTED_STAGES


def test_every_stage_is_anchored(default_report):
    for stage in default_report.stages:
        assert stage.anchor.strip()
        assert stage.evidence["checks"]
        for check in stage.evidence["checks"]:
            assert check["claim"].strip()


def test_external_inputs_carry_citations(default_report):
    by_name = {s.name: s for s in default_report.stages}
    cited = {
        "quotient": "Mukai",
        "fibrations": "Oguiso",
        "lattice": "Shioda",
        "heights": "Oguiso",
        "dynamics": "Kodaira",
        "nonfg": "Ueno",
    }
    for name, author in cited.items():
        externals = by_name[name].evidence["external_inputs"]
        assert externals, name
        assert any(author in e["citation"] for e in externals), name
        assert all(e["status"] == "external-input" for e in externals)
    for name in ("config", "cremona", "canonical"):
        assert "external_inputs" not in by_name[name].evidence


def test_height_display_discrepancy_is_flagged(default_report):
    heights = next(s for s in default_report.stages if s.name == "heights")
    notes = [a["note"] for a in heights.evidence["annotations"]]
    assert any("evaluates to 4" in n and "2*2 + 2*0 - 2 - 2 = 0" in n for n in notes)


def test_json_numbers_are_strings(default_report):
    blob = default_report.to_json_dict()
    assert set(blob) == {"version", "options", "stages", "verdict"}
    for stage in blob["stages"]:
        assert set(stage) == {"name", "status", "anchor", "evidence"}
    for leaf in _leaves(blob):
        assert leaf is None or isinstance(leaf, (str, bool)), repr(leaf)


def test_report_is_deterministic():
    options = PipelineOptions(max_gens=2, seed=0)
    assert run_all(options).to_json() == run_all(options).to_json()


def test_corrupted_intersection_fails_stage_one():
    report = run_all(PipelineOptions(max_gens=1, corrupt_pair=("E2", "C32")))
    assert report.verdict == "fail"
    config = report.stages[0]
    assert config.status == "fail"
    swap = next(
        c for c in config.evidence["checks"] if "no fixed curve" in c["claim"]
    )
    pairs = {frozenset(f["pair"]) for f in swap["failures"]}
    assert frozenset({"E2", "C32"}) in pairs
    assert all(s.status == "pass" for s in report.stages[1:])


# -- run_stage ----------------------------------------------------------------------


def test_run_stage_matches_run_all_fragment(default_report):
    for k, name in enumerate(EXPECTED_STAGES):
        alone = run_stage(name)
        assert alone.to_json_dict() == default_report.stages[k].to_json_dict()


def test_run_stage_rejects_unknown_names():
    with pytest.raises(ValueError, match="unknown stage"):
        run_stage("bogus")


def test_nonfg_stage_respects_max_gens():
    stage = run_stage("nonfg", PipelineOptions(max_gens=10))
    cert = stage.evidence["certificate"]
    assert len(cert["stages"]) == 10
    assert cert["stages"][9]["escape"] == "(t^-20)*a"


def test_fibration_stage_lists_types():
    stage = run_stage("fibrations")
    typed = next(c for c in stage.evidence["checks"] if "types" in c)
    assert typed["types"] == {"N1": "I8", "N2": "IV*", "M1": "I8", "M2": "IV*"}


def test_canonical_stage_coefficients():
    stage = run_stage("canonical")
    coeffs = next(c for c in stage.evidence["checks"] if "coefficients" in c)
    assert coeffs["coefficients"] == {
        "E_inf'": "2",
        "E321": "4",
        "E322": "4",
        "E323": "4",
    }


def test_options_validation():
    with pytest.raises(ValueError, match="max_gens"):
        PipelineOptions(max_gens=0)
    with pytest.raises(ValueError, match="corrupt_pair"):
        PipelineOptions(corrupt_pair=("only-one",))
    with pytest.raises(ValueError, match="status"):
        StageResult("x", "maybe", "anchor", {})


# -- command line ---------------------------------------------------------------------


def test_cli_all_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["all", "--max-gens", "2", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[:1] == ["stage config: pass"]
    assert lines[-1] == "verdict: pass"
    blob = json.loads(out.read_text())
    assert blob["verdict"] == "pass"
    assert len(blob["stages"]) == 9


def test_cli_single_stage(capsys):
    assert main(["nonfg", "--max-gens", "3"]) == 0
    out = capsys.readouterr().out
    assert "stage nonfg: pass" in out
    assert "verdict: pass" in out


def test_cli_failure_exit_code(capsys):
    assert main(["config", "--corrupt-pair", "E2,C32"]) == 1
    out = capsys.readouterr().out
    assert "stage config: fail" in out
    assert "failed:" in out


def test_cli_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["all", "--corrupt-pair", "nocomma"]) == 2
    assert main(["all", "--max-gens", "0"]) == 2
    capsys.readouterr()


def test_cli_stage_list(capsys):
    assert main(["--stage-list"]) == 0
    assert capsys.readouterr().out.split() == list(EXPECTED_STAGES)


def test_cli_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
