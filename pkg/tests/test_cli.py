from __future__ import annotations

import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from prymlab.report_cli import PreconditionError, RunConfig, jsonable, main, run_pipeline

QUARTIC_STAGES = {"curve", "bitangents", "flexes", "plucker", "config", "strata"}


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner, args, tmp_path, name="out.json"):
    path = tmp_path / name
    result = runner.invoke(main, [*args, "--json", str(path)])
    doc = json.loads(path.read_text()) if path.exists() else None
    return result, doc


def test_run_config_validation():
    with pytest.raises(PreconditionError):
        RunConfig(mode="everything")
    with pytest.raises(PreconditionError):
        RunConfig(seed=-1)
    assert len(RunConfig().primes) == 2


def test_rationals_serialize_as_strings():
    assert jsonable({"x": Fraction(-3, 81)}) == {"x": {"num": "-1", "den": "27"}}


def test_prym_only_runs_no_quartic_stage(runner, tmp_path):
    result, doc = invoke(runner, ["run", "--mode", "prym-only", "--seed", "4"], tmp_path)
    assert result.exit_code == 0, result.output
    assert doc["schema_version"] == 1 and doc["passed"]
    assert not QUARTIC_STAGES & set(doc["stage_log"])
    assert doc["report"]["glue-constants"]["horizontal"] == {"num": "1", "den": "81"}


def test_reports_are_deterministic(runner, tmp_path):
    _, a = invoke(runner, ["run", "--mode", "prym-only", "--seed", "9"], tmp_path, "a.json")
    _, b = invoke(runner, ["run", "--mode", "prym-only", "--seed", "9"], tmp_path, "b.json")
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b


def test_local_only(runner, tmp_path):
    result, doc = invoke(runner, ["run", "--mode", "local-only"], tmp_path)
    assert result.exit_code == 0
    assert doc["stage_log"] == ["local-model"]
    assert doc["report"]["local-model"]["variety_degree"] == 8


def test_euler_command(runner, tmp_path):
    result, doc = invoke(runner, ["euler", "--seed", "42"], tmp_path)
    assert result.exit_code == 0, result.output
    assert doc["report"]["euler"]["total"] == 268
    assert doc["report"]["config"]["resamples"] >= 0


def test_curve_file(runner, tmp_path):
    curve = tmp_path / "fermat.txt"
    curve.write_text("# Fermat quartic\nX^4 + Y^4 + Z^4\n")
    result, doc = invoke(runner, ["flexes", "--curve", str(curve)], tmp_path)
    assert result.exit_code == 0, result.output
    assert doc["report"]["flexes"]["multiplicities"] == {"2": 12}


@pytest.mark.parametrize("text", ["X^4 + Y^4 +", "X^4 + Y^4", "X^3 + Y^3 + Z^3"])
def test_bad_curves_exit_2(runner, tmp_path, text):
    curve = tmp_path / "c.txt"
    curve.write_text(text)
    result = runner.invoke(main, ["bitangents", "--curve", str(curve)])
    assert result.exit_code == 2


def test_missing_curve_file_exit_2(runner, tmp_path):
    assert runner.invoke(main, ["bitangents", "--curve", str(tmp_path / "none.txt")]).exit_code == 2


def test_stability_command(runner):
    result = runner.invoke(main, ["stability", "--k", "3", "--s", "4"])
    assert result.exit_code == 0
    assert result.output.split("\n")[:4] == ["(0, 3) stable", "(1, 2) stable", "(2, 1) stable", "(3, 0) stable"]


def test_prym_fiber_and_glue_commands(runner):
    result = runner.invoke(main, ["prym-fiber", "--case", "vi"])
    assert result.exit_code == 0 and "total chi = 1" in result.output
    result = runner.invoke(main, ["glue-constants", "--nodes", "1,-1,2,-2"])
    assert result.exit_code == 0 and "horizontal = 1/81" in result.output
    assert runner.invoke(main, ["glue-constants", "--nodes", "1,2,3,4"]).exit_code == 2


def test_json_to_stdout(runner):
    result = runner.invoke(main, ["prym-fiber", "--case", "iv", "--json", "-"])
    doc = json.loads(result.output)
    assert doc["report"]["prym-fiber"]["euler"] == 4


def test_pipeline_api():
    pipe = run_pipeline(RunConfig(mode="prym-only"))
    assert all(pipe.verdicts.values())
    assert pipe.log == ["stability", "involutions", "prym-fibers", "glue-constants"]
