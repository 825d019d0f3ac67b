"""Integration tests for the command-line interface."""

import io
import json
import logging
import os
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from wellspec import __version__
from wellspec.cli import cli

FAST = ["-B", "2", "--perms", "19", "--seed", "1"]


@pytest.fixture
def runner():
    yield CliRunner()
    # handlers bound to the runner streams outlive the invocation
    logging.getLogger().handlers.clear()


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-level", "ERROR", *args])


def write_csv(path, columns):
    pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g")
    return path


class TestAnalyze:
    """Test the analyze command."""

    def test_report_schema(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", *FAST)
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["method"] == "multisplit"
        assert report["predictors"] == ["x1", "x2"]
        assert report["trials"] == 4
        assert len(report["split_pvalues"]) == 4
        assert 0 < report["p0"] <= 1
        assert report["g"] == "absolute"
        assert report["config"]["splits"] == 2
        assert report["config"]["target"] == "y"
        assert set(report["w_hat_names"]) <= {"x1", "x2"}
        assert "created_at" in report

    def test_missing_target(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "nope", *FAST)
        assert result.exit_code == 2
        assert "nope" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = invoke(runner, "analyze", "-i", str(tmp_path / "absent.csv"), "-t", "y")
        assert result.exit_code == 2
        assert "not found" in result.output

    def test_out_of_range_level(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", "--alpha", "1.5")
        assert result.exit_code == 2

    def test_jobs_do_not_change_the_report(self, runner, toy_csv):
        reports = []
        for jobs in ("1", "4", "8"):
            result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", "-j", jobs, *FAST)
            assert result.exit_code == 0, result.output
            report = json.loads(result.stdout)
            report.pop("created_at")
            reports.append(report)
        assert reports[0] == reports[1] == reports[2]

    def test_out_and_verbose(self, runner, toy_csv, tmp_path):
        out = tmp_path / "report.json"
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", "-o", str(out), "-v", *FAST)
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        assert len(report["per_split"]) == 4

    def test_single_split(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", "--single-split", *FAST)
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["method"] == "single_split"
        assert report["trials"] == 1

    def test_lsnm_mode_uses_identity(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y", "--mode", "lsnm", *FAST)
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["g"] == "identity"

    @patch.dict(os.environ, {"WELLSPEC_SPLITS": "3", "WELLSPEC_PERMS": "19"})
    def test_environment_defaults(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y")
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["B"] == 3
        assert report["trials"] == 6

    @patch.dict(os.environ, {"WELLSPEC_SPLITS": "many"})
    def test_invalid_environment(self, runner, toy_csv):
        result = invoke(runner, "analyze", "-i", str(toy_csv), "-t", "y")
        assert result.exit_code == 2
        assert "WELLSPEC" in result.output


class TestSimulate:
    """Test the simulate command."""

    def test_fig2_single_run(self, runner):
        result = invoke(runner, "simulate", "-s", "fig2", "--n", "100", "--runs", "1", *FAST)
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(io.StringIO(result.stdout))
        assert frame.columns[0] == "row_type"
        assert (frame["row_type"] == "run").sum() == 10
        assert (frame["row_type"] == "summary").sum() == 1
        runs = frame[frame["row_type"] == "run"]
        assert set(runs["observed"]) >= {"X1|X2|X3", "X3|X4|X5"}

    def test_custom_cycle(self, runner, tmp_path):
        spec = {
            "nodes": [
                {"name": "A", "parents": {"B": {}}},
                {"name": "B", "parents": {"A": {}}},
                {"name": "Y"},
            ],
            "observed": ["A"],
            "target": "Y",
        }
        path = tmp_path / "cycle.json"
        path.write_text(json.dumps(spec))
        result = invoke(runner, "simulate", "-s", f"custom:{path}", "--runs", "1")
        assert result.exit_code == 2
        assert "not acyclic" in result.output

    def test_custom_spec_to_file(self, runner, tmp_path):
        spec = {
            "nodes": [{"name": "X"}, {"name": "Y", "parents": {"X": {}}, "noise_variance": 0.25}],
            "observed": ["X"],
            "target": "Y",
        }
        path = tmp_path / "chain.json"
        path.write_text(json.dumps(spec))
        out = tmp_path / "metrics.csv"
        result = invoke(
            runner, "simulate", "-s", f"custom:{path}", "--n", "60", "--runs", "2", "-o", str(out), *FAST
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert (frame["row_type"] == "run").sum() == 2
        assert (frame.loc[frame["row_type"] == "run", "wtrue_1"] == 1).all()

    def test_unknown_suite(self, runner):
        result = invoke(runner, "simulate", "-s", "fig9")
        assert result.exit_code == 2
        assert "unknown suite" in result.output


class TestCodec:
    """Test the codec command."""

    def test_hand_value(self, runner, tmp_path):
        path = write_csv(tmp_path / "hand.csv", {"x": [0.0, 1.0, 3.0], "y": [0.0, 1.0, 3.0]})
        result = invoke(runner, "codec", "-i", str(path), "-r", "y")
        assert result.exit_code == 0, result.output
        output = json.loads(result.stdout)
        assert output["t_n_exact"] == "-1/2"
        assert output["q_n_exact"] == "-2/27"
        assert output["normalizer"] == "unconditional"
        assert output["predictors"] == ["x"]

    def test_constant_response(self, runner, tmp_path):
        path = write_csv(tmp_path / "flat.csv", {"x": [0.0, 1.0, 3.0], "y": [2.0, 2.0, 2.0]})
        result = invoke(runner, "codec", "-i", str(path), "-r", "y")
        assert result.exit_code == 0, result.output
        output = json.loads(result.stdout)
        assert output["undefined"] is True
        assert output["t_n"] is None

    def test_foci(self, runner, tmp_path):
        x = np.random.default_rng(0).normal(size=(200, 3))
        path = write_csv(tmp_path / "foci.csv", {"a": x[:, 0], "b": x[:, 1], "c": x[:, 2], "y": x[:, 1]})
        result = invoke(runner, "codec", "-i", str(path), "-r", "y", "--foci")
        assert result.exit_code == 0, result.output
        output = json.loads(result.stdout)
        assert output["selected"][0] == 2
        assert output["selected_names"][0] == "b"
        assert len(output["q_path"]) == len(output["selected"])

    def test_predictor_subset(self, runner, toy_csv):
        result = invoke(runner, "codec", "-i", str(toy_csv), "-r", "y", "-p", "x2")
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)["predictors"] == ["x2"]


class TestOtherCommands:
    """Test screen, validate, list-regressors and version."""

    def test_screen(self, runner, tmp_path):
        x = np.random.default_rng(1).uniform(0, 1, 200)
        path = write_csv(tmp_path / "screen.csv", {"x": x, "y": 2 * x + 1})
        result = invoke(runner, "screen", "-i", str(path))
        assert result.exit_code == 0, result.output
        output = json.loads(result.stdout)
        assert output["target"] == "x"
        assert output["predictors"] == ["y"]

    def test_validate(self, runner, toy_csv, tmp_path):
        generator = np.random.default_rng(2)
        x1 = generator.uniform(2, 4, 100)
        env = write_csv(
            tmp_path / "env.csv",
            {"x1": x1, "x2": generator.uniform(-1, 1, 100), "y": x1 + generator.normal(0, 0.3, 100)},
        )
        result = invoke(runner, "validate", "--obs", str(toy_csv), "-t", "y", "--interv", f"x1={env}")
        assert result.exit_code == 0, result.output
        output = json.loads(result.stdout)
        assert output["target"] == "y"
        rows = {row["predictor"]: row for row in output["predictors"]}
        assert rows["x1"]["p_predictor_to_target"] < 1e-6
        assert rows["x2"]["relative_bias"] is None

    def test_validate_bad_intervention(self, runner, toy_csv):
        result = invoke(runner, "validate", "--obs", str(toy_csv), "-t", "y", "--interv", "x1")
        assert result.exit_code == 2
        assert "COLUMN=PATH" in result.output

    def test_list_regressors(self, runner):
        result = invoke(runner, "list-regressors")
        assert result.exit_code == 0
        assert "* boosted_trees" in result.output
        assert "knn" in result.output
        assert "Default regressor: boosted_trees" in result.output

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output
