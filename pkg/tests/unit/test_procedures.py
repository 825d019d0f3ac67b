"""Tests for the selection procedures."""

from fractions import Fraction

import numpy as np
import pytest

from wellspec.config import Mode
from wellspec.errors import InputError
from wellspec.procedures.baseline import single_split_baseline
from wellspec.procedures.insample import alg1_insample
from wellspec.procedures.multisplit import (
    WellSpecReport,
    alg3_multisplit,
    run_multisplit,
    select_well_specified,
    sweep_alpha_tilde,
)
from wellspec.procedures.screening import screen_target
from wellspec.procedures.split import alg2_split
from wellspec.procedures.validation import validate_interventions
from wellspec.rankdep.transforms import TransformMode
from wellspec.tabular.dataset import Dataset
from wellspec.tabular.rng import derive_rng
from wellspec.tabular.splits import make_split


def make_report(counts, p0, trials, method="multisplit"):
    return WellSpecReport(
        method=method,
        p0=p0,
        alpha=0.05,
        alpha_tilde=0.01,
        B=trials // 2,
        mode="anm",
        g="absolute",
        predictors=[f"x{j + 1}" for j in range(len(counts))],
        counts=list(counts),
        n_bar=0.0,
        n_bar_exact="0",
        n_min=0,
        proportion_pvalues={},
        w_hat=[3],
        w_hat_names=["x3"],
        split_pvalues=[],
        trials=trials,
        config={},
    )


class TestSelectWellSpecified:
    """Test the counting and proportion-test arithmetic."""

    def test_rejected_global_null(self):
        selection = select_well_specified([22, 19, 41], p0=1e-4, alpha=0.05, alpha_tilde=0.01, trials=50)
        assert selection.w_hat == (1, 2)
        assert selection.n_bar == Fraction(82, 3)
        assert selection.n_min == 41
        assert set(selection.proportion_pvalues) == {1, 2}
        assert selection.global_rejected

    def test_accepted_global_null(self):
        selection = select_well_specified([22, 19, 41], p0=0.5, alpha=0.05, alpha_tilde=0.01, trials=50)
        assert selection.w_hat == (1, 2, 3)
        assert not selection.global_rejected

    def test_equal_counts(self):
        selection = select_well_specified([5, 5, 5], p0=1e-4, alpha=0.05, alpha_tilde=0.01, trials=50)
        assert selection.w_hat == ()
        assert selection.n_min == 5
        assert selection.proportion_pvalues == {}

    def test_level_properties(self):
        generator = np.random.default_rng(0)
        for _ in range(200):
            counts = [int(c) for c in generator.integers(0, 21, size=int(generator.integers(1, 6)))]
            p0 = float(generator.uniform())
            strict = select_well_specified(counts, p0, 0.05, 0.001, trials=20)
            loose = select_well_specified(counts, p0, 0.05, 0.05, trials=20)
            assert set(strict.w_hat) <= set(loose.w_hat)
            if loose.global_rejected:
                assert all(counts[j - 1] < loose.n_bar for j in loose.w_hat)
            lower = select_well_specified(counts, p0, 0.01, 0.05, trials=20)
            assert lower.w_hat in (loose.w_hat, tuple(range(1, len(counts) + 1)))

    def test_invalid_counts(self):
        with pytest.raises(InputError):
            select_well_specified([], 0.1, 0.05, 0.01, 10)
        with pytest.raises(InputError):
            select_well_specified([11, 2], 0.1, 0.05, 0.01, 10)


class TestSweepAlphaTilde:
    """Test recomputing the set at several proportion-test levels."""

    def test_levels(self):
        report = make_report([22, 19, 41], p0=1e-4, trials=50)
        sweep = sweep_alpha_tilde(report, [1e-6, 3e-5, 1e-3])
        assert sweep == {1e-6: [], 3e-5: [2], 1e-3: [1, 2]}

    def test_single_split_reports_are_unchanged(self):
        report = make_report([1, 0, 0], p0=1e-4, trials=1, method="single_split")
        assert sweep_alpha_tilde(report, [0.01, 0.1]) == {0.01: [3], 0.1: [3]}


class TestAlg2Split:
    """Test one oriented split."""

    def test_fields(self, linear_dataset, fast_config):
        plan = make_split(linear_dataset.n, seed=1, b=0)
        run = alg2_split(
            linear_dataset, fast_config.regressor, TransformMode.ABSOLUTE, plan, testing=fast_config.testing
        )
        assert run.b == 0
        assert not run.swapped
        assert 1 / 20 <= run.p_b <= 1.0
        assert set(run.s_hat_b) <= {1, 2}
        assert list(run.s_hat_b) == sorted(run.selection_order)
        np.testing.assert_array_equal(run.eval_index, plan.half_b)
        assert run.eps_hat.shape == (60,)
        assert run.to_dict()["s_hat_b"] == list(run.s_hat_b)

    def test_swapped_uses_other_half(self, linear_dataset, fast_config):
        plan = make_split(linear_dataset.n, seed=1, b=0)
        run = alg2_split(
            linear_dataset,
            fast_config.regressor,
            TransformMode.ABSOLUTE,
            plan,
            swapped=True,
            testing=fast_config.testing,
        )
        np.testing.assert_array_equal(run.eval_index, plan.half_a)

    def test_deterministic(self, linear_dataset, fast_config):
        plan = make_split(linear_dataset.n, seed=2, b=1)
        runs = [
            alg2_split(
                linear_dataset,
                fast_config.regressor,
                TransformMode.IDENTITY,
                plan,
                mode=Mode.LSNM,
                testing=fast_config.testing,
            )
            for _ in range(2)
        ]
        assert runs[0].p_b == runs[1].p_b
        assert runs[0].selection_order == runs[1].selection_order
        np.testing.assert_array_equal(runs[0].eps_hat, runs[1].eps_hat)

    def test_plan_mismatch(self, linear_dataset, fast_config):
        with pytest.raises(InputError):
            alg2_split(linear_dataset, fast_config.regressor, TransformMode.ABSOLUTE, make_split(50, 0, 0))


class TestAlg1Insample:
    """Test in-sample selection."""

    def test_selection_indices(self, linear_dataset, fast_config, rng):
        selection = alg1_insample(linear_dataset, fast_config.regressor, TransformMode.ABSOLUTE, rng)
        assert set(selection.selected) <= {0, 1}
        assert len(selection.q_path) == len(selection.selected)

    def test_deterministic(self, linear_dataset, fast_config):
        a = alg1_insample(linear_dataset, fast_config.regressor, TransformMode.ABSOLUTE, derive_rng(4))
        b = alg1_insample(linear_dataset, fast_config.regressor, TransformMode.ABSOLUTE, derive_rng(4))
        assert a == b

    def test_too_few_rows(self, linear_dataset, fast_config, rng):
        with pytest.raises(InputError):
            alg1_insample(linear_dataset.take(range(7)), fast_config.regressor, TransformMode.ABSOLUTE, rng)


class TestMultisplit:
    """Test the multisplit procedure."""

    def test_report_shape(self, linear_dataset, fast_config):
        outcome = run_multisplit(linear_dataset, fast_config, verbose=True)
        report = outcome.report
        assert len(outcome.runs) == 4
        assert [(run.b, run.swapped) for run in outcome.runs] == [(0, False), (1, False), (0, True), (1, True)]
        assert report.trials == 4
        assert report.B == 2
        assert report.predictors == ["x1", "x2"]
        assert len(report.counts) == 2
        assert all(0 <= c <= 4 for c in report.counts)
        assert len(report.split_pvalues) == 4
        assert len(report.per_split) == 4
        assert 0 < report.p0 <= 1
        assert report.w_hat_names == [report.predictors[j - 1] for j in report.w_hat]
        assert report.config["splits"] == 2

    @pytest.mark.parametrize("jobs", [4, 8])
    def test_jobs_do_not_change_the_report(self, linear_dataset, fast_config, jobs):
        serial = alg3_multisplit(linear_dataset, fast_config, jobs=1)
        parallel = alg3_multisplit(linear_dataset, fast_config, jobs=jobs)
        assert serial.to_json(include_timestamp=False) == parallel.to_json(include_timestamp=False)

    def test_seed_changes_splits(self, linear_dataset, fast_config):
        other = fast_config.model_copy(update={"master_seed": 4})
        a = alg3_multisplit(linear_dataset, fast_config)
        b = alg3_multisplit(linear_dataset, other)
        assert a.split_pvalues != b.split_pvalues or a.counts != b.counts

    def test_too_few_rows(self, linear_dataset, fast_config):
        with pytest.raises(InputError):
            run_multisplit(linear_dataset.take(range(7)), fast_config)


class TestSingleSplitBaseline:
    """Test the single-split comparison arm."""

    def test_report(self, linear_dataset, fast_config):
        report = single_split_baseline(linear_dataset, fast_config)
        assert report.method == "single_split"
        assert report.B == 1
        assert report.trials == 1
        assert report.split_pvalues == [report.p0]
        selected = {j for j, c in enumerate(report.counts, start=1) if c}
        if report.p0 <= fast_config.alpha:
            assert set(report.w_hat) == {1, 2} - selected
        else:
            assert report.w_hat == [1, 2]


class TestScreening:
    """Test target screening."""

    def test_mutual_blankets(self):
        x = np.random.default_rng(0).uniform(0, 1, 200)
        data = Dataset(x[:, None], 2 * x + 1, ("x",), "y")
        result = screen_target(data, derive_rng(1))
        assert result.target == "x"
        assert result.predictors == ("y",)
        assert result.agreement == {"x": 1.0, "y": 1.0}

    def test_positive_only(self):
        generator = np.random.default_rng(1)
        x = generator.uniform(1, 2, 100)
        data = Dataset(np.column_stack([x, -x]), x + 1, ("a", "b"), "c")
        result = screen_target(data, derive_rng(2), positive_only=True)
        assert result.columns == ("a", "c")
        assert "b" not in result.agreement

    def test_needs_two_columns(self):
        x = np.random.default_rng(2).uniform(1, 2, 50)
        data = Dataset(-x[:, None], x, ("a",), "b")
        with pytest.raises(InputError):
            screen_target(data, derive_rng(3), positive_only=True)


class TestValidateInterventions:
    """Test checks against knock-down environments."""

    @pytest.fixture
    def environments(self, linear_dataset):
        generator = np.random.default_rng(9)
        x1 = generator.uniform(2, 4, 120)
        x2 = generator.uniform(-1, 1, 120)
        y = x1 + generator.normal(0, 0.5, 120)
        return {"x1": Dataset(np.column_stack([x1, x2]), y, ("x1", "x2"), "y")}

    def test_knock_down_shifts_target(self, linear_dataset, fast_config, environments, rng):
        result = validate_interventions(linear_dataset, environments, fast_config.regressor, rng)
        rows = {row.predictor: row for row in result.predictors}
        assert result.target == "y"
        assert rows["x1"].p_predictor_to_target < 1e-6
        assert rows["x1"].p_target_to_predictor is None
        assert rows["x1"].relative_bias is not None and rows["x1"].relative_bias >= 0
        assert rows["x2"].p_predictor_to_target is None
        assert rows["x2"].relative_bias is None
        assert result.to_dict()["predictors"][0]["predictor"] == "x1"

    def test_unknown_environment(self, linear_dataset, fast_config, environments, rng):
        with pytest.raises(InputError, match="unknown"):
            validate_interventions(linear_dataset, {"z": environments["x1"]}, fast_config.regressor, rng)

    def test_schema_mismatch(self, linear_dataset, fast_config, rng):
        env = Dataset(np.zeros((10, 1)), np.zeros(10), ("x1",), "y")
        with pytest.raises(InputError, match="columns"):
            validate_interventions(linear_dataset, {"x1": env}, fast_config.regressor, rng)
