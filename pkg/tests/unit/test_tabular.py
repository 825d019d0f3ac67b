"""Tests for the tabular data model, splits and random streams."""

from pathlib import Path

import numpy as np
import pytest

from wellspec.errors import InputError
from wellspec.tabular.dataset import Dataset, load_csv, read_header, write_csv
from wellspec.tabular.rng import RngStream, Stream, derive_rng
from wellspec.tabular.splits import make_split


class TestRngStream:
    """Test seed-path random streams."""

    def test_same_path_same_draws(self):
        a = derive_rng(99, (1, 2)).generator().random(100)
        b = derive_rng(99, (1, 2)).generator().random(100)
        np.testing.assert_array_equal(a, b)

    def test_sibling_paths_differ(self):
        a = derive_rng(99, (1,)).generator().random(10)
        b = derive_rng(99, (2,)).generator().random(10)
        assert not np.array_equal(a, b)

    def test_child_extends_path(self):
        stream = derive_rng(5, (Stream.SPLIT_RUN,)).child(3, 1)
        assert stream.path == (1, 3, 1)
        np.testing.assert_array_equal(
            stream.generator().random(5), derive_rng(5, (1, 3, 1)).generator().random(5)
        )

    def test_sibling_streams_uncorrelated(self):
        root = derive_rng(2024)
        a = root.child(0).generator().standard_normal(10_000)
        b = root.child(1).generator().standard_normal(10_000)
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.05

    def test_rejects_invalid_seed(self):
        with pytest.raises(InputError):
            RngStream(-1)
        with pytest.raises(InputError):
            RngStream(2**64)

    def test_rejects_negative_label(self):
        with pytest.raises(InputError):
            derive_rng(1, (0, -2))


class TestMakeSplit:
    """Test half-split planning."""

    def test_sizes_and_cover(self):
        plan = make_split(5, seed=1, b=0)
        assert len(plan.half_a) == 2
        assert len(plan.half_b) == 3
        assert set(plan.half_a).isdisjoint(plan.half_b)
        assert sorted(np.concatenate([plan.half_a, plan.half_b])) == [0, 1, 2, 3, 4]

    def test_deterministic(self):
        a = make_split(100, seed=7, b=3)
        b = make_split(100, seed=7, b=3)
        np.testing.assert_array_equal(a.half_a, b.half_a)
        np.testing.assert_array_equal(a.half_b, b.half_b)

    def test_orientation(self):
        plan = make_split(10, seed=0, b=1)
        fit, evaluate = plan.oriented(swapped=True)
        np.testing.assert_array_equal(fit, plan.half_b)
        np.testing.assert_array_equal(evaluate, plan.half_a)

    def test_uniform_membership(self):
        hits = np.zeros(10)
        for seed in range(1000):
            hits[make_split(10, seed=seed, b=0).half_a] += 1
        assert np.all(np.abs(hits / 1000 - 0.5) <= 0.05)

    def test_halves_are_read_only(self):
        plan = make_split(8, seed=0, b=0)
        with pytest.raises(ValueError):
            plan.half_a[0] = 7

    def test_too_few_rows(self):
        with pytest.raises(InputError):
            make_split(3, seed=0, b=0)


class TestDataset:
    """Test the immutable dataset."""

    def test_shapes_and_names(self):
        ds = Dataset(np.arange(6.0).reshape(3, 2), [1.0, 2.0, 3.0], ("a", "b"), "y")
        assert ds.n == 3
        assert ds.p == 2
        np.testing.assert_array_equal(ds.column("b"), [1.0, 3.0, 5.0])
        np.testing.assert_array_equal(ds.column("y"), [1.0, 2.0, 3.0])

    def test_arrays_are_frozen_copies(self):
        x = np.zeros((4, 1))
        ds = Dataset(x, np.zeros(4), ("a",), "y")
        x[0, 0] = 5.0
        assert ds.x[0, 0] == 0.0
        with pytest.raises(ValueError):
            ds.y[0] = 1.0

    def test_rejects_non_finite(self):
        with pytest.raises(InputError):
            Dataset([[np.nan]], [1.0], ("a",), "y")

    def test_rejects_duplicate_names(self):
        with pytest.raises(InputError):
            Dataset(np.zeros((2, 2)), np.zeros(2), ("a", "a"), "y")

    def test_select_and_take(self, linear_dataset):
        picked = linear_dataset.select(["x2"])
        assert picked.predictor_names == ("x2",)
        np.testing.assert_array_equal(picked.x[:, 0], linear_dataset.x[:, 1])
        head = linear_dataset.take([0, 1, 2])
        assert head.n == 3

    def test_with_target_swaps_columns(self, linear_dataset):
        swapped = linear_dataset.with_target("x1")
        assert swapped.target_name == "x1"
        assert swapped.predictor_names == ("x2", "y")
        np.testing.assert_array_equal(swapped.y, linear_dataset.x[:, 0])
        np.testing.assert_array_equal(swapped.x[:, 1], linear_dataset.y)

    def test_unknown_column(self, linear_dataset):
        with pytest.raises(InputError, match="unknown"):
            linear_dataset.column("zz")


class TestLoadCsv:
    """Test CSV ingestion."""

    def _write(self, tmp_path: Path, text: str) -> Path:
        path = tmp_path / "data.csv"
        path.write_text(text)
        return path

    def test_three_rows(self, tmp_path):
        path = self._write(tmp_path, "x1,x2,y\n1,2,3\n4,5,6\n7,8,9\n")
        ds = load_csv(path, "y", min_rows=1)
        assert ds.p == 2
        assert ds.n == 3
        assert ds.predictor_names == ("x1", "x2")
        np.testing.assert_array_equal(ds.y, [3.0, 6.0, 9.0])

    def test_default_minimum_rows(self, tmp_path):
        path = self._write(tmp_path, "x1,x2,y\n1,2,3\n4,5,6\n7,8,9\n")
        with pytest.raises(InputError, match="at least 4"):
            load_csv(path, "y")

    def test_target_only(self, tmp_path):
        path = self._write(tmp_path, "y\n1\n2\n3\n4\n")
        with pytest.raises(InputError, match="no predictor columns"):
            load_csv(path, "y")

    def test_nan_cell_is_named(self, tmp_path):
        path = self._write(tmp_path, "x1,y\n1,2\n3,NaN\n5,6\n7,8\n")
        with pytest.raises(InputError) as excinfo:
            load_csv(path, "y")
        message = str(excinfo.value)
        assert "line 3" in message
        assert "'y'" in message

    def test_missing_target(self, tmp_path):
        path = self._write(tmp_path, "x1,x2\n1,2\n3,4\n5,6\n7,8\n")
        with pytest.raises(InputError, match="'y'"):
            load_csv(path, "y")

    def test_duplicate_headers(self, tmp_path):
        path = self._write(tmp_path, "a,a,y\n1,2,3\n1,2,3\n1,2,3\n1,2,3\n")
        with pytest.raises(InputError, match="duplicate"):
            load_csv(path, "y")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="not found"):
            load_csv(tmp_path / "absent.csv", "y")

    def test_read_header(self, tmp_path):
        path = self._write(tmp_path, " a , b,y\n1,2,3\n")
        assert read_header(path) == ["a", "b", "y"]

    def test_write_then_load_is_exact(self, tmp_path):
        generator = np.random.default_rng(0)
        ds = Dataset(generator.normal(size=(20, 3)), generator.normal(size=20), ("a", "b", "c"), "t")
        path = tmp_path / "out.csv"
        write_csv(ds, path)
        loaded = load_csv(path, "t")
        np.testing.assert_array_equal(loaded.x, ds.x)
        np.testing.assert_array_equal(loaded.y, ds.y)
        assert loaded.predictor_names == ds.predictor_names
