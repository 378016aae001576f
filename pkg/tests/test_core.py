import math

import numpy as np
import pytest

from depmeas import (
    ColumnOverlap,
    DegenerateSample,
    DependenceResult,
    Method,
    NonFiniteEntry,
    ParseError,
    RowCountMismatch,
    Sample,
    Transform,
    load_csv,
    save_csv,
    validate,
)

from conftest import write_csv


class TestSample:
    def test_vector_inputs_become_column_matrices(self):
        s = Sample([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
        assert (s.n, s.p, s.q) == (3, 1, 1)
        assert s.x.shape == (3, 1)
        assert s.y.shape == (3, 1)

    def test_matrix_inputs_keep_their_widths(self, rng):
        s = Sample(rng.normal(size=(5, 2)), rng.normal(size=(5, 3)))
        assert (s.n, s.p, s.q) == (5, 2, 3)

    def test_blocks_are_read_only(self):
        s = Sample([1.0, 2.0], [3.0, 4.0])
        with pytest.raises(ValueError):
            s.x[0, 0] = 99.0

    def test_float64_conversion(self):
        s = Sample(np.array([1, 2, 3], dtype=np.int32), [4.0, 5.0, 6.0])
        assert s.x.dtype == np.float64


class TestValidate:
    def test_valid_sample_returned_unchanged(self):
        s = Sample([1.0, 2.0], [3.0, 4.0])
        assert validate(s) is s

    def test_nan_raises_nonfinite(self):
        s = Sample([1.0, math.nan], [3.0, 4.0])
        with pytest.raises(NonFiniteEntry):
            validate(s)

    def test_inf_raises_nonfinite(self):
        s = Sample([1.0, 2.0], [math.inf, 4.0])
        with pytest.raises(NonFiniteEntry):
            validate(s)

    def test_row_count_mismatch(self):
        with pytest.raises(RowCountMismatch):
            validate(Sample(np.zeros((3, 1)), np.zeros((4, 1))))

    def test_single_row_is_degenerate(self):
        with pytest.raises(DegenerateSample):
            validate(Sample(np.zeros((1, 1)), np.zeros((1, 1))))


class TestLoadCsv:
    def test_three_rows_no_header(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "1,2\n3,4\n5,6\n")
        s = load_csv(path, [0], [1])
        assert (s.n, s.p, s.q) == (3, 1, 1)
        assert s.x[:, 0].tolist() == [1.0, 3.0, 5.0]
        assert s.y[:, 0].tolist() == [2.0, 4.0, 6.0]

    def test_header_autodetected(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "a,b\n1,2\n3,4\n")
        s = load_csv(path, "a", "b")
        assert s.n == 2
        assert s.x[:, 0].tolist() == [1.0, 3.0]

    def test_index_selectors_work_with_header(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "a,b\n1,2\n3,4\n")
        s = load_csv(path, "0", "1")
        assert s.y[:, 0].tolist() == [2.0, 4.0]

    def test_comma_separated_multicolumn_selector(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "1,2,3\n4,5,6\n7,8,9\n")
        s = load_csv(path, "0,1", "2")
        assert (s.p, s.q) == (2, 1)

    def test_non_numeric_cell_raises_parse_error(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "1,2\n1,abc\n3,4\n")
        with pytest.raises(ParseError) as exc:
            load_csv(path, [0], [1])
        assert "abc" in str(exc.value)

    def test_single_data_row_is_degenerate(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "1,2\n")
        with pytest.raises(DegenerateSample):
            load_csv(path, [0], [1])

    def test_overlapping_selectors_rejected(self, tmp_path):
        path = write_csv(tmp_path / "f.csv", "1,2\n3,4\n")
        with pytest.raises(ColumnOverlap):
            load_csv(path, [0], [0])

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_csv(str(tmp_path / "nope.csv"), [0], [1])

    def test_unknown_header_name(self, tmp_path):
        from depmeas import DataError

        path = write_csv(tmp_path / "f.csv", "a,b\n1,2\n3,4\n")
        with pytest.raises(DataError):
            load_csv(path, "zzz", "b")


class TestRoundTrip:
    def test_save_then_load_is_exact(self, tmp_path, rng):
        s = Sample(rng.normal(size=(7, 2)) * 1e3, rng.normal(size=(7, 1)) * 1e-7)
        path = str(tmp_path / "rt.csv")
        save_csv(s, path)
        back = load_csv(path, [0, 1], [2])
        assert np.array_equal(back.x, s.x)
        assert np.array_equal(back.y, s.y)

    def test_univariate_header_names(self, tmp_path):
        s = Sample([1.0, 2.0], [3.0, 4.0])
        path = str(tmp_path / "uv.csv")
        save_csv(s, path)
        back = load_csv(path, "x", "y")
        assert np.array_equal(back.x, s.x)


class TestDependenceResult:
    def test_negative_zero_clamped(self):
        r = DependenceResult(Method.DCOV2, -1e-13, 1.0, Transform.RAW, 10)
        assert r.value == 0.0

    def test_dcor_capped_at_one(self):
        r = DependenceResult(Method.DCOR, 1.0 + 1e-13, 1.0, Transform.RAW, 10)
        assert r.value == 1.0

    def test_signed_methods_untouched(self):
        r = DependenceResult(Method.PEARSON, -0.5, 1.0, Transform.RAW, 10)
        assert r.value == -0.5
