"""Generators, containers, and the dense oracle."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import terngemm as tg
from terngemm.dense import DEFAULT_INT_RANGE, EXACT_FLOAT32_BOUND

from conftest import worked_example


class TestAsFraction:
    def test_accepts_string_float_fraction(self):
        assert tg.as_fraction("1/2") == Fraction(1, 2)
        assert tg.as_fraction(0.25) == Fraction(1, 4)
        assert tg.as_fraction(Fraction(3, 8)) == Fraction(3, 8)
        assert tg.as_fraction(1) == Fraction(1)

    @pytest.mark.parametrize("bad", [0, -1, 2, Fraction(9, 8), "0/3"])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(tg.ParameterError):
            tg.as_fraction(bad)


class TestContainers:
    def test_ternary_rejects_bad_entries(self):
        with pytest.raises(tg.ParameterError):
            tg.TernaryDense(np.array([[2, 0]], dtype=np.int8))
        with pytest.raises(tg.ParameterError):
            tg.TernaryDense(np.array([1, 0, -1], dtype=np.int8))

    def test_ternary_properties(self):
        w, _, _ = worked_example()
        assert (w.K, w.N, w.nnz) == (4, 2, 4)

    def test_dense_rejects_non_finite(self):
        with pytest.raises(tg.ParameterError):
            tg.DenseMatrix(np.array([[1.0, np.nan]], dtype=np.float32))
        with pytest.raises(tg.ParameterError):
            tg.DenseMatrix(np.array([[np.inf]], dtype=np.float32))

    def test_dense_coerces_to_float32_contiguous(self):
        m = tg.DenseMatrix(np.asfortranarray(np.ones((3, 4), dtype=np.float64)))
        assert m.values.dtype == np.float32
        assert m.values.flags.c_contiguous
        assert (m.rows, m.cols) == (3, 4)

    def test_bias_rejects_2d(self):
        with pytest.raises(tg.ParameterError):
            tg.BiasVector(np.zeros((2, 2), dtype=np.float32))


class TestGenTernary:
    def test_exact_column_density_and_balance(self):
        w = tg.gen_ternary(8, 3, "1/4", seed=0)
        v = w.values
        assert v.shape == (8, 3)
        for n in range(3):
            col = v[:, n]
            assert np.count_nonzero(col) == 2  # round(8/4)
            assert np.count_nonzero(col == 1) == 1
            assert np.count_nonzero(col == -1) == 1

    def test_ceil_floor_split_for_odd_counts(self):
        w = tg.gen_ternary(6, 5, "1/2", seed=1)  # 3 nonzeros: 2 pos, 1 neg
        for n in range(5):
            col = w.values[:, n]
            assert np.count_nonzero(col == 1) == 2
            assert np.count_nonzero(col == -1) == 1

    def test_deterministic_per_seed(self):
        a = tg.gen_ternary(32, 8, "1/2", seed=7)
        b = tg.gen_ternary(32, 8, "1/2", seed=7)
        c = tg.gen_ternary(32, 8, "1/2", seed=8)
        assert a == b
        assert a != c

    def test_full_density(self):
        w = tg.gen_ternary(10, 4, 1, seed=0)
        assert w.nnz == 40

    @pytest.mark.parametrize("K,N,s", [(0, 2, "1/2"), (2, 0, "1/2"), (4, 4, 0), (4, 4, "3/2")])
    def test_rejects_bad_parameters(self, K, N, s):
        with pytest.raises(tg.ParameterError):
            tg.gen_ternary(K, N, s, seed=0)

    @given(
        k=st.integers(4, 200),
        n=st.integers(1, 12),
        si=st.sampled_from(["1/2", "1/4", "1/8"]),
        seed=st.integers(0, 10_000),
    )
    def test_property_exact_density(self, k, n, si, seed):
        w = tg.gen_ternary(k, n, si, seed)
        nz = round(Fraction(si) * k)
        counts = np.count_nonzero(w.values, axis=0)
        assert (counts == nz).all()
        pos = np.count_nonzero(w.values == 1, axis=0)
        assert (pos == (nz + 1) // 2).all()


class TestGenInput:
    def test_integer_valued_in_range(self):
        x = tg.gen_input(5, 64, seed=3)
        v = x.values
        assert v.dtype == np.float32
        assert v.shape == (5, 64)
        assert (v == np.round(v)).all()
        assert (np.abs(v) <= DEFAULT_INT_RANGE).all()

    def test_exactness_bound_enforced(self):
        bad_k = EXACT_FLOAT32_BOUND // DEFAULT_INT_RANGE
        with pytest.raises(tg.ParameterError):
            tg.gen_input(1, bad_k, seed=0)

    def test_uniform_variant_in_unit_interval(self):
        x = tg.gen_input_uniform(4, 32, seed=5)
        assert (np.abs(x.values) <= 1.0).all()
        assert not (x.values == np.round(x.values)).all()

    def test_seed_list_accepted(self):
        a = tg.gen_input(2, 8, seed=[0, 3, 1])
        b = tg.gen_input(2, 8, seed=[0, 3, 1])
        assert np.array_equal(a.values, b.values)


class TestPrelu:
    def test_scalar(self):
        assert tg.prelu(2.0, 0.5) == 2.0
        assert tg.prelu(-1.0, 0.5) == -0.5
        assert tg.prelu(0.0, 0.5) == 0.0

    def test_array(self):
        v = np.array([-2.0, 0.0, 3.0], dtype=np.float32)
        out = tg.prelu(v, 0.25)
        assert np.array_equal(out, np.array([-0.5, 0.0, 3.0], dtype=np.float32))


class TestOracle:
    def test_worked_example(self):
        w, x, b = worked_example()
        y = tg.oracle_gemm(x, w, b)
        assert y.values.tolist() == [[12.0, 18.0]]

    def test_worked_example_with_prelu(self):
        w, x, _ = worked_example()
        b = tg.BiasVector(np.array([10.0, 0.0], dtype=np.float32))
        y = tg.oracle_gemm(x, w, b, alpha=0.5)
        assert y.values.tolist() == [[12.0, -1.0]]

    def test_dimension_mismatch(self):
        w, x, b = worked_example()
        with pytest.raises(tg.ParameterError):
            tg.oracle_gemm(tg.DenseMatrix(np.ones((1, 3), dtype=np.float32)), w, b)
        with pytest.raises(tg.ParameterError):
            tg.oracle_gemm(x, w, tg.BiasVector(np.zeros(3, dtype=np.float32)))

    def test_matches_manual_float64_computation(self):
        w = tg.gen_ternary(16, 4, "1/2", 0)
        x = tg.gen_input(3, 16, 1)
        b = tg.gen_bias(4, 2)
        y = tg.oracle_gemm(x, w, b)
        manual = (
            x.values.astype(np.float64) @ w.values.astype(np.float64)
            + b.values.astype(np.float64)
        ).astype(np.float32)
        assert np.array_equal(y.values, manual)
