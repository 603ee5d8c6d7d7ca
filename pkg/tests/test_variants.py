"""Derived storage formats: frozen encodings and round-trip properties."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import terngemm as tg
from terngemm.variants import CODE_COUNT, PACK_WIDTH, resolve_block_size

from conftest import random_ternary, worked_example


class TestBlocked:
    def test_frozen_two_block_example(self):
        w, _, _ = worked_example()
        t = tg.blocked_from_dense(w, B=2)
        assert t.num_blocks == 2
        # block 0 rows {0,1}: col0 has +1 at 0; col1 has -1 at 1
        # block 1 rows {2,3}: col0 has -1 at 2 and +1 at 3
        assert t.row_index_pos.tolist() == [0, 3]
        assert t.row_index_neg.tolist() == [1, 2]
        assert t.col_start_pos.tolist() == [[0, 1, 1], [1, 2, 2]]
        assert t.col_start_neg.tolist() == [[0, 0, 1], [1, 2, 2]]

    def test_global_row_indices(self):
        w = tg.gen_ternary(64, 8, "1/2", seed=2)
        t = tg.blocked_from_dense(w, B=16)
        assert t.row_index_pos.max() >= 16  # indices are not block-local
        assert t.to_dense() == w

    def test_default_block_size(self):
        assert resolve_block_size(None, 100) == 100
        assert resolve_block_size(None, 10_000) == 4096
        assert resolve_block_size(7, 10_000) == 7
        w = tg.gen_ternary(32, 4, "1/2", seed=0)
        assert tg.blocked_from_dense(w).B == 32

    @given(
        k=st.integers(1, 80),
        n=st.integers(1, 12),
        b=st.integers(1, 90),
        seed=st.integers(0, 5_000),
    )
    def test_round_trip(self, k, n, b, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        assert tg.blocked_from_dense(w, B=b).to_dense() == w


class TestInterleaved:
    def test_frozen_g1_example(self):
        w, _, _ = worked_example()
        t = tg.interleaved_from_dense(w, g=1)
        # col0: pos {0,3}, neg {2} -> one full pair interleaved, +1 leftover
        # col1: only -1 at row 1 -> everything is remainder
        assert t.col_segment_ptr.tolist() == [0, 2, 3, 3, 3, 3, 4]
        assert t.indices.tolist() == [0, 2, 3, 1]

    def test_run_structure_g4(self):
        w = tg.gen_ternary(256, 4, "1/2", seed=5)
        t = tg.interleaved_from_dense(w, g=4)
        ptr = t.col_segment_ptr
        for n in range(t.N):
            inter = int(ptr[3 * n + 1]) - int(ptr[3 * n])
            assert inter % (2 * 4) == 0  # whole pos+neg run pairs only
        assert t.to_dense() == w

    def test_default_group_is_four(self):
        w = tg.gen_ternary(16, 4, "1/2", seed=0)
        assert tg.interleaved_from_dense(w).g == 4

    @given(
        k=st.integers(1, 80),
        n=st.integers(1, 12),
        g=st.integers(1, 8),
        seed=st.integers(0, 5_000),
    )
    def test_round_trip(self, k, n, g, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        assert tg.interleaved_from_dense(w, g=g).to_dense() == w


class TestInterleavedBlocked:
    @given(
        k=st.integers(1, 80),
        n=st.integers(1, 12),
        b=st.integers(1, 90),
        g=st.integers(1, 6),
        seed=st.integers(0, 5_000),
    )
    def test_round_trip(self, k, n, b, g, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        t = tg.interleaved_blocked_from_dense(w, B=b, g=g)
        assert t.to_dense() == w
        assert t.col_segment_ptr.shape == (3 * t.num_blocks * n + 1,)

    def test_defaults(self):
        w = tg.gen_ternary(32, 4, "1/2", seed=0)
        t = tg.interleaved_blocked_from_dense(w)
        assert (t.B, t.g, t.symmetric_groups) == (32, 2, False)

    @given(
        k=st.integers(1, 64),
        ng=st.integers(1, 3),
        b=st.integers(1, 70),
        g=st.integers(1, 4),
        seed=st.integers(0, 5_000),
    )
    def test_symmetric_round_trip(self, k, ng, b, g, seed):
        n = 4 * ng
        w = random_ternary(np.random.default_rng(seed), k, n)
        t = tg.interleaved_blocked_from_dense(w, B=b, g=g, symmetric_cols=True)
        assert t.symmetric_groups
        assert t.to_dense() == w
        assert t.nnz == w.nnz  # dummies excluded

    def test_symmetric_groups_have_equal_interleaved_segments(self):
        w = tg.gen_ternary(48, 8, "1/2", seed=9)
        t = tg.interleaved_blocked_from_dense(w, B=16, g=2, symmetric_cols=True)
        ptr = t.col_segment_ptr
        for blk in range(t.num_blocks):
            for grp in range(t.N // 4):
                cells = [blk * t.N + 4 * grp + j for j in range(4)]
                lens = [int(ptr[3 * c + 1]) - int(ptr[3 * c]) for c in cells]
                assert len(set(lens)) == 1
                assert lens[0] % (2 * t.g) == 0  # whole run pairs only

    def test_symmetric_dummies_use_index_k(self):
        # col0 carries two full sign pairs; its group mates are empty and
        # must be padded with dummy pairs up to the same interleaved length
        v = np.zeros((8, 4), dtype=np.int8)
        v[0:2, 0] = 1
        v[2:4, 0] = -1
        w = tg.TernaryDense(v)
        t = tg.interleaved_blocked_from_dense(w, g=2, symmetric_cols=True)
        dummies = t.all_indices == w.K
        assert dummies.any()
        assert t.nnz == w.nnz
        assert t.to_dense() == w

    def test_symmetric_needs_n_multiple_of_4(self):
        w = tg.gen_ternary(8, 6, "1/2", seed=0)
        with pytest.raises(tg.ParameterError):
            tg.interleaved_blocked_from_dense(w, symmetric_cols=True)


class TestInverted:
    def test_signed_index_encoding(self):
        assert tg.encode_signed_index(5, -1) == -6
        assert tg.encode_signed_index(5, 1) == 5
        assert tg.decode_signed_index(-6) == (5, -1)
        assert tg.decode_signed_index(-1) == (0, -1)  # ~0 == -1
        assert tg.decode_signed_index(0) == (0, 1)
        with pytest.raises(tg.ParameterError):
            tg.encode_signed_index(3, 0)

    @given(row=st.integers(0, 2**30), sign=st.sampled_from([1, -1]))
    def test_encoding_round_trip(self, row, sign):
        assert tg.decode_signed_index(tg.encode_signed_index(row, sign)) == (row, sign)

    def test_entries_ordered_by_decoded_row(self):
        w = tg.gen_ternary(64, 8, "1/2", seed=4)
        t = tg.inverted_from_dense(w)
        for n in range(t.N):
            seg = t.entries[t.col_start[n] : t.col_start[n + 1]]
            rows = [tg.decode_signed_index(int(v))[0] for v in seg]
            assert rows == sorted(rows)

    @given(k=st.integers(1, 80), n=st.integers(1, 12), seed=st.integers(0, 5_000))
    def test_round_trip(self, k, n, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        assert tg.inverted_from_dense(w).to_dense() == w


class TestPackedBytes:
    def test_frozen_codes(self):
        assert tg.compress5([-1] * 5) == 0
        assert tg.compress5([0] * 5) == 121
        assert tg.compress5([1] * 5) == 242
        assert tg.compress5([1, 0, -1, 0, 1]) == 194

    def test_decompress_inverts_compress_for_all_codes(self):
        for code in range(CODE_COUNT):
            assert tg.compress5(tg.decompress5(code)) == code

    def test_invalid_codes_rejected(self):
        for code in (CODE_COUNT, 255, -1):
            with pytest.raises(tg.InvalidCodeError):
                tg.decompress5(code)

    def test_compress_validates_input(self):
        with pytest.raises(tg.ParameterError):
            tg.compress5([0, 0, 0, 2, 0])
        with pytest.raises(tg.ParameterError):
            tg.compress5([0, 0, 0])

    def test_decode_table(self):
        assert tg.DECODE_TABLE.shape == (CODE_COUNT, PACK_WIDTH)
        assert tg.DECODE_TABLE.dtype == np.int8
        assert not tg.DECODE_TABLE.flags.writeable
        for code in (0, 121, 194, 242):
            assert tuple(tg.DECODE_TABLE[code]) == tg.decompress5(code)

    def test_unused_code_fraction(self):
        # 243 of 256 byte values are meaningful; ~5.08% of the space is waste
        waste = (256 - CODE_COUNT) / 256
        assert waste == pytest.approx(0.0508, abs=1e-4)


class TestCompressedFormat:
    def test_frozen_hand_packed_columns(self):
        w, _, _ = worked_example()
        t = tg.compressed_from_dense(w)
        assert t.codes.shape == (2, 1)  # (N, ceil(K/5))
        assert t.codes.dtype == np.uint8
        # col0 = [+1, 0, -1, +1] zero-padded to 5 digits
        assert int(t.codes[0, 0]) == 140
        # col1 = [0, -1, 0, 0] zero-padded to 5 digits
        assert int(t.codes[1, 0]) == 118

    def test_rejects_out_of_range_codes(self):
        with pytest.raises(tg.InvalidCodeError):
            tg.CompressedTcsc(4, 1, np.array([[250]], dtype=np.uint8))

    def test_format_bytes_is_one_per_group(self):
        w = tg.gen_ternary(1024, 16, "1/2", seed=0)
        t = tg.compressed_from_dense(w)
        assert t.format_bytes() == 16 * math.ceil(1024 / 5)

    @given(k=st.integers(1, 80), n=st.integers(1, 12), seed=st.integers(0, 5_000))
    def test_round_trip(self, k, n, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        assert tg.compressed_from_dense(w).to_dense() == w


class TestSymmetricInterleaved:
    def test_pair_count_is_group_max_rounded_to_quantum(self):
        # col0 has 5 positives, so with g=2 the group quantum lcm(4,2)=4
        # forces 8 pairs in every column of the group
        v = np.zeros((16, 4), dtype=np.int8)
        v[0:5, 0] = 1
        v[0, 1] = -1
        w = tg.TernaryDense(v)
        t = tg.symmetric_from_dense(w, g=2)
        assert t.pairs_in_group(0) == 8
        lens = np.diff(t.col_ptr)
        assert (lens == 16).all()

    def test_quantum_respects_g(self):
        v = np.zeros((32, 4), dtype=np.int8)
        v[0:5, 0] = 1
        w = tg.TernaryDense(v)
        t3 = tg.symmetric_from_dense(w, g=3)
        assert t3.pairs_in_group(0) == math.lcm(4, 3)  # roundup(5, 12) = 12

    def test_all_zero_group_stores_nothing(self):
        w = tg.TernaryDense(np.zeros((8, 4), dtype=np.int8))
        t = tg.symmetric_from_dense(w)
        assert t.indices.size == 0
        assert t.dummy_count == 0

    def test_dummy_slots_hold_index_k(self):
        v = np.zeros((8, 4), dtype=np.int8)
        v[0:3, 0] = 1
        w = tg.TernaryDense(v)
        t = tg.symmetric_from_dense(w)
        assert (t.indices[t.indices >= w.K] == w.K).all()
        assert t.dummy_count > 0
        assert t.nnz == w.nnz

    def test_needs_n_multiple_of_4(self):
        with pytest.raises(tg.ParameterError):
            tg.symmetric_from_dense(tg.gen_ternary(8, 5, "1/2", seed=0))

    @given(
        k=st.integers(1, 64),
        ng=st.integers(1, 3),
        g=st.integers(1, 5),
        seed=st.integers(0, 5_000),
    )
    def test_round_trip(self, k, ng, g, seed):
        w = random_ternary(np.random.default_rng(seed), k, 4 * ng)
        t = tg.symmetric_from_dense(w, g=g)
        assert t.to_dense() == w
        assert t.nnz == w.nnz
