"""Binary weight files: round trips, corruption handling, byte offsets."""

from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import terngemm as tg
from terngemm import io as tio

from conftest import random_ternary, worked_example


def _dense_bytes(w) -> bytes:
    buf = io.BytesIO()
    tio.save_dense(w, buf)
    return buf.getvalue()


def _sparse_bytes(fmt) -> bytes:
    buf = io.BytesIO()
    tio.save_sparse(fmt, buf)
    return buf.getvalue()


def _all_formats(w):
    return [
        tg.tcsc_from_dense(w),
        tg.blocked_from_dense(w, B=8),
        tg.interleaved_from_dense(w, g=2),
        tg.interleaved_blocked_from_dense(w, B=8, g=2),
        tg.inverted_from_dense(w),
        tg.compressed_from_dense(w),
    ]


class TestDenseFile:
    def test_round_trip(self):
        w, _, _ = worked_example()
        data = _dense_bytes(w)
        assert data[:4] == tio.DENSE_MAGIC
        assert tio.load_dense(data) == w

    def test_trailing_bytes_rejected(self):
        w, _, _ = worked_example()
        with pytest.raises(tg.ParseError):
            tio.load_dense(_dense_bytes(w) + b"\x00")

    def test_bad_magic(self):
        with pytest.raises(tg.ParseError):
            tio.load_dense(b"XXXX" + _dense_bytes(worked_example()[0])[4:])

    def test_bad_entry_reports_offset(self):
        w, _, _ = worked_example()
        data = bytearray(_dense_bytes(w))
        data[-1] = 5  # not a ternary value
        with pytest.raises(tg.ParseError) as err:
            tio.load_dense(bytes(data))
        assert "offset" in str(err.value)
        assert err.value.offset == len(data) - 1

    @given(k=st.integers(1, 40), n=st.integers(1, 10), seed=st.integers(0, 2_000))
    @settings(max_examples=30)
    def test_round_trip_property(self, k, n, seed):
        w = random_ternary(np.random.default_rng(seed), k, n)
        assert tio.load_dense(_dense_bytes(w)) == w


class TestSparseFile:
    def test_round_trip_every_format(self):
        w = tg.gen_ternary(24, 8, "1/2", seed=6)
        for fmt in _all_formats(w) + [
            tg.interleaved_blocked_from_dense(w, B=8, g=2, symmetric_cols=True),
            tg.symmetric_from_dense(w, g=2),
        ]:
            data = _sparse_bytes(fmt)
            assert data[:4] == tio.SPARSE_MAGIC
            back = tio.load_sparse(data)
            assert type(back) is type(fmt)
            assert back.to_dense() == w
            for attr in ("B", "g", "symmetric_groups"):
                if hasattr(fmt, attr):
                    assert getattr(back, attr) == getattr(fmt, attr), attr

    def test_unknown_format_tag(self):
        w = tg.gen_ternary(8, 4, "1/2", seed=0)
        data = bytearray(_sparse_bytes(tg.tcsc_from_dense(w)))
        data[8] = 99  # format tag byte inside the header
        with pytest.raises(tg.ParseError):
            tio.load_sparse(bytes(data))

    def test_truncation_never_crashes(self):
        w = tg.gen_ternary(16, 4, "1/2", seed=7)
        data = _sparse_bytes(tg.interleaved_blocked_from_dense(w, B=4))
        for cut in range(len(data)):
            with pytest.raises(tg.ParseError):
                tio.load_sparse(data[:cut])

    def test_dense_truncation_never_crashes(self):
        data = _dense_bytes(worked_example()[0])
        for cut in range(len(data)):
            with pytest.raises(tg.ParseError):
                tio.load_dense(data[:cut])


class TestLoadAny:
    def test_dispatch(self):
        w, _, _ = worked_example()
        assert isinstance(tio.load_any(_dense_bytes(w)), tg.TernaryDense)
        assert isinstance(tio.load_any(_sparse_bytes(tg.tcsc_from_dense(w))), tg.Tcsc)

    def test_unknown_magic(self):
        with pytest.raises(tg.ParseError):
            tio.load_any(b"ZZZZ\x00\x00\x00\x00")

    def test_empty_input(self):
        with pytest.raises(tg.ParseError):
            tio.load_any(b"")
