"""Scalar GEMM kernels over the sparse ternary formats.

Every kernel computes Y = X W + b using only additions and subtractions in
the accumulation path; the ternary weights never multiply anything. The
variants differ purely in how they walk the format:

    gemm_base                 one accumulator per output element
    gemm_unrolled             UF accumulators, MR rows per outer iteration
    gemm_blocked              row-range blocks for cache residency
    gemm_interleaved_blocked  paired +/- runs inside blocks
    gemm_inverted             merged sign-in-bit-pattern index stream
    gemm_compressed           packed-byte stream decoded via lookup table

Unroll factors are baked into the jitted specialization as compile-time
constants (closure variables), so UF and MR shape the emitted loop nest the
way template parameters would. Accumulator banks are small float32 arrays:
the portable stand-in for a register file's worth of independent
accumulators.

Each kernel has an instrumented twin (counted=True) compiled from the same
source with counter updates enabled; it reports every executed floating
point add/subtract and multiply.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ..dense import BiasVector, DenseMatrix
from ..errors import ParameterError
from ..tcsc import Tcsc
from ..variants import (
    DECODE_TABLE,
    BlockedTcsc,
    CompressedTcsc,
    InterleavedBlockedTcsc,
    InvertedTcsc,
)
from ._jit import njit

DEFAULT_UF = 12
DEFAULT_MR = 4
DEFAULT_NR = 4
ALLOWED_ROW_UNROLL = (1, 2, 4)


class OpCount(NamedTuple):
    """Measured floating point operation counters."""

    adds: int
    mults: int


@dataclass(frozen=True)
class GemmConfig:
    """Tuning knobs shared by kernels and the benchmark harness.

    uf: independent inner accumulators (default 12).
    mr: rows of X processed per outer iteration (default 4).
    nr: output-column tile width (default 4).
    b:  block size; None means min(K, 4096).
    g:  interleave group size; None means the format's own default.
    alpha: PReLU slope for the fused vectorized kernels; None disables it.
    variant: optional label, carried through to benchmark records.
    """

    uf: int = DEFAULT_UF
    mr: int = DEFAULT_MR
    nr: int = DEFAULT_NR
    b: int | None = None
    g: int | None = None
    alpha: float | None = None
    variant: str = ""

    def __post_init__(self):
        if self.uf < 1:
            raise ParameterError(f"uf must be >= 1, got {self.uf}")
        if self.mr not in ALLOWED_ROW_UNROLL:
            raise ParameterError(f"mr must be one of {ALLOWED_ROW_UNROLL}, got {self.mr}")
        if self.nr not in ALLOWED_ROW_UNROLL:
            raise ParameterError(f"nr must be one of {ALLOWED_ROW_UNROLL}, got {self.nr}")
        if self.b is not None and self.b < 1:
            raise ParameterError(f"b must be >= 1, got {self.b}")
        if self.g is not None and self.g < 1:
            raise ParameterError(f"g must be >= 1, got {self.g}")
        if self.alpha is not None and not np.isfinite(self.alpha):
            raise ParameterError(f"alpha must be finite, got {self.alpha}")

    def with_variant(self, tag: str) -> "GemmConfig":
        return replace(self, variant=tag)


def _check_dims(x_cols: int, K: int, bias_len: int, N: int) -> None:
    if x_cols != K:
        raise ParameterError(f"X has {x_cols} columns but the format has K = {K}")
    if bias_len != N:
        raise ParameterError(f"bias length {bias_len} != N = {N}")


# ---------------------------------------------------------------------------
# base
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _base_kernel(count: bool):
    @njit(nogil=True)
    def kern(x, csp, rip, csn, rin, bias, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        adds = 0
        for m in range(mrows):
            for n in range(ncols):
                acc = np.float32(0.0)
                for i in range(csp[n], csp[n + 1]):
                    acc += x[m, rip[i]]
                    if count:
                        adds += 1
                for i in range(csn[n], csn[n + 1]):
                    acc -= x[m, rin[i]]
                    if count:
                        adds += 1
                out[m, n] = bias[n] + acc
                if count:
                    adds += 1
        return adds, 0

    return kern


def gemm_base(X: DenseMatrix, t: Tcsc, b: BiasVector, counted: bool = False):
    """Reference-shaped kernel: one accumulator per output element.

    With counted=True also returns the measured OpCount, which lands at
    exactly M*N + M*nnz additions and zero multiplications.
    """
    _check_dims(X.cols, t.K, len(b), t.N)
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _base_kernel(counted)(
        X.values, t.col_start_pos, t.row_index_pos, t.col_start_neg, t.row_index_neg,
        b.values, out,
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# unrolled
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _unrolled_kernel(uf: int, mr: int, count: bool):
    @njit(nogil=True)
    def kern(x, csp, rip, csn, rin, bias, nr, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        adds = 0
        bank = np.zeros((mr, uf), dtype=np.float32)
        for n0 in range(0, ncols, nr):
            n1 = min(n0 + nr, ncols)
            m0 = 0
            while m0 + mr <= mrows:
                for n in range(n0, n1):
                    for r in range(mr):
                        for u in range(uf):
                            bank[r, u] = 0.0
                    i = csp[n]
                    pe = csp[n + 1]
                    while i + uf <= pe:
                        for u in range(uf):
                            idx = rip[i + u]
                            for r in range(mr):
                                bank[r, u] += x[m0 + r, idx]
                                if count:
                                    adds += 1
                        i += uf
                    while i < pe:
                        idx = rip[i]
                        for r in range(mr):
                            bank[r, 0] += x[m0 + r, idx]
                            if count:
                                adds += 1
                        i += 1
                    i = csn[n]
                    ne = csn[n + 1]
                    while i + uf <= ne:
                        for u in range(uf):
                            idx = rin[i + u]
                            for r in range(mr):
                                bank[r, u] -= x[m0 + r, idx]
                                if count:
                                    adds += 1
                        i += uf
                    while i < ne:
                        idx = rin[i]
                        for r in range(mr):
                            bank[r, 0] -= x[m0 + r, idx]
                            if count:
                                adds += 1
                        i += 1
                    for r in range(mr):
                        tot = np.float32(0.0)
                        for u in range(uf):
                            tot += bank[r, u]
                            if count:
                                adds += 1
                        out[m0 + r, n] = bias[n] + tot
                        if count:
                            adds += 1
                m0 += mr
            # rows left over when M is not a multiple of mr
            for m in range(m0, mrows):
                for n in range(n0, n1):
                    for u in range(uf):
                        bank[0, u] = 0.0
                    i = csp[n]
                    pe = csp[n + 1]
                    while i + uf <= pe:
                        for u in range(uf):
                            bank[0, u] += x[m, rip[i + u]]
                            if count:
                                adds += 1
                        i += uf
                    while i < pe:
                        bank[0, 0] += x[m, rip[i]]
                        if count:
                            adds += 1
                        i += 1
                    i = csn[n]
                    ne = csn[n + 1]
                    while i + uf <= ne:
                        for u in range(uf):
                            bank[0, u] -= x[m, rin[i + u]]
                            if count:
                                adds += 1
                        i += uf
                    while i < ne:
                        bank[0, 0] -= x[m, rin[i]]
                        if count:
                            adds += 1
                        i += 1
                    tot = np.float32(0.0)
                    for u in range(uf):
                        tot += bank[0, u]
                        if count:
                            adds += 1
                    out[m, n] = bias[n] + tot
                    if count:
                        adds += 1
        return adds, 0

    return kern


def gemm_unrolled(
    X: DenseMatrix, t: Tcsc, b: BiasVector, cfg: GemmConfig | None = None, counted: bool = False
):
    """Unrolled kernel: cfg.uf accumulators per dot product, cfg.mr rows per
    outer iteration (index loads amortized across them), cfg.nr column tiles.

    Leftover rows (M mod mr) and leftover indices (nnz mod uf) run through
    cleanup paths. The result is bit-identical to gemm_base for
    integer-valued X regardless of cfg.
    """
    cfg = cfg or GemmConfig()
    _check_dims(X.cols, t.K, len(b), t.N)
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _unrolled_kernel(cfg.uf, cfg.mr, counted)(
        X.values, t.col_start_pos, t.row_index_pos, t.col_start_neg, t.row_index_neg,
        b.values, cfg.nr, out,
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# blocked
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _blocked_kernel(uf: int, mr: int, count: bool):
    @njit(nogil=True)
    def kern(x, csp, rip, csn, rin, bias, nr, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        nblocks = csp.shape[0]
        adds = 0
        for m in range(mrows):
            for n in range(ncols):
                out[m, n] = bias[n]
        bank = np.zeros((mr, uf), dtype=np.float32)
        for blk in range(nblocks):
            for n0 in range(0, ncols, nr):
                n1 = min(n0 + nr, ncols)
                m0 = 0
                while m0 + mr <= mrows:
                    for n in range(n0, n1):
                        for r in range(mr):
                            for u in range(uf):
                                bank[r, u] = 0.0
                        i = csp[blk, n]
                        pe = csp[blk, n + 1]
                        while i + uf <= pe:
                            for u in range(uf):
                                idx = rip[i + u]
                                for r in range(mr):
                                    bank[r, u] += x[m0 + r, idx]
                                    if count:
                                        adds += 1
                            i += uf
                        while i < pe:
                            idx = rip[i]
                            for r in range(mr):
                                bank[r, 0] += x[m0 + r, idx]
                                if count:
                                    adds += 1
                            i += 1
                        i = csn[blk, n]
                        ne = csn[blk, n + 1]
                        while i + uf <= ne:
                            for u in range(uf):
                                idx = rin[i + u]
                                for r in range(mr):
                                    bank[r, u] -= x[m0 + r, idx]
                                    if count:
                                        adds += 1
                            i += uf
                        while i < ne:
                            idx = rin[i]
                            for r in range(mr):
                                bank[r, 0] -= x[m0 + r, idx]
                                if count:
                                    adds += 1
                            i += 1
                        for r in range(mr):
                            tot = np.float32(0.0)
                            for u in range(uf):
                                tot += bank[r, u]
                                if count:
                                    adds += 1
                            out[m0 + r, n] += tot
                            if count:
                                adds += 1
                    m0 += mr
                for m in range(m0, mrows):
                    for n in range(n0, n1):
                        acc = np.float32(0.0)
                        for i in range(csp[blk, n], csp[blk, n + 1]):
                            acc += x[m, rip[i]]
                            if count:
                                adds += 1
                        for i in range(csn[blk, n], csn[blk, n + 1]):
                            acc -= x[m, rin[i]]
                            if count:
                                adds += 1
                        out[m, n] += acc
                        if count:
                            adds += 1
        return adds, 0

    return kern


def gemm_blocked(
    X: DenseMatrix,
    t: BlockedTcsc,
    b: BiasVector,
    cfg: GemmConfig | None = None,
    counted: bool = False,
):
    """Blocked kernel: Y starts at the bias, then each row-range block
    accumulates its contribution, keeping the touched slice of X cache
    resident. Unroll settings from cfg apply inside blocks.
    """
    cfg = cfg or GemmConfig()
    _check_dims(X.cols, t.K, len(b), t.N)
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _blocked_kernel(cfg.uf, cfg.mr, counted)(
        X.values, t.col_start_pos, t.row_index_pos, t.col_start_neg, t.row_index_neg,
        b.values, cfg.nr, out,
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# interleaved + blocked
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _interleaved_blocked_kernel(mr: int, count: bool):
    @njit(nogil=True)
    def kern(x, ai, ptr, bias, nblocks, g, nr, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        adds = 0
        acc = np.zeros(mr, dtype=np.float32)
        for m in range(mrows):
            for n in range(ncols):
                out[m, n] = bias[n]
        for blk in range(nblocks):
            for n0 in range(0, ncols, nr):
                n1 = min(n0 + nr, ncols)
                m0 = 0
                while m0 + mr <= mrows:
                    for n in range(n0, n1):
                        cell = blk * ncols + n
                        s0 = ptr[3 * cell]
                        s1 = ptr[3 * cell + 1]
                        s2 = ptr[3 * cell + 2]
                        s3 = ptr[3 * cell + 3]
                        for r in range(mr):
                            acc[r] = 0.0
                        i = s0
                        while i < s1:
                            for u in range(g):
                                idx = ai[i + u]
                                for r in range(mr):
                                    acc[r] += x[m0 + r, idx]
                                    if count:
                                        adds += 1
                            for u in range(g):
                                idx = ai[i + g + u]
                                for r in range(mr):
                                    acc[r] -= x[m0 + r, idx]
                                    if count:
                                        adds += 1
                            i += 2 * g
                        for i in range(s1, s2):
                            idx = ai[i]
                            for r in range(mr):
                                acc[r] += x[m0 + r, idx]
                                if count:
                                    adds += 1
                        for i in range(s2, s3):
                            idx = ai[i]
                            for r in range(mr):
                                acc[r] -= x[m0 + r, idx]
                                if count:
                                    adds += 1
                        for r in range(mr):
                            out[m0 + r, n] += acc[r]
                            if count:
                                adds += 1
                    m0 += mr
                for m in range(m0, mrows):
                    for n in range(n0, n1):
                        cell = blk * ncols + n
                        s0 = ptr[3 * cell]
                        s1 = ptr[3 * cell + 1]
                        s2 = ptr[3 * cell + 2]
                        s3 = ptr[3 * cell + 3]
                        a = np.float32(0.0)
                        i = s0
                        while i < s1:
                            for u in range(g):
                                a += x[m, ai[i + u]]
                                if count:
                                    adds += 1
                            for u in range(g):
                                a -= x[m, ai[i + g + u]]
                                if count:
                                    adds += 1
                            i += 2 * g
                        for i in range(s1, s2):
                            a += x[m, ai[i]]
                            if count:
                                adds += 1
                        for i in range(s2, s3):
                            a -= x[m, ai[i]]
                            if count:
                                adds += 1
                        out[m, n] += a
                        if count:
                            adds += 1
        return adds, 0

    return kern


def gemm_interleaved_blocked(
    X: DenseMatrix,
    t: InterleavedBlockedTcsc,
    b: BiasVector,
    cfg: GemmConfig | None = None,
    counted: bool = False,
):
    """Interleaved+blocked kernel: per (block, column) the paired sign runs
    alternate adds and subtracts, then the leftover +1s and -1s run as in
    the base kernel. cfg.mr rows share each index load; g comes from the
    format.
    """
    cfg = cfg or GemmConfig()
    _check_dims(X.cols, t.K, len(b), t.N)
    if t.symmetric_groups:
        raise ParameterError(
            "scalar kernel cannot consume symmetric-group formats (dummy index needs a padded input row)"
        )
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _interleaved_blocked_kernel(cfg.mr, counted)(
        X.values, t.all_indices, t.col_segment_ptr, b.values, t.num_blocks, t.g, cfg.nr, out,
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# inverted
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _inverted_kernel(count: bool):
    @njit(nogil=True)
    def kern(x, cs, entries, bias, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        adds = 0
        for m in range(mrows):
            for n in range(ncols):
                acc = np.float32(0.0)
                for i in range(cs[n], cs[n + 1]):
                    v = entries[i]
                    if v >= 0:
                        acc += x[m, v]
                    else:
                        acc -= x[m, ~v]
                    if count:
                        adds += 1
                out[m, n] = bias[n] + acc
                if count:
                    adds += 1
        return adds, 0

    return kern


def gemm_inverted(X: DenseMatrix, t: InvertedTcsc, b: BiasVector, counted: bool = False):
    """Kernel over the merged index stream; sign decodes as one comparison
    and a bitwise NOT, no extra array traffic.
    """
    _check_dims(X.cols, t.K, len(b), t.N)
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _inverted_kernel(counted)(X.values, t.col_start, t.entries, b.values, out)
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# compressed
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _compressed_kernel(count: bool):
    @njit(nogil=True)
    def kern(x, codes, lut, bias, out):
        mrows = x.shape[0]
        ncols = bias.shape[0]
        ngroups = codes.shape[1]
        adds = 0
        for m in range(mrows):
            for n in range(ncols):
                acc = np.float32(0.0)
                for gi in range(ngroups):
                    code = codes[n, gi]
                    base = gi * 5
                    for tpos in range(5):
                        d = lut[code, tpos]
                        if d > 0:
                            acc += x[m, base + tpos]
                            if count:
                                adds += 1
                        elif d < 0:
                            acc -= x[m, base + tpos]
                            if count:
                                adds += 1
                out[m, n] = bias[n] + acc
                if count:
                    adds += 1
        return adds, 0

    return kern


def gemm_compressed(X: DenseMatrix, t: CompressedTcsc, b: BiasVector, counted: bool = False):
    """Kernel over packed bytes: each code expands through the 243-row
    decode table (zero arithmetic), and only nonzero digits touch X, so the
    zero padding of the last group never reads out of range.
    """
    _check_dims(X.cols, t.K, len(b), t.N)
    out = np.empty((X.rows, t.N), dtype=np.float32)
    adds, mults = _compressed_kernel(counted)(X.values, t.codes, DECODE_TABLE, b.values, out)
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result
