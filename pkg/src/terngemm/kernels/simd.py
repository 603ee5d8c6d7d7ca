"""Portable 4-lane vector kernels with fused bias and PReLU.

These emulate 128-bit/4-float lane semantics with explicit per-lane scalars,
so they run anywhere and define the reference behavior for any
platform-specific path. Flop accounting is in lane terms: one 4-wide add
counts as 4, including lanes that only carry dummy padding.

Lane mappings:

    gemm_vertical            lanes = 4 output columns; one positive and one
                             negative sum vector per group, subtracted once
                             at the end
    gemm_horizontal          lanes = 4 consecutive stream entries of one
                             column, reduced pairwise at the end
    gemm_vectorized_optimal  4 column registers x 4 row lanes over the
                             blocked interleaved format with symmetric
                             column groups; leftovers run scalar

All three read X through PaddedInput: row stride K+1 with slot K pinned to
zero, which is where dummy indices land.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..dense import BiasVector, DenseMatrix
from ..errors import ParameterError
from ..variants import InterleavedBlockedTcsc, SymmetricInterleavedTcsc
from ._jit import njit
from .scalar import GemmConfig, OpCount

DEFAULT_ALPHA = 0.25
LANES = 4


@dataclass(frozen=True)
class PaddedInput:
    """An M x (K+1) float32 matrix whose last column is all zeros.

    The extra slot gives dummy indices (value K) a harmless load target.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float32)
        if v.ndim != 2 or v.shape[1] < 1:
            raise ParameterError(f"padded input must be 2-D with >= 1 column, got {self.values.shape}")
        if not np.isfinite(v).all():
            raise ParameterError("padded input contains non-finite values")
        if v.shape[0] and (v[:, -1] != 0).any():
            raise ParameterError("padded slot (last column) must be exactly zero")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.shape[0]

    @property
    def K(self) -> int:
        return self.values.shape[1] - 1

    def logical(self) -> DenseMatrix:
        """The original M x K matrix without the padding slot."""
        return DenseMatrix(self.values[:, :-1].copy())


def pad_input(X: DenseMatrix) -> PaddedInput:
    v = np.zeros((X.rows, X.cols + 1), dtype=np.float32)
    v[:, :-1] = X.values
    return PaddedInput(v)


def _check(Xp: PaddedInput, K: int, bias_len: int, N: int) -> None:
    if Xp.K != K:
        raise ParameterError(f"padded input has K = {Xp.K} but the format has K = {K}")
    if bias_len != N:
        raise ParameterError(f"bias length {bias_len} != N = {N}")


def _alpha_args(alpha: float | None) -> tuple[bool, np.float32]:
    if alpha is None:
        return False, np.float32(0.0)
    if not np.isfinite(alpha):
        raise ParameterError(f"alpha must be finite, got {alpha}")
    return True, np.float32(alpha)


# ---------------------------------------------------------------------------
# vertical: lanes across output columns
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _vertical_kernel(count: bool):
    @njit(nogil=True)
    def kern(xp, idx, col_ptr, bias, g, use_alpha, alpha, out):
        mrows = xp.shape[0]
        ncols = bias.shape[0]
        adds = 0
        mults = 0
        for m in range(mrows):
            for n0 in range(0, ncols, 4):
                o0 = col_ptr[n0]
                o1 = col_ptr[n0 + 1]
                o2 = col_ptr[n0 + 2]
                o3 = col_ptr[n0 + 3]
                length = o1 - o0  # identical for all 4 columns of the group
                p0 = np.float32(0.0)
                p1 = np.float32(0.0)
                p2 = np.float32(0.0)
                p3 = np.float32(0.0)
                q0 = np.float32(0.0)
                q1 = np.float32(0.0)
                q2 = np.float32(0.0)
                q3 = np.float32(0.0)
                for t in range(length):
                    v0 = xp[m, idx[o0 + t]]
                    v1 = xp[m, idx[o1 + t]]
                    v2 = xp[m, idx[o2 + t]]
                    v3 = xp[m, idx[o3 + t]]
                    if ((t // g) & 1) == 0:
                        p0 += v0
                        p1 += v1
                        p2 += v2
                        p3 += v3
                    else:
                        q0 += v0
                        q1 += v1
                        q2 += v2
                        q3 += v3
                    if count:
                        adds += 4
                y0 = bias[n0] + p0 - q0
                y1 = bias[n0 + 1] + p1 - q1
                y2 = bias[n0 + 2] + p2 - q2
                y3 = bias[n0 + 3] + p3 - q3
                if count:
                    adds += 8
                if use_alpha:
                    if not y0 > 0.0:
                        y0 = alpha * y0
                        if count:
                            mults += 1
                    if not y1 > 0.0:
                        y1 = alpha * y1
                        if count:
                            mults += 1
                    if not y2 > 0.0:
                        y2 = alpha * y2
                        if count:
                            mults += 1
                    if not y3 > 0.0:
                        y3 = alpha * y3
                        if count:
                            mults += 1
                out[m, n0] = y0
                out[m, n0 + 1] = y1
                out[m, n0 + 2] = y2
                out[m, n0 + 3] = y3
        return adds, mults

    return kern


def gemm_vertical(
    Xp: PaddedInput,
    t: SymmetricInterleavedTcsc,
    b: BiasVector,
    alpha: float | None = None,
    counted: bool = False,
):
    """Vertical kernel: one vector register slot per output column of a
    4-column group; positive and negative run sums stay in separate vectors
    and meet once at the end, fused with bias and optional PReLU.
    """
    _check(Xp, t.K, len(b), t.N)
    use_alpha, alpha_f = _alpha_args(alpha)
    out = np.empty((Xp.M, t.N), dtype=np.float32)
    adds, mults = _vertical_kernel(counted)(
        Xp.values, t.indices, t.col_ptr, b.values, t.g, use_alpha, alpha_f, out
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# horizontal: lanes along one column's stream
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _horizontal_kernel(count: bool):
    @njit(nogil=True)
    def kern(xp, idx, col_ptr, bias, g, use_alpha, alpha, out):
        mrows = xp.shape[0]
        ncols = bias.shape[0]
        adds = 0
        mults = 0
        for m in range(mrows):
            for n in range(ncols):
                s = col_ptr[n]
                e = col_ptr[n + 1]
                a0 = np.float32(0.0)
                a1 = np.float32(0.0)
                a2 = np.float32(0.0)
                a3 = np.float32(0.0)
                w = s
                while w < e:
                    t = w - s
                    v0 = xp[m, idx[w]]
                    v1 = xp[m, idx[w + 1]]
                    v2 = xp[m, idx[w + 2]]
                    v3 = xp[m, idx[w + 3]]
                    # sign is the run parity of each lane's stream position;
                    # at g = 2 this is the fixed (+ + - -) window layout
                    if ((t // g) & 1) == 0:
                        a0 += v0
                    else:
                        a0 -= v0
                    if (((t + 1) // g) & 1) == 0:
                        a1 += v1
                    else:
                        a1 -= v1
                    if (((t + 2) // g) & 1) == 0:
                        a2 += v2
                    else:
                        a2 -= v2
                    if (((t + 3) // g) & 1) == 0:
                        a3 += v3
                    else:
                        a3 -= v3
                    if count:
                        adds += 4
                    w += 4
                # fixed pairwise horizontal reduction, then bias
                y = bias[n] + ((a0 + a1) + (a2 + a3))
                if count:
                    adds += 4
                if use_alpha:
                    if not y > 0.0:
                        y = alpha * y
                        if count:
                            mults += 1
                out[m, n] = y
        return adds, mults

    return kern


def gemm_horizontal(
    Xp: PaddedInput,
    t: SymmetricInterleavedTcsc,
    b: BiasVector,
    alpha: float | None = None,
    counted: bool = False,
):
    """Horizontal kernel: one vector register per column accumulates 4
    consecutive stream entries per step and is reduced pairwise at the end.
    Stream lengths are multiples of 8 (pair counts are multiples of 4), so
    no window ever straddles the end.
    """
    _check(Xp, t.K, len(b), t.N)
    use_alpha, alpha_f = _alpha_args(alpha)
    out = np.empty((Xp.M, t.N), dtype=np.float32)
    adds, mults = _horizontal_kernel(counted)(
        Xp.values, t.indices, t.col_ptr, b.values, t.g, use_alpha, alpha_f, out
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result


# ---------------------------------------------------------------------------
# 4 columns x 4 rows over blocked interleaved data
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _optimal_kernel(count: bool):
    @njit(nogil=True)
    def kern(xp, ai, ptr, bias, nblocks, g, use_alpha, alpha, out):
        mrows = xp.shape[0]
        ncols = bias.shape[0]
        adds = 0
        mults = 0
        for m in range(mrows):
            for n in range(ncols):
                out[m, n] = bias[n]
        for blk in range(nblocks):
            for n0 in range(0, ncols, 4):
                cell = blk * ncols + n0
                sa = ptr[3 * cell]
                sb = ptr[3 * (cell + 1)]
                sc = ptr[3 * (cell + 2)]
                sd = ptr[3 * (cell + 3)]
                seglen = ptr[3 * cell + 1] - sa  # symmetric across the group
                m0 = 0
                while m0 + 4 <= mrows:
                    a00 = np.float32(0.0)
                    a01 = np.float32(0.0)
                    a02 = np.float32(0.0)
                    a03 = np.float32(0.0)
                    a10 = np.float32(0.0)
                    a11 = np.float32(0.0)
                    a12 = np.float32(0.0)
                    a13 = np.float32(0.0)
                    a20 = np.float32(0.0)
                    a21 = np.float32(0.0)
                    a22 = np.float32(0.0)
                    a23 = np.float32(0.0)
                    a30 = np.float32(0.0)
                    a31 = np.float32(0.0)
                    a32 = np.float32(0.0)
                    a33 = np.float32(0.0)
                    for t in range(seglen):
                        ia = ai[sa + t]
                        ib = ai[sb + t]
                        ic = ai[sc + t]
                        id_ = ai[sd + t]
                        if ((t // g) & 1) == 0:
                            a00 += xp[m0, ia]
                            a01 += xp[m0 + 1, ia]
                            a02 += xp[m0 + 2, ia]
                            a03 += xp[m0 + 3, ia]
                            a10 += xp[m0, ib]
                            a11 += xp[m0 + 1, ib]
                            a12 += xp[m0 + 2, ib]
                            a13 += xp[m0 + 3, ib]
                            a20 += xp[m0, ic]
                            a21 += xp[m0 + 1, ic]
                            a22 += xp[m0 + 2, ic]
                            a23 += xp[m0 + 3, ic]
                            a30 += xp[m0, id_]
                            a31 += xp[m0 + 1, id_]
                            a32 += xp[m0 + 2, id_]
                            a33 += xp[m0 + 3, id_]
                        else:
                            a00 -= xp[m0, ia]
                            a01 -= xp[m0 + 1, ia]
                            a02 -= xp[m0 + 2, ia]
                            a03 -= xp[m0 + 3, ia]
                            a10 -= xp[m0, ib]
                            a11 -= xp[m0 + 1, ib]
                            a12 -= xp[m0 + 2, ib]
                            a13 -= xp[m0 + 3, ib]
                            a20 -= xp[m0, ic]
                            a21 -= xp[m0 + 1, ic]
                            a22 -= xp[m0 + 2, ic]
                            a23 -= xp[m0 + 3, ic]
                            a30 -= xp[m0, id_]
                            a31 -= xp[m0 + 1, id_]
                            a32 -= xp[m0 + 2, id_]
                            a33 -= xp[m0 + 3, id_]
                        if count:
                            adds += 16
                    out[m0, n0] += a00
                    out[m0 + 1, n0] += a01
                    out[m0 + 2, n0] += a02
                    out[m0 + 3, n0] += a03
                    out[m0, n0 + 1] += a10
                    out[m0 + 1, n0 + 1] += a11
                    out[m0 + 2, n0 + 1] += a12
                    out[m0 + 3, n0 + 1] += a13
                    out[m0, n0 + 2] += a20
                    out[m0 + 1, n0 + 2] += a21
                    out[m0 + 2, n0 + 2] += a22
                    out[m0 + 3, n0 + 2] += a23
                    out[m0, n0 + 3] += a30
                    out[m0 + 1, n0 + 3] += a31
                    out[m0 + 2, n0 + 3] += a32
                    out[m0 + 3, n0 + 3] += a33
                    if count:
                        adds += 16
                    m0 += 4
                # leftover rows walk each column's interleaved segment scalar
                for m in range(m0, mrows):
                    for c in range(4):
                        s0 = ptr[3 * (cell + c)]
                        s1 = ptr[3 * (cell + c) + 1]
                        acc = np.float32(0.0)
                        for t in range(s1 - s0):
                            v = xp[m, ai[s0 + t]]
                            if ((t // g) & 1) == 0:
                                acc += v
                            else:
                                acc -= v
                            if count:
                                adds += 1
                        out[m, n0 + c] += acc
                        if count:
                            adds += 1
                # excess signs run scalar for every row
                for c in range(4):
                    s1 = ptr[3 * (cell + c) + 1]
                    s2 = ptr[3 * (cell + c) + 2]
                    s3 = ptr[3 * (cell + c) + 3]
                    for m in range(mrows):
                        for i in range(s1, s2):
                            out[m, n0 + c] += xp[m, ai[i]]
                            if count:
                                adds += 1
                        for i in range(s2, s3):
                            out[m, n0 + c] -= xp[m, ai[i]]
                            if count:
                                adds += 1
        if use_alpha:
            for m in range(mrows):
                for n in range(ncols):
                    y = out[m, n]
                    if not y > 0.0:
                        out[m, n] = alpha * y
                        if count:
                            mults += 1
        return adds, mults

    return kern


def gemm_vectorized_optimal(
    Xp: PaddedInput,
    t: InterleavedBlockedTcsc,
    b: BiasVector,
    alpha: float | None = None,
    cfg: GemmConfig | None = None,
    counted: bool = False,
):
    """4x4 kernel over the blocked interleaved format with symmetric column
    groups: four column registers whose lanes map to four rows of X. Rows
    beyond the last multiple of 4 and the excess-sign remainders run scalar.
    Block size and group size are fixed by the format; cfg.alpha is used
    when no explicit alpha is given.
    """
    _check(Xp, t.K, len(b), t.N)
    if not t.symmetric_groups:
        raise ParameterError("gemm_vectorized_optimal needs symmetric 4-column groups (symmetric_cols=True)")
    if alpha is None and cfg is not None:
        alpha = cfg.alpha
    use_alpha, alpha_f = _alpha_args(alpha)
    out = np.empty((Xp.M, t.N), dtype=np.float32)
    adds, mults = _optimal_kernel(counted)(
        Xp.values, t.all_indices, t.col_segment_ptr, b.values, t.num_blocks, t.g,
        use_alpha, alpha_f, out,
    )
    result = DenseMatrix(out)
    return (result, OpCount(int(adds), int(mults))) if counted else result
