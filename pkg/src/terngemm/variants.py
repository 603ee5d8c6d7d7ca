"""Derived sparse ternary formats.

Each format reshapes the base TCSC layout to give a kernel a friendlier
access pattern:

    BlockedTcsc              row-range blocks for cache locality
    InterleavedTcsc          alternating sign runs inside each column
    InterleavedBlockedTcsc   both of the above in one structure
    InvertedTcsc             one merged index array, sign in the bit pattern
    CompressedTcsc           five ternary values packed into one byte
    SymmetricInterleavedTcsc equal-length column streams for 4-wide lanes

All index arrays are int32. A "dummy" index equals K and must only ever be
dereferenced through a padded input row whose slot K holds zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dense import TernaryDense
from .errors import InvalidCodeError, ParameterError
from .tcsc import INDEX_DTYPE

DEFAULT_BLOCK_SIZE = 4096
DEFAULT_GROUP_SCALAR = 4
DEFAULT_GROUP_SIMD = 2

# Packed-byte geometry: 5 ternary digits per byte, 3**5 = 243 used codes.
PACK_WIDTH = 5
CODE_COUNT = 3**PACK_WIDTH
_POW3 = np.array([3**i for i in range(PACK_WIDTH)], dtype=np.int64)


def resolve_block_size(B: int | None, K: int) -> int:
    b = min(K, DEFAULT_BLOCK_SIZE) if B is None else B
    if b < 1:
        raise ParameterError(f"block size must be >= 1, got {b}")
    return b


def _column_signs(v: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    col = v[:, n]
    return (
        np.flatnonzero(col == 1).astype(INDEX_DTYPE),
        np.flatnonzero(col == -1).astype(INDEX_DTYPE),
    )


def _interleave(pos: np.ndarray, neg: np.ndarray, g: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split one column into (interleaved, pos remainder, neg remainder).

    The interleaved part carries r = g * floor(min(|pos|, |neg|) / g) indices
    of each sign, laid out as alternating runs of g, positives first.
    """
    r = g * (min(pos.shape[0], neg.shape[0]) // g)
    if r == 0:
        inter = np.empty(0, dtype=INDEX_DTYPE)
    else:
        runs = np.stack([pos[:r].reshape(-1, g), neg[:r].reshape(-1, g)], axis=1)
        inter = runs.reshape(-1).astype(INDEX_DTYPE)
    return inter, pos[r:], neg[r:]


def _decode_interleaved(w: np.ndarray, col: int, seg: np.ndarray, g: int, K: int) -> None:
    """Scatter one interleaved segment back into dense column `col`.

    Sign alternates every g entries, positives first; dummy index K is
    skipped.
    """
    for t in range(seg.shape[0]):
        idx = int(seg[t])
        if idx == K:
            continue
        w[idx, col] = 1 if ((t // g) % 2 == 0) else -1


# ---------------------------------------------------------------------------
# Blocked
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockedTcsc:
    """TCSC split into row-range blocks of height B.

    Block b covers rows [b*B, min((b+1)*B, K)). Offsets are stored as one
    (num_blocks, N+1) table per sign, indexing into shared flat row-index
    arrays; this is the concatenation of the per-block structures.
    Row indices stay global (they are not rebased per block).
    """

    K: int
    N: int
    B: int
    col_start_pos: np.ndarray
    row_index_pos: np.ndarray
    col_start_neg: np.ndarray
    row_index_neg: np.ndarray

    def __post_init__(self):
        if self.B < 1:
            raise ParameterError(f"block size must be >= 1, got {self.B}")
        expected = (self.num_blocks, self.N + 1)
        for name in ("col_start_pos", "col_start_neg"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=INDEX_DTYPE)
            if arr.shape != expected:
                raise ParameterError(f"{name} must have shape {expected}, got {arr.shape}")
            object.__setattr__(self, name, arr)
        for name in ("row_index_pos", "row_index_neg"):
            object.__setattr__(
                self, name, np.ascontiguousarray(getattr(self, name), dtype=INDEX_DTYPE)
            )

    @property
    def num_blocks(self) -> int:
        return -(-self.K // self.B)

    @property
    def nnz(self) -> int:
        return self.row_index_pos.shape[0] + self.row_index_neg.shape[0]

    def format_bytes(self) -> int:
        return 4 * (
            self.col_start_pos.size
            + self.col_start_neg.size
            + self.row_index_pos.size
            + self.row_index_neg.size
        )

    def to_dense(self) -> TernaryDense:
        w = np.zeros((self.K, self.N), dtype=np.int8)
        for sign, starts, rows in (
            (1, self.col_start_pos, self.row_index_pos),
            (-1, self.col_start_neg, self.row_index_neg),
        ):
            for blk in range(self.num_blocks):
                for n in range(self.N):
                    w[rows[starts[blk, n] : starts[blk, n + 1]], n] = sign
        return TernaryDense(w)


def blocked_from_dense(W: TernaryDense, B: int | None = None) -> BlockedTcsc:
    """Build the blocked TCSC form. B defaults to min(K, 4096)."""
    b = resolve_block_size(B, W.K)
    num_blocks = -(-W.K // b)
    v = W.values
    csp = np.zeros((num_blocks, W.N + 1), dtype=INDEX_DTYPE)
    csn = np.zeros((num_blocks, W.N + 1), dtype=INDEX_DTYPE)
    rip: list[np.ndarray] = []
    rin: list[np.ndarray] = []
    tp = tn = 0
    for blk in range(num_blocks):
        lo, hi = blk * b, min((blk + 1) * b, W.K)
        sub = v[lo:hi]
        pos_cols, pos_rows = np.nonzero(sub.T == 1)
        neg_cols, neg_rows = np.nonzero(sub.T == -1)
        rip.append((pos_rows + lo).astype(INDEX_DTYPE))
        rin.append((neg_rows + lo).astype(INDEX_DTYPE))
        csp[blk, 0], csn[blk, 0] = tp, tn
        np.cumsum(np.bincount(pos_cols, minlength=W.N), out=csp[blk, 1:])
        np.cumsum(np.bincount(neg_cols, minlength=W.N), out=csn[blk, 1:])
        csp[blk, 1:] += tp
        csn[blk, 1:] += tn
        tp += pos_rows.shape[0]
        tn += neg_rows.shape[0]
    return BlockedTcsc(
        W.K,
        W.N,
        b,
        csp,
        np.concatenate(rip) if rip else np.empty(0, INDEX_DTYPE),
        csn,
        np.concatenate(rin) if rin else np.empty(0, INDEX_DTYPE),
    )


# ---------------------------------------------------------------------------
# Interleaved
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InterleavedTcsc:
    """Per column: alternating sign runs of g, then leftover +1s, then -1s.

    col_segment_ptr has length 3N + 1; for column j the four boundaries are
    ptr[3j] (start), ptr[3j+1] (end of interleaved / start of +1 remainder),
    ptr[3j+2] (start of -1 remainder), ptr[3j+3] (end).
    """

    K: int
    N: int
    g: int
    indices: np.ndarray
    col_segment_ptr: np.ndarray

    def __post_init__(self):
        if self.g < 1:
            raise ParameterError(f"group size must be >= 1, got {self.g}")
        ptr = np.ascontiguousarray(self.col_segment_ptr, dtype=INDEX_DTYPE)
        if ptr.shape != (3 * self.N + 1,):
            raise ParameterError(f"col_segment_ptr must have length {3 * self.N + 1}")
        object.__setattr__(self, "col_segment_ptr", ptr)
        object.__setattr__(self, "indices", np.ascontiguousarray(self.indices, dtype=INDEX_DTYPE))

    @property
    def nnz(self) -> int:
        return self.indices.shape[0]

    def format_bytes(self) -> int:
        return 4 * (self.indices.size + self.col_segment_ptr.size)

    def to_dense(self) -> TernaryDense:
        w = np.zeros((self.K, self.N), dtype=np.int8)
        ptr = self.col_segment_ptr
        for n in range(self.N):
            s0, s1, s2, s3 = (int(ptr[3 * n + i]) for i in range(4))
            _decode_interleaved(w, n, self.indices[s0:s1], self.g, self.K)
            w[self.indices[s1:s2], n] = 1
            w[self.indices[s2:s3], n] = -1
        return TernaryDense(w)


def interleaved_from_dense(W: TernaryDense, g: int = DEFAULT_GROUP_SCALAR) -> InterleavedTcsc:
    """Build the interleaved form. Scalar tuning default is g = 4."""
    if g < 1:
        raise ParameterError(f"group size must be >= 1, got {g}")
    chunks: list[np.ndarray] = []
    ptr = np.zeros(3 * W.N + 1, dtype=INDEX_DTYPE)
    off = 0
    for n in range(W.N):
        pos, neg = _column_signs(W.values, n)
        inter, rem_pos, rem_neg = _interleave(pos, neg, g)
        for i, part in enumerate((inter, rem_pos, rem_neg)):
            chunks.append(part)
            off += part.shape[0]
            ptr[3 * n + i + 1] = off
    indices = np.concatenate(chunks) if chunks else np.empty(0, INDEX_DTYPE)
    return InterleavedTcsc(W.K, W.N, g, indices, ptr)


# ---------------------------------------------------------------------------
# Interleaved + blocked
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InterleavedBlockedTcsc:
    """Interleaved columns inside row-range blocks.

    One flat index array; col_segment_ptr has length 3*num_blocks*N + 1 and
    is addressed by cell = block*N + column exactly like InterleavedTcsc's
    per-column boundaries.

    With symmetric_groups set, every (block, 4-column group) has
    equal-length interleaved segments, padded with whole dummy pairs
    (index K); kernels must then read X through a padded row.
    """

    K: int
    N: int
    B: int
    g: int
    all_indices: np.ndarray
    col_segment_ptr: np.ndarray
    symmetric_groups: bool = False

    def __post_init__(self):
        if self.B < 1 or self.g < 1:
            raise ParameterError(f"need B >= 1 and g >= 1, got B={self.B} g={self.g}")
        if self.symmetric_groups and self.N % 4 != 0:
            raise ParameterError(f"symmetric groups need N divisible by 4, got N={self.N}")
        ptr = np.ascontiguousarray(self.col_segment_ptr, dtype=INDEX_DTYPE)
        expected = 3 * self.num_blocks * self.N + 1
        if ptr.shape != (expected,):
            raise ParameterError(f"col_segment_ptr must have length {expected}")
        object.__setattr__(self, "col_segment_ptr", ptr)
        object.__setattr__(
            self, "all_indices", np.ascontiguousarray(self.all_indices, dtype=INDEX_DTYPE)
        )

    @property
    def num_blocks(self) -> int:
        return -(-self.K // self.B)

    @property
    def nnz(self) -> int:
        if not self.symmetric_groups:
            return self.all_indices.shape[0]
        return int(np.count_nonzero(self.all_indices != self.K))

    def format_bytes(self) -> int:
        return 4 * (self.all_indices.size + self.col_segment_ptr.size)

    def to_dense(self) -> TernaryDense:
        w = np.zeros((self.K, self.N), dtype=np.int8)
        ptr = self.col_segment_ptr
        for blk in range(self.num_blocks):
            for n in range(self.N):
                cell = blk * self.N + n
                s0, s1, s2, s3 = (int(ptr[3 * cell + i]) for i in range(4))
                _decode_interleaved(w, n, self.all_indices[s0:s1], self.g, self.K)
                w[self.all_indices[s1:s2], n] = 1
                w[self.all_indices[s2:s3], n] = -1
        return TernaryDense(w)


def interleaved_blocked_from_dense(
    W: TernaryDense,
    B: int | None = None,
    g: int = DEFAULT_GROUP_SIMD,
    symmetric_cols: bool = False,
) -> InterleavedBlockedTcsc:
    """Build the interleaved+blocked form. Defaults: B = min(K, 4096), g = 2.

    symmetric_cols equalizes interleaved segment lengths across each
    4-column group per block (dummy-pair padding), which the 4x4 vectorized
    kernel needs to run its column lanes in lockstep.
    """
    if symmetric_cols and W.N % 4 != 0:
        raise ParameterError(f"symmetric groups need N divisible by 4, got N={W.N}")
    if g < 1:
        raise ParameterError(f"group size must be >= 1, got {g}")
    b = resolve_block_size(B, W.K)
    num_blocks = -(-W.K // b)
    dummy = np.asarray([W.K], dtype=INDEX_DTYPE)
    chunks: list[np.ndarray] = []
    ptr = np.zeros(3 * num_blocks * W.N + 1, dtype=INDEX_DTYPE)
    off = 0
    for blk in range(num_blocks):
        lo, hi = blk * b, min((blk + 1) * b, W.K)
        sub = W.values[lo:hi]
        cols = [
            _interleave(*(idx + lo for idx in _column_signs_sub(sub, n)), g)
            for n in range(W.N)
        ]
        if symmetric_cols:
            cols = _pad_groups(cols, g, dummy)
        for n, (inter, rem_pos, rem_neg) in enumerate(cols):
            cell = blk * W.N + n
            for i, part in enumerate((inter, rem_pos, rem_neg)):
                chunks.append(part)
                off += part.shape[0]
                ptr[3 * cell + i + 1] = off
    indices = np.concatenate(chunks) if chunks else np.empty(0, INDEX_DTYPE)
    return InterleavedBlockedTcsc(W.K, W.N, b, g, indices, ptr, symmetric_cols)


def _column_signs_sub(sub: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    col = sub[:, n]
    return (
        np.flatnonzero(col == 1).astype(INDEX_DTYPE),
        np.flatnonzero(col == -1).astype(INDEX_DTYPE),
    )


def _pad_groups(
    cols: list[tuple[np.ndarray, np.ndarray, np.ndarray]], g: int, dummy: np.ndarray
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Pad interleaved segments with whole dummy pairs to the 4-group max."""
    out = list(cols)
    for n0 in range(0, len(cols), 4):
        target = max(cols[n0 + c][0].shape[0] for c in range(4))
        for c in range(4):
            inter, rem_pos, rem_neg = cols[n0 + c]
            short = target - inter.shape[0]
            if short:
                # short is a multiple of 2g: all segments are multiples of
                # 2g entries, so the padding continues the run pattern.
                inter = np.concatenate([inter, np.repeat(dummy, short)])
            out[n0 + c] = (inter.astype(INDEX_DTYPE), rem_pos, rem_neg)
    return out


# ---------------------------------------------------------------------------
# Inverted index encoding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvertedTcsc:
    """One merged index array per column; sign lives in the bit pattern.

    A +1 at row i is stored as i, a -1 as ~i (bitwise NOT), so the sign test
    is one comparison against zero and the row recovers with another NOT.
    Entries within a column are ordered by decoded row.
    """

    K: int
    N: int
    col_start: np.ndarray
    entries: np.ndarray

    def __post_init__(self):
        starts = np.ascontiguousarray(self.col_start, dtype=INDEX_DTYPE)
        if starts.shape != (self.N + 1,):
            raise ParameterError(f"col_start must have length N+1 = {self.N + 1}")
        object.__setattr__(self, "col_start", starts)
        object.__setattr__(self, "entries", np.ascontiguousarray(self.entries, dtype=INDEX_DTYPE))

    @property
    def nnz(self) -> int:
        return self.entries.shape[0]

    def format_bytes(self) -> int:
        return 4 * (self.col_start.size + self.entries.size)

    def to_dense(self) -> TernaryDense:
        w = np.zeros((self.K, self.N), dtype=np.int8)
        for n in range(self.N):
            seg = self.entries[self.col_start[n] : self.col_start[n + 1]]
            pos = seg[seg >= 0]
            neg = np.invert(seg[seg < 0])
            w[pos, n] = 1
            w[neg, n] = -1
        return TernaryDense(w)


def encode_signed_index(row: int, sign: int) -> int:
    """Map (row, sign) to the merged encoding: row for +1, ~row for -1."""
    if sign == 1:
        return row
    if sign == -1:
        return ~row
    raise ParameterError(f"sign must be +1 or -1, got {sign}")


def decode_signed_index(v: int) -> tuple[int, int]:
    """Inverse of encode_signed_index: value -> (row, sign)."""
    return (v, 1) if v >= 0 else (~v, -1)


def inverted_from_dense(W: TernaryDense) -> InvertedTcsc:
    cols, rows = np.nonzero(W.values.T != 0)
    vals = W.values[rows, cols]
    entries = np.where(vals > 0, rows, np.invert(rows)).astype(INDEX_DTYPE)
    col_start = np.zeros(W.N + 1, dtype=INDEX_DTYPE)
    np.cumsum(np.bincount(cols, minlength=W.N), out=col_start[1:])
    return InvertedTcsc(W.K, W.N, col_start, entries)


# ---------------------------------------------------------------------------
# Packed bytes: 5 ternary digits per byte
# ---------------------------------------------------------------------------


def compress5(values) -> int:
    """Pack 5 ternary values into one byte code.

    code = sum((values[i] + 1) * 3**i), little-endian in the digit order, so
    all-zero packs to 121 and all +1 to 242. Codes 243..255 are unused.
    """
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape != (PACK_WIDTH,):
        raise ParameterError(f"compress5 needs exactly {PACK_WIDTH} values, got shape {vals.shape}")
    if ((vals < -1) | (vals > 1)).any():
        raise ParameterError(f"values must be in {{-1, 0, +1}}, got {values!r}")
    return int(((vals + 1) * _POW3).sum())


def decompress5(code: int) -> tuple[int, ...]:
    """Unpack one byte code back to 5 ternary values."""
    if not 0 <= code < CODE_COUNT:
        raise InvalidCodeError(f"code must be in [0, {CODE_COUNT}), got {code}")
    return tuple(int(code // 3**i % 3) - 1 for i in range(PACK_WIDTH))


def _build_decode_table() -> np.ndarray:
    codes = np.arange(CODE_COUNT, dtype=np.int64)
    digits = (codes[:, None] // _POW3[None, :]) % 3 - 1
    table = digits.astype(np.int8)
    table.flags.writeable = False
    return table


# DECODE_TABLE[code, i] is the i-th ternary value of that code. 243 rows; a
# lookup costs no arithmetic in the kernels.
DECODE_TABLE = _build_decode_table()


@dataclass(frozen=True)
class CompressedTcsc:
    """Column-major packed bytes: each column is ceil(K/5) codes.

    Columns are zero-padded to a multiple of 5 before packing, so trailing
    pad positions always decode to 0 and never touch X.
    """

    K: int
    N: int
    codes: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.codes, dtype=np.uint8)
        expected = (self.N, -(-self.K // PACK_WIDTH))
        if arr.shape != expected:
            raise ParameterError(f"codes must have shape {expected}, got {arr.shape}")
        if (arr >= CODE_COUNT).any():
            bad = int(arr[arr >= CODE_COUNT][0])
            raise InvalidCodeError(f"code {bad} is outside [0, {CODE_COUNT})")
        object.__setattr__(self, "codes", arr)

    @property
    def groups_per_col(self) -> int:
        return self.codes.shape[1]

    def format_bytes(self) -> int:
        # One byte per code; the 243-row decode table is program data shared
        # by every matrix, not part of any one matrix's footprint.
        return int(self.codes.size)

    def to_dense(self) -> TernaryDense:
        digits = DECODE_TABLE[self.codes]  # (N, groups, 5)
        cols = digits.reshape(self.N, -1)[:, : self.K]
        return TernaryDense(cols.T.copy())

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(DECODE_TABLE[self.codes].reshape(self.N, -1)[:, : self.K]))


def compressed_from_dense(W: TernaryDense) -> CompressedTcsc:
    groups = -(-W.K // PACK_WIDTH)
    padded = np.zeros((W.N, groups * PACK_WIDTH), dtype=np.int64)
    padded[:, : W.K] = W.values.T
    digits = (padded + 1).reshape(W.N, groups, PACK_WIDTH)
    codes = (digits * _POW3[None, None, :]).sum(axis=2).astype(np.uint8)
    return CompressedTcsc(W.K, W.N, codes)


# ---------------------------------------------------------------------------
# Symmetric interleaved (lane-lockstep streams)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricInterleavedTcsc:
    """Interleaved streams with identical lengths inside 4-column groups.

    Every nonzero of a column goes into one stream of alternating sign runs
    (g per run, positives first). Within each group of 4 columns all streams
    hold the same number of index pairs, a multiple of 4; the deficit sign
    and short columns are padded with the dummy index K, which must resolve
    to a zero slot in a padded input row. Column j's stream occupies
    indices[col_ptr[j] : col_ptr[j+1]].
    """

    K: int
    N: int
    g: int
    indices: np.ndarray
    col_ptr: np.ndarray

    def __post_init__(self):
        if self.N % 4 != 0:
            raise ParameterError(f"N must be divisible by 4, got {self.N}")
        if self.g < 1:
            raise ParameterError(f"group size must be >= 1, got {self.g}")
        ptr = np.ascontiguousarray(self.col_ptr, dtype=INDEX_DTYPE)
        if ptr.shape != (self.N + 1,):
            raise ParameterError(f"col_ptr must have length N+1 = {self.N + 1}")
        object.__setattr__(self, "col_ptr", ptr)
        object.__setattr__(self, "indices", np.ascontiguousarray(self.indices, dtype=INDEX_DTYPE))

    def pairs_in_group(self, group: int) -> int:
        n = 4 * group
        return (int(self.col_ptr[n + 1]) - int(self.col_ptr[n])) // 2

    @property
    def dummy_count(self) -> int:
        return int(np.count_nonzero(self.indices == self.K))

    @property
    def nnz(self) -> int:
        return self.indices.shape[0] - self.dummy_count

    def format_bytes(self) -> int:
        return 4 * (self.indices.size + self.col_ptr.size)

    def to_dense(self) -> TernaryDense:
        w = np.zeros((self.K, self.N), dtype=np.int8)
        for n in range(self.N):
            seg = self.indices[self.col_ptr[n] : self.col_ptr[n + 1]]
            _decode_interleaved(w, n, seg, self.g, self.K)
        return TernaryDense(w)


def symmetric_from_dense(
    W: TernaryDense, g: int = DEFAULT_GROUP_SIMD
) -> SymmetricInterleavedTcsc:
    """Build the symmetric interleaved form (SIMD default g = 2).

    Per 4-column group the pair count is the group's max of max(#pos, #neg),
    rounded up to a multiple of lcm(4, g) so runs stay whole and the count
    is a multiple of 4. An all-zero group stores an empty stream.
    """
    if W.N % 4 != 0:
        raise ParameterError(f"N must be divisible by 4, got {W.N}")
    if g < 1:
        raise ParameterError(f"group size must be >= 1, got {g}")
    quantum = math.lcm(4, g)
    chunks: list[np.ndarray] = []
    col_ptr = np.zeros(W.N + 1, dtype=INDEX_DTYPE)
    off = 0
    for n0 in range(0, W.N, 4):
        signs = [_column_signs(W.values, n0 + c) for c in range(4)]
        need = max(max(p.shape[0], q.shape[0]) for p, q in signs)
        pairs = -(-need // quantum) * quantum if need else 0
        for c in range(4):
            pos, neg = signs[c]
            stream = _padded_stream(pos, neg, pairs, g, W.K)
            chunks.append(stream)
            off += stream.shape[0]
            col_ptr[n0 + c + 1] = off
    indices = np.concatenate(chunks) if chunks else np.empty(0, INDEX_DTYPE)
    return SymmetricInterleavedTcsc(W.K, W.N, g, indices, col_ptr)


def _padded_stream(pos: np.ndarray, neg: np.ndarray, pairs: int, g: int, K: int) -> np.ndarray:
    if pairs == 0:
        return np.empty(0, dtype=INDEX_DTYPE)
    padded_pos = np.full(pairs, K, dtype=INDEX_DTYPE)
    padded_pos[: pos.shape[0]] = pos
    padded_neg = np.full(pairs, K, dtype=INDEX_DTYPE)
    padded_neg[: neg.shape[0]] = neg
    runs = np.stack([padded_pos.reshape(-1, g), padded_neg.reshape(-1, g)], axis=1)
    return runs.reshape(-1)
