"""Ternary compressed sparse column (TCSC) format.

Sign is implicit: positive and negative entries live in separate index
arrays, so no value array is stored at all. Four arrays describe a K x N
ternary matrix:

    col_start_pos  (N+1) offsets into row_index_pos
    row_index_pos  row indices of the +1 entries, column by column
    col_start_neg  (N+1) offsets into row_index_neg
    row_index_neg  row indices of the -1 entries, column by column

All arrays are 32-bit integers; row indices are strictly increasing within
each column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import TernaryDense
from .errors import CorruptionError, ParameterError

INDEX_DTYPE = np.int32


def _as_index_array(a, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(a, dtype=INDEX_DTYPE)
    if arr.ndim != 1:
        raise ParameterError(f"{name} must be 1-D")
    return arr


@dataclass(frozen=True)
class Tcsc:
    """TCSC representation of a K x N ternary matrix.

    The constructor performs only structural checks (shapes, lengths);
    `validate` does the full semantic audit.
    """

    K: int
    N: int
    col_start_pos: np.ndarray
    row_index_pos: np.ndarray
    col_start_neg: np.ndarray
    row_index_neg: np.ndarray

    def __post_init__(self):
        if self.K < 1 or self.N < 1:
            raise ParameterError(f"K and N must be >= 1, got K={self.K} N={self.N}")
        for name in ("col_start_pos", "row_index_pos", "col_start_neg", "row_index_neg"):
            object.__setattr__(self, name, _as_index_array(getattr(self, name), name))
        if self.col_start_pos.shape[0] != self.N + 1:
            raise ParameterError(f"col_start_pos must have length N+1 = {self.N + 1}")
        if self.col_start_neg.shape[0] != self.N + 1:
            raise ParameterError(f"col_start_neg must have length N+1 = {self.N + 1}")

    @property
    def nnz(self) -> int:
        return self.row_index_pos.shape[0] + self.row_index_neg.shape[0]

    def format_bytes(self) -> int:
        return format_bytes(self)

    def to_dense(self) -> TernaryDense:
        return tcsc_to_dense(self)


def tcsc_from_dense(W: TernaryDense) -> Tcsc:
    """Build the TCSC form of a dense ternary matrix."""
    v = W.values
    pos_counts, row_index_pos = _column_counts_and_rows(v, 1)
    neg_counts, row_index_neg = _column_counts_and_rows(v, -1)
    col_start_pos = _offsets(pos_counts, W.N)
    col_start_neg = _offsets(neg_counts, W.N)
    return Tcsc(W.K, W.N, col_start_pos, row_index_pos, col_start_neg, row_index_neg)


def _column_counts_and_rows(v: np.ndarray, sign: int) -> tuple[np.ndarray, np.ndarray]:
    # nonzero on the transpose yields (col, row) pairs sorted by column then
    # row, which is exactly column-major order with rows ascending.
    cols, rows = np.nonzero(v.T == sign)
    counts = np.bincount(cols, minlength=v.shape[1])
    return counts, rows.astype(INDEX_DTYPE)


def _offsets(counts: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n + 1, dtype=INDEX_DTYPE)
    np.cumsum(counts, out=out[1:])
    return out


def tcsc_to_dense(t: Tcsc) -> TernaryDense:
    """Decode back to dense form.

    Raises CorruptionError if any (row, col) cell is claimed by both sign
    arrays or claimed twice by the same one.
    """
    pos_cols = np.repeat(np.arange(t.N), np.diff(t.col_start_pos))
    neg_cols = np.repeat(np.arange(t.N), np.diff(t.col_start_neg))
    _check_bounds(t)
    hits_pos = np.zeros((t.K, t.N), dtype=np.int8)
    hits_neg = np.zeros((t.K, t.N), dtype=np.int8)
    np.add.at(hits_pos, (t.row_index_pos, pos_cols), 1)
    np.add.at(hits_neg, (t.row_index_neg, neg_cols), 1)
    if (hits_pos > 1).any() or (hits_neg > 1).any():
        raise CorruptionError("duplicate row index within a column")
    overlap = (hits_pos == 1) & (hits_neg == 1)
    if overlap.any():
        k, n = np.argwhere(overlap)[0]
        raise CorruptionError(f"cell ({k}, {n}) appears in both sign arrays")
    return TernaryDense((hits_pos - hits_neg).astype(np.int8))


def _check_bounds(t: Tcsc) -> None:
    for name, rows in (("row_index_pos", t.row_index_pos), ("row_index_neg", t.row_index_neg)):
        if rows.size and (rows.min() < 0 or rows.max() >= t.K):
            raise CorruptionError(f"{name} contains a row index outside [0, {t.K})")


def validate(t: Tcsc) -> list[str]:
    """Full semantic audit. Returns a list of violations; empty means valid."""
    problems: list[str] = []
    for name, starts, rows in (
        ("pos", t.col_start_pos, t.row_index_pos),
        ("neg", t.col_start_neg, t.row_index_neg),
    ):
        if starts[0] != 0:
            problems.append(f"col_start_{name}[0] = {starts[0]}, expected 0")
        if starts[-1] != rows.shape[0]:
            problems.append(
                f"col_start_{name}[-1] = {starts[-1]}, expected row_index_{name} length {rows.shape[0]}"
            )
        if (np.diff(starts) < 0).any():
            problems.append(f"col_start_{name} is not non-decreasing")
            continue
        lo = max(0, int(starts[0]))
        hi = min(rows.shape[0], int(starts[-1]))
        for n in range(t.N):
            a, b = int(starts[n]), int(starts[n + 1])
            if a < lo or b > hi:
                continue
            col = rows[a:b]
            if col.size and (np.diff(col) <= 0).any():
                problems.append(f"row_index_{name} not strictly increasing in column {n}")
            if col.size and (col.min() < 0 or col.max() >= t.K):
                problems.append(f"row_index_{name} out of range [0, {t.K}) in column {n}")
    if not problems:
        pos_cols = np.repeat(np.arange(t.N), np.diff(t.col_start_pos))
        neg_cols = np.repeat(np.arange(t.N), np.diff(t.col_start_neg))
        pos_set = set(zip(t.row_index_pos.tolist(), pos_cols.tolist()))
        neg_set = set(zip(t.row_index_neg.tolist(), neg_cols.tolist()))
        both = pos_set & neg_set
        if both:
            k, n = sorted(both)[0]
            problems.append(f"cell ({k}, {n}) appears in both sign arrays")
    return problems


def format_bytes(fmt) -> int:
    """Total payload bytes of a sparse format's arrays.

    For TCSC this is 4 * (len(col_start_pos) + len(col_start_neg) +
    len(row_index_pos) + len(row_index_neg)). Other formats report their own
    array footprints through a format_bytes method.
    """
    if isinstance(fmt, Tcsc):
        return 4 * (
            t_len(fmt.col_start_pos)
            + t_len(fmt.col_start_neg)
            + t_len(fmt.row_index_pos)
            + t_len(fmt.row_index_neg)
        )
    method = getattr(fmt, "format_bytes", None)
    if method is None:
        raise ParameterError(f"object of type {type(fmt).__name__} is not a sparse format")
    return method()


def t_len(a: np.ndarray) -> int:
    return int(a.shape[0])


def tcsc_bytes_for(K: int, N: int, nnz: int) -> int:
    """TCSC byte size from dimensions alone (two N+1 offset arrays + nnz indices)."""
    if K < 1 or N < 1 or nnz < 0 or nnz > K * N:
        raise ParameterError(f"inconsistent dimensions K={K} N={N} nnz={nnz}")
    return 4 * (2 * (N + 1) + nnz)
