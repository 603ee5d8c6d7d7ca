"""Binary on-disk formats for ternary matrices and their sparse forms.

Dense ternary file:

    magic "TGW1" | u32 version | u32 K | u32 N | K*N signed bytes row-major

Sparse container:

    magic "TGS1" | u32 version | u32 format tag | u32 K | u32 N
    | u32 B (0 if unused) | u32 g (0 if unused) | u32 flags | u32 nsections
    | sections

Each section is u32 name length, the UTF-8 name, u32 dtype code
(0 = int32, 1 = uint8), u32 element count, then the raw little-endian
payload. flags bit 0 marks symmetric 4-column groups.

Deterministic layout end to end, so convert round trips byte-identically.
"""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np

from .dense import TernaryDense
from .errors import ParameterError, ParseError
from .tcsc import Tcsc
from .variants import (
    BlockedTcsc,
    CompressedTcsc,
    InterleavedBlockedTcsc,
    InterleavedTcsc,
    InvertedTcsc,
    SymmetricInterleavedTcsc,
)

DENSE_MAGIC = b"TGW1"
SPARSE_MAGIC = b"TGS1"
FILE_VERSION = 1

FORMAT_TAGS = {
    "tcsc": 1,
    "blocked": 2,
    "interleaved": 3,
    "interleaved_blocked": 4,
    "inverted": 5,
    "compressed": 6,
    "symmetric": 7,
}
TAG_NAMES = {v: k for k, v in FORMAT_TAGS.items()}

_DTYPE_CODES = {0: np.dtype("<i4"), 1: np.dtype("u1")}
FLAG_SYMMETRIC = 1


class _Reader:
    """Byte cursor that reports its offset in every error."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int, what: str) -> bytes:
        if self.pos + n > len(self.data):
            raise ParseError(f"truncated file while reading {what}", self.pos)
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u32(self, what: str) -> int:
        return struct.unpack("<I", self.take(4, what))[0]

    def done(self) -> None:
        if self.pos != len(self.data):
            raise ParseError(f"{len(self.data) - self.pos} trailing bytes after payload", self.pos)


def save_dense(W: TernaryDense, fh: BinaryIO) -> None:
    fh.write(DENSE_MAGIC)
    fh.write(struct.pack("<III", FILE_VERSION, W.K, W.N))
    fh.write(W.values.tobytes(order="C"))


def load_dense(data: bytes) -> TernaryDense:
    r = _Reader(data)
    magic = r.take(4, "magic")
    if magic != DENSE_MAGIC:
        raise ParseError(f"bad magic {magic!r}, expected {DENSE_MAGIC!r}", 0)
    version = r.u32("version")
    if version != FILE_VERSION:
        raise ParseError(f"unsupported version {version}", 4)
    k = r.u32("K")
    n = r.u32("N")
    if k < 1 or n < 1:
        raise ParseError(f"bad dimensions K={k} N={n}", 8)
    payload_at = r.pos
    payload = np.frombuffer(r.take(k * n, "matrix payload"), dtype=np.int8)
    r.done()
    bad = np.flatnonzero((payload < -1) | (payload > 1))
    if bad.size:
        raise ParseError(f"byte value {payload[bad[0]]} is not a ternary entry", payload_at + int(bad[0]))
    return TernaryDense(payload.reshape(k, n).copy())


def _sections_for(fmt) -> tuple[int, int, int, int, list[tuple[str, np.ndarray]]]:
    """Return (tag, B, g, flags, named payload arrays) for a format object."""
    if isinstance(fmt, Tcsc):
        return FORMAT_TAGS["tcsc"], 0, 0, 0, [
            ("col_start_pos", fmt.col_start_pos),
            ("row_index_pos", fmt.row_index_pos),
            ("col_start_neg", fmt.col_start_neg),
            ("row_index_neg", fmt.row_index_neg),
        ]
    if isinstance(fmt, BlockedTcsc):
        return FORMAT_TAGS["blocked"], fmt.B, 0, 0, [
            ("col_start_pos", fmt.col_start_pos.reshape(-1)),
            ("row_index_pos", fmt.row_index_pos),
            ("col_start_neg", fmt.col_start_neg.reshape(-1)),
            ("row_index_neg", fmt.row_index_neg),
        ]
    if isinstance(fmt, InterleavedBlockedTcsc):
        flags = FLAG_SYMMETRIC if fmt.symmetric_groups else 0
        return FORMAT_TAGS["interleaved_blocked"], fmt.B, fmt.g, flags, [
            ("all_indices", fmt.all_indices),
            ("col_segment_ptr", fmt.col_segment_ptr),
        ]
    if isinstance(fmt, InterleavedTcsc):
        return FORMAT_TAGS["interleaved"], 0, fmt.g, 0, [
            ("indices", fmt.indices),
            ("col_segment_ptr", fmt.col_segment_ptr),
        ]
    if isinstance(fmt, InvertedTcsc):
        return FORMAT_TAGS["inverted"], 0, 0, 0, [
            ("col_start", fmt.col_start),
            ("entries", fmt.entries),
        ]
    if isinstance(fmt, CompressedTcsc):
        return FORMAT_TAGS["compressed"], 0, 0, 0, [("codes", fmt.codes.reshape(-1))]
    if isinstance(fmt, SymmetricInterleavedTcsc):
        return FORMAT_TAGS["symmetric"], 0, fmt.g, 0, [
            ("indices", fmt.indices),
            ("col_ptr", fmt.col_ptr),
        ]
    raise ParameterError(f"cannot serialize object of type {type(fmt).__name__}")


def save_sparse(fmt, fh: BinaryIO) -> None:
    tag, b, g, flags, sections = _sections_for(fmt)
    fh.write(SPARSE_MAGIC)
    fh.write(struct.pack("<IIIIIII", FILE_VERSION, tag, fmt.K, fmt.N, b, g, flags))
    fh.write(struct.pack("<I", len(sections)))
    for name, arr in sections:
        payload = np.ascontiguousarray(arr)
        code = 1 if payload.dtype == np.uint8 else 0
        payload = payload.astype(_DTYPE_CODES[code], copy=False)
        encoded = name.encode("utf-8")
        fh.write(struct.pack("<I", len(encoded)))
        fh.write(encoded)
        fh.write(struct.pack("<II", code, payload.size))
        fh.write(payload.tobytes(order="C"))


def load_sparse(data: bytes):
    """Parse a sparse container back into its format object."""
    r = _Reader(data)
    magic = r.take(4, "magic")
    if magic != SPARSE_MAGIC:
        raise ParseError(f"bad magic {magic!r}, expected {SPARSE_MAGIC!r}", 0)
    version = r.u32("version")
    if version != FILE_VERSION:
        raise ParseError(f"unsupported version {version}", 4)
    tag = r.u32("format tag")
    if tag not in TAG_NAMES:
        raise ParseError(f"unknown format tag {tag}", 8)
    k = r.u32("K")
    n = r.u32("N")
    b = r.u32("B")
    g = r.u32("g")
    flags = r.u32("flags")
    nsec = r.u32("section count")
    sections: dict[str, np.ndarray] = {}
    for _ in range(nsec):
        name_len = r.u32("section name length")
        name = r.take(name_len, "section name").decode("utf-8")
        code = r.u32("section dtype")
        if code not in _DTYPE_CODES:
            raise ParseError(f"unknown dtype code {code}", r.pos - 4)
        count = r.u32("section element count")
        dtype = _DTYPE_CODES[code]
        raw = r.take(count * dtype.itemsize, f"section {name!r} payload")
        sections[name] = np.frombuffer(raw, dtype=dtype).copy()
    r.done()
    return _rebuild(TAG_NAMES[tag], k, n, b, g, flags, sections, len(data))


def _need(sections: dict, name: str, total: int) -> np.ndarray:
    if name not in sections:
        raise ParseError(f"missing section {name!r}", total)
    return sections[name]


def _rebuild(name: str, k: int, n: int, b: int, g: int, flags: int, sec: dict, total: int):
    try:
        if name == "tcsc":
            return Tcsc(
                k, n,
                _need(sec, "col_start_pos", total), _need(sec, "row_index_pos", total),
                _need(sec, "col_start_neg", total), _need(sec, "row_index_neg", total),
            )
        if name == "blocked":
            nb = -(-k // b) if b else 0
            return BlockedTcsc(
                k, n, b,
                _need(sec, "col_start_pos", total).reshape(nb, n + 1),
                _need(sec, "row_index_pos", total),
                _need(sec, "col_start_neg", total).reshape(nb, n + 1),
                _need(sec, "row_index_neg", total),
            )
        if name == "interleaved":
            return InterleavedTcsc(
                k, n, g, _need(sec, "indices", total), _need(sec, "col_segment_ptr", total)
            )
        if name == "interleaved_blocked":
            return InterleavedBlockedTcsc(
                k, n, b, g,
                _need(sec, "all_indices", total), _need(sec, "col_segment_ptr", total),
                bool(flags & FLAG_SYMMETRIC),
            )
        if name == "inverted":
            return InvertedTcsc(k, n, _need(sec, "col_start", total), _need(sec, "entries", total))
        if name == "compressed":
            groups = -(-k // 5)
            return CompressedTcsc(k, n, _need(sec, "codes", total).reshape(n, groups))
        return SymmetricInterleavedTcsc(
            k, n, g, _need(sec, "indices", total), _need(sec, "col_ptr", total)
        )
    except (ParameterError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"inconsistent {name} payload: {exc}", total) from exc


def load_any(data: bytes):
    """Dispatch on magic: returns TernaryDense or a sparse format object."""
    if len(data) < 4:
        raise ParseError("file shorter than a magic number", 0)
    head = data[:4]
    if head == DENSE_MAGIC:
        return load_dense(data)
    if head == SPARSE_MAGIC:
        return load_sparse(data)
    raise ParseError(f"unrecognized magic {head!r}", 0)
