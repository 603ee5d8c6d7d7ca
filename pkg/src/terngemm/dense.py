"""Dense matrix types, deterministic generators, and the reference GEMM.

Everything downstream (formats, kernels, benchmarks) is checked against
`oracle_gemm`, so this module deliberately stays on plain numpy with no
shared code paths into the kernel implementations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError

# Integer-valued inputs below this bound accumulate exactly in float32,
# which is what makes bit-exact cross-kernel comparison possible.
EXACT_FLOAT32_BOUND = 2**24

DEFAULT_INT_RANGE = 8


def as_fraction(s: Fraction | int | float | str) -> Fraction:
    """Coerce a sparsity argument to an exact Fraction and range-check it."""
    frac = Fraction(s)
    if not 0 < frac <= 1:
        raise ParameterError(f"sparsity must lie in (0, 1], got {s!r}")
    return frac


@dataclass(frozen=True)
class TernaryDense:
    """A K x N weight matrix with entries restricted to {-1, 0, +1}.

    Stored row-major as int8. Immutable after construction.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.int8)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ParameterError(f"ternary matrix must be 2-D and non-empty, got shape {self.values.shape}")
        bad = (v < -1) | (v > 1)
        if bad.any():
            k, n = np.argwhere(bad)[0]
            raise ParameterError(f"entry ({k}, {n}) = {v[k, n]} is not in {{-1, 0, +1}}")
        object.__setattr__(self, "values", v)

    @property
    def K(self) -> int:
        return self.values.shape[0]

    @property
    def N(self) -> int:
        return self.values.shape[1]

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self.values))

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryDense) and np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class DenseMatrix:
    """A row-major float32 matrix with all entries finite."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float32)
        if v.ndim != 2:
            raise ParameterError(f"dense matrix must be 2-D, got shape {self.values.shape}")
        if not np.isfinite(v).all():
            raise ParameterError("dense matrix contains non-finite values")
        object.__setattr__(self, "values", v)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, DenseMatrix) and np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class BiasVector:
    """A length-N float32 vector broadcast-added to every output row."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float32)
        if v.ndim != 1:
            raise ParameterError(f"bias must be 1-D, got shape {self.values.shape}")
        if not np.isfinite(v).all():
            raise ParameterError("bias contains non-finite values")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, BiasVector) and np.array_equal(self.values, other.values)


def gen_ternary(K: int, N: int, s: Fraction | float | str, seed: int) -> TernaryDense:
    """Generate a random K x N ternary matrix with exact per-column density.

    Every column receives exactly round(s*K) nonzeros at uniformly random
    positions: ceil(nz/2) entries of +1 and floor(nz/2) of -1, so signs are
    balanced per column. The seed fully determines the output (PCG64).

    Args:
        K: rows, >= 1.
        N: columns, >= 1.
        s: target density in (0, 1]; exact fractions like "1/4" are preserved.
        seed: RNG seed.
    """
    if K < 1 or N < 1:
        raise ParameterError(f"K and N must be >= 1, got K={K} N={N}")
    frac = as_fraction(s)
    nz = round(frac * K)
    if nz > K:
        raise ParameterError(f"round(s*K) = {nz} exceeds K = {K}")
    n_pos = (nz + 1) // 2
    rng = np.random.default_rng(seed)
    w = np.zeros((K, N), dtype=np.int8)
    for n in range(N):
        chosen = rng.choice(K, size=nz, replace=False)
        w[chosen[:n_pos], n] = 1
        w[chosen[n_pos:], n] = -1
    return TernaryDense(w)


def gen_input(M: int, K: int, seed: int, int_range: int = DEFAULT_INT_RANGE) -> DenseMatrix:
    """Generate an M x K float32 matrix of integers uniform in [-int_range, +int_range].

    Integer-valued inputs keep every kernel's float32 accumulation exact
    (provided K * int_range < 2**24), so differently ordered kernels can be
    compared bit for bit.
    """
    if M < 1 or K < 1:
        raise ParameterError(f"M and K must be >= 1, got M={M} K={K}")
    if int_range < 1:
        raise ParameterError(f"int_range must be >= 1, got {int_range}")
    if K * int_range >= EXACT_FLOAT32_BOUND:
        raise ParameterError(
            f"K * int_range = {K * int_range} >= 2**24 would break exact float32 accumulation"
        )
    rng = np.random.default_rng(seed)
    vals = rng.integers(-int_range, int_range + 1, size=(M, K)).astype(np.float32)
    return DenseMatrix(vals)


def gen_input_uniform(M: int, K: int, seed: int) -> DenseMatrix:
    """Generate an M x K float32 matrix uniform in [-1, 1) (real-valued mode).

    Used by benchmarks that want realistic float traffic; correctness checks
    against the oracle then use a relative tolerance instead of bit equality.
    """
    if M < 1 or K < 1:
        raise ParameterError(f"M and K must be >= 1, got M={M} K={K}")
    rng = np.random.default_rng(seed)
    vals = (rng.random(size=(M, K), dtype=np.float64) * 2.0 - 1.0).astype(np.float32)
    return DenseMatrix(vals)


def gen_bias(N: int, seed: int, int_range: int = DEFAULT_INT_RANGE) -> BiasVector:
    """Generate a length-N integer-valued float32 bias, deterministic per seed."""
    if N < 1:
        raise ParameterError(f"N must be >= 1, got {N}")
    rng = np.random.default_rng(seed)
    return BiasVector(rng.integers(-int_range, int_range + 1, size=N).astype(np.float32))


def prelu(v: np.ndarray | float, alpha: float) -> np.ndarray | float:
    """PReLU activation: v if v > 0 else alpha * v."""
    if np.isscalar(v):
        return v if v > 0 else type(v)(alpha * v)
    arr = np.asarray(v)
    return np.where(arr > 0, arr, np.float32(alpha) * arr).astype(arr.dtype)


def oracle_gemm(
    X: DenseMatrix,
    W: TernaryDense,
    b: BiasVector,
    alpha: float | None = None,
) -> DenseMatrix:
    """Reference Y = X W + b with optional PReLU, independent of all kernels.

    Accumulates in float64 via matmul. Multiplying by {-1, 0, +1} is exact in
    floating point, so for integer-valued X this equals the pure
    add/subtract computation bit for bit after the final float32 cast; for
    real-valued X it is a strictly more accurate reference.
    """
    if X.cols != W.K:
        raise ParameterError(f"X has {X.cols} columns but W has {W.K} rows")
    if len(b) != W.N:
        raise ParameterError(f"bias length {len(b)} != N = {W.N}")
    y = X.values.astype(np.float64) @ W.values.astype(np.float64)
    y += b.values.astype(np.float64)
    if alpha is not None:
        y = np.where(y > 0, y, float(alpha) * y)
    return DenseMatrix(y.astype(np.float32))
