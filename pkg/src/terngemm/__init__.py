"""Sparse ternary matrix multiplication with a benchmark harness.

Weights take values in {-1, 0, +1} and are stored in compressed
column-oriented formats whose kernels replace multiply-accumulate with
add/subtract. Kernels are verified against a dense float64 oracle and can
report exact add/multiply counts.
"""

from .bench import (
    CSV_COLUMNS,
    BenchPlan,
    BenchPoint,
    BenchRecord,
    flop_count,
    grid_search,
    oi_table,
    operational_intensity,
    preset_plan,
    read_csv,
    run_bench,
    run_point,
    write_csv,
)
from .dense import (
    BiasVector,
    DenseMatrix,
    TernaryDense,
    as_fraction,
    gen_bias,
    gen_input,
    gen_input_uniform,
    gen_ternary,
    oracle_gemm,
    prelu,
)
from .errors import (
    CorruptionError,
    InvalidCodeError,
    ParameterError,
    ParseError,
    VerificationError,
)
from .kernels import (
    SCALAR_TAGS,
    SIMD_TAGS,
    VARIANTS,
    GemmConfig,
    OpCount,
    PaddedInput,
    gemm_base,
    gemm_blocked,
    gemm_compressed,
    gemm_horizontal,
    gemm_interleaved_blocked,
    gemm_inverted,
    gemm_unrolled,
    gemm_vectorized_optimal,
    gemm_vertical,
    get_variant,
    pad_input,
    run_variant,
)
from .tcsc import Tcsc, format_bytes, tcsc_bytes_for, tcsc_from_dense, tcsc_to_dense, validate
from .variants import (
    DECODE_TABLE,
    BlockedTcsc,
    CompressedTcsc,
    InterleavedBlockedTcsc,
    InterleavedTcsc,
    InvertedTcsc,
    SymmetricInterleavedTcsc,
    blocked_from_dense,
    compress5,
    compressed_from_dense,
    decode_signed_index,
    decompress5,
    encode_signed_index,
    interleaved_blocked_from_dense,
    interleaved_from_dense,
    inverted_from_dense,
    symmetric_from_dense,
)

__version__ = "0.1.0"

__all__ = [
    "BenchPlan",
    "BenchPoint",
    "BenchRecord",
    "BiasVector",
    "BlockedTcsc",
    "CompressedTcsc",
    "CorruptionError",
    "CSV_COLUMNS",
    "DECODE_TABLE",
    "DenseMatrix",
    "GemmConfig",
    "InterleavedBlockedTcsc",
    "InterleavedTcsc",
    "InvalidCodeError",
    "InvertedTcsc",
    "OpCount",
    "PaddedInput",
    "ParameterError",
    "ParseError",
    "SCALAR_TAGS",
    "SIMD_TAGS",
    "SymmetricInterleavedTcsc",
    "Tcsc",
    "TernaryDense",
    "VARIANTS",
    "VerificationError",
    "as_fraction",
    "blocked_from_dense",
    "compress5",
    "compressed_from_dense",
    "decode_signed_index",
    "decompress5",
    "encode_signed_index",
    "flop_count",
    "format_bytes",
    "gemm_base",
    "gemm_blocked",
    "gemm_compressed",
    "gemm_horizontal",
    "gemm_interleaved_blocked",
    "gemm_inverted",
    "gemm_unrolled",
    "gemm_vectorized_optimal",
    "gemm_vertical",
    "gen_bias",
    "gen_input",
    "gen_input_uniform",
    "gen_ternary",
    "get_variant",
    "grid_search",
    "interleaved_blocked_from_dense",
    "interleaved_from_dense",
    "inverted_from_dense",
    "oi_table",
    "operational_intensity",
    "oracle_gemm",
    "pad_input",
    "prelu",
    "preset_plan",
    "read_csv",
    "run_bench",
    "run_point",
    "run_variant",
    "symmetric_from_dense",
    "tcsc_bytes_for",
    "tcsc_from_dense",
    "tcsc_to_dense",
    "validate",
    "write_csv",
    "__version__",
]
