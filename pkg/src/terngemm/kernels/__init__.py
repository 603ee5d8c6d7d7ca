"""Kernel implementations and the variant registry.

The registry maps a variant tag to how its format is built from dense
weights, how its inputs are prepared, and how the kernel is invoked. The
CLI and benchmark harness drive everything through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..dense import BiasVector, DenseMatrix, TernaryDense
from ..errors import ParameterError
from ..tcsc import tcsc_from_dense
from ..variants import (
    DEFAULT_GROUP_SIMD,
    blocked_from_dense,
    compressed_from_dense,
    interleaved_blocked_from_dense,
    inverted_from_dense,
    symmetric_from_dense,
)
from .scalar import (
    GemmConfig,
    OpCount,
    gemm_base,
    gemm_blocked,
    gemm_compressed,
    gemm_interleaved_blocked,
    gemm_inverted,
    gemm_unrolled,
)
from .simd import (
    DEFAULT_ALPHA,
    PaddedInput,
    gemm_horizontal,
    gemm_vectorized_optimal,
    gemm_vertical,
    pad_input,
)

__all__ = [
    "GemmConfig",
    "OpCount",
    "PaddedInput",
    "VariantSpec",
    "VARIANTS",
    "SCALAR_TAGS",
    "SIMD_TAGS",
    "DEFAULT_ALPHA",
    "gemm_base",
    "gemm_unrolled",
    "gemm_blocked",
    "gemm_interleaved_blocked",
    "gemm_inverted",
    "gemm_compressed",
    "gemm_vertical",
    "gemm_horizontal",
    "gemm_vectorized_optimal",
    "pad_input",
    "run_variant",
]


@dataclass(frozen=True)
class VariantSpec:
    """How one variant tag plugs into the harness.

    emit lists which tuning columns are meaningful for this variant in
    benchmark records (resolved values are read back off the built format).
    """

    tag: str
    kind: str  # "scalar" or "simd"
    supports_alpha: bool
    emit: frozenset
    build: Callable[[TernaryDense, GemmConfig], Any]
    prepare: Callable[[DenseMatrix], Any]
    run: Callable[[Any, Any, BiasVector, GemmConfig, bool], Any]


def _identity(x: DenseMatrix) -> DenseMatrix:
    return x


def _g(cfg: GemmConfig, default: int) -> int:
    return default if cfg.g is None else cfg.g


VARIANTS: dict[str, VariantSpec] = {}


def _register(spec: VariantSpec) -> None:
    VARIANTS[spec.tag] = spec


_register(
    VariantSpec(
        tag="base",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset(),
        build=lambda w, cfg: tcsc_from_dense(w),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_base(x, f, b, counted),
    )
)
_register(
    VariantSpec(
        tag="unrolled",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset({"UF", "MR", "NR"}),
        build=lambda w, cfg: tcsc_from_dense(w),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_unrolled(x, f, b, cfg, counted),
    )
)
_register(
    VariantSpec(
        tag="blocked",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset({"UF", "MR", "NR", "B"}),
        build=lambda w, cfg: blocked_from_dense(w, cfg.b),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_blocked(x, f, b, cfg, counted),
    )
)
_register(
    VariantSpec(
        tag="interleaved_blocked",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset({"MR", "NR", "B", "g"}),
        build=lambda w, cfg: interleaved_blocked_from_dense(w, cfg.b, _g(cfg, DEFAULT_GROUP_SIMD)),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_interleaved_blocked(x, f, b, cfg, counted),
    )
)
_register(
    VariantSpec(
        tag="inverted",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset(),
        build=lambda w, cfg: inverted_from_dense(w),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_inverted(x, f, b, counted),
    )
)
_register(
    VariantSpec(
        tag="compressed",
        kind="scalar",
        supports_alpha=False,
        emit=frozenset(),
        build=lambda w, cfg: compressed_from_dense(w),
        prepare=_identity,
        run=lambda x, f, b, cfg, counted: gemm_compressed(x, f, b, counted),
    )
)
_register(
    VariantSpec(
        tag="vertical",
        kind="simd",
        supports_alpha=True,
        emit=frozenset({"g"}),
        build=lambda w, cfg: symmetric_from_dense(w, _g(cfg, DEFAULT_GROUP_SIMD)),
        prepare=pad_input,
        run=lambda x, f, b, cfg, counted: gemm_vertical(x, f, b, cfg.alpha, counted),
    )
)
_register(
    VariantSpec(
        tag="horizontal",
        kind="simd",
        supports_alpha=True,
        emit=frozenset({"g"}),
        build=lambda w, cfg: symmetric_from_dense(w, _g(cfg, DEFAULT_GROUP_SIMD)),
        prepare=pad_input,
        run=lambda x, f, b, cfg, counted: gemm_horizontal(x, f, b, cfg.alpha, counted),
    )
)
_register(
    VariantSpec(
        tag="vectorized_optimal",
        kind="simd",
        supports_alpha=True,
        emit=frozenset({"B", "g"}),
        build=lambda w, cfg: interleaved_blocked_from_dense(
            w, cfg.b, _g(cfg, DEFAULT_GROUP_SIMD), symmetric_cols=True
        ),
        prepare=pad_input,
        run=lambda x, f, b, cfg, counted: gemm_vectorized_optimal(x, f, b, cfg.alpha, cfg, counted),
    )
)

SCALAR_TAGS = tuple(tag for tag, s in VARIANTS.items() if s.kind == "scalar")
SIMD_TAGS = tuple(tag for tag, s in VARIANTS.items() if s.kind == "simd")


def get_variant(tag: str) -> VariantSpec:
    spec = VARIANTS.get(tag)
    if spec is None:
        raise ParameterError(f"unknown variant {tag!r}; known: {', '.join(VARIANTS)}")
    return spec


def run_variant(
    tag: str,
    X: DenseMatrix,
    W: TernaryDense,
    b: BiasVector,
    cfg: GemmConfig | None = None,
    counted: bool = False,
):
    """Build the format for `tag`, prepare inputs, and run its kernel once.

    Convenience path for verification; benchmarks build and prepare once
    and time only the run step.
    """
    cfg = cfg or GemmConfig()
    spec = get_variant(tag)
    if cfg.alpha is not None and not spec.supports_alpha:
        raise ParameterError(f"variant {tag!r} has no fused PReLU; alpha is vectorized-only")
    fmt = spec.build(W, cfg)
    prepared = spec.prepare(X)
    return spec.run(prepared, fmt, b, cfg, counted)
