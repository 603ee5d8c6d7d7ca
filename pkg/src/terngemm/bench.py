"""Benchmark harness: cost model, timed runs, grid search, CSV I/O.

The cost model counts one flop per accumulate and one per bias add:

    flop_count(M, K, N, nnz) = M*N + M*nnz

which equals M*N*(1 + s*K) whenever every column holds exactly round(s*K)
nonzeros. Operational intensity divides those flops by the bytes that must
move at least once: the format's own arrays plus dense X (4*M*K), Y
(4*M*N), and the bias (4*N).

Every benchmark point re-verifies its kernel against the dense oracle
before any timing; a mismatch raises instead of producing a number.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .dense import (
    as_fraction,
    gen_bias,
    gen_input,
    gen_input_uniform,
    gen_ternary,
    oracle_gemm,
)
from .errors import ParameterError, VerificationError
from .kernels import SCALAR_TAGS, GemmConfig, get_variant
from .tcsc import format_bytes as _format_bytes

CSV_COLUMNS = (
    "variant", "M", "K", "N", "sparsity_num", "sparsity_den",
    "UF", "MR", "NR", "B", "g", "reps", "median_ns",
    "flops", "flops_per_sec", "flops_per_cycle", "adds", "mults",
)

GRID_UF = (1, 2, 4, 8, 12, 16)
GRID_MR = (1, 2, 4)
SWEEP_K = (1024, 2048, 4096, 8192, 16384)
SWEEP_SPARSITIES = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))
VERIFY_RTOL = 1e-5
DEFAULT_FIG10_ALPHA = 0.25


def flop_count(M: int, K: int, N: int, nnz: int) -> int:
    """Useful flops of one Y = X W + b evaluation: M*N bias adds plus one
    add per (row, nonzero) pair. K only bounds nnz.
    """
    if M < 1 or K < 1 or N < 1:
        raise ParameterError(f"dimensions must be >= 1, got M={M} K={K} N={N}")
    if not 0 <= nnz <= K * N:
        raise ParameterError(f"nnz = {nnz} outside [0, K*N = {K * N}]")
    return M * N + M * nnz


def operational_intensity(M: int, K: int, N: int, nnz: int, format_bytes: int) -> float:
    """Flops per byte: flop_count over format bytes + 4*M*K + 4*M*N + 4*N.

    Each array is counted once; format_bytes must come from the format's
    own byte-size accounting.
    """
    if format_bytes < 0:
        raise ParameterError(f"format_bytes must be >= 0, got {format_bytes}")
    bytes_moved = format_bytes + 4 * M * K + 4 * M * N + 4 * N
    return flop_count(M, K, N, nnz) / bytes_moved


@dataclass(frozen=True)
class BenchPoint:
    """One (variant, shape, sparsity, config) measurement."""

    variant: str
    m: int
    k: int
    n: int
    sparsity: Fraction
    cfg: GemmConfig = field(default_factory=GemmConfig)

    def __post_init__(self):
        if self.m < 1 or self.k < 1 or self.n < 1:
            raise ParameterError(f"dimensions must be >= 1, got M={self.m} K={self.k} N={self.n}")
        object.__setattr__(self, "sparsity", as_fraction(self.sparsity))


@dataclass(frozen=True)
class BenchPlan:
    """A list of points plus run policy (warmups, reps, seed, input mode)."""

    points: tuple[BenchPoint, ...]
    warmup: int = 2
    reps: int = 5
    seed: int = 0
    real_inputs: bool = False
    instrument: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.reps < 3:
            raise ParameterError(f"reps must be >= 3, got {self.reps}")
        if self.warmup < 0:
            raise ParameterError(f"warmup must be >= 0, got {self.warmup}")


@dataclass(frozen=True)
class BenchRecord:
    """One CSV row. Optional fields are None when not applicable."""

    variant: str
    m: int
    k: int
    n: int
    sparsity: Fraction
    uf: int | None
    mr: int | None
    nr: int | None
    b: int | None
    g: int | None
    reps: int
    median_ns: int
    flops: int
    flops_per_sec: float
    flops_per_cycle: float | None
    adds: int | None
    mults: int | None


def _verify(y, ref, exact: bool, variant: str, pt: BenchPoint) -> None:
    yv, rv = y.values, ref.values
    ok = (
        np.array_equal(yv, rv)
        if exact
        else np.allclose(yv, rv, rtol=VERIFY_RTOL, atol=0.0)
    )
    if ok:
        return
    diff = np.argwhere(yv != rv) if exact else np.argwhere(~np.isclose(yv, rv, rtol=VERIFY_RTOL, atol=0.0))
    m, n = (int(diff[0][0]), int(diff[0][1])) if diff.size else (0, 0)
    raise VerificationError(
        f"variant {variant!r} disagrees with the oracle at "
        f"(M={pt.m}, K={pt.k}, N={pt.n}, s={pt.sparsity}): "
        f"first mismatch Y[{m}][{n}] = {yv[m, n]!r}, oracle {rv[m, n]!r}"
    )


def run_point(pt: BenchPoint, plan: BenchPlan, index: int) -> BenchRecord:
    """Generate inputs, verify against the oracle, then time the kernel."""
    spec = get_variant(pt.variant)
    if pt.cfg.alpha is not None and not spec.supports_alpha:
        raise ParameterError(f"variant {pt.variant!r} has no fused PReLU")
    w = gen_ternary(pt.k, pt.n, pt.sparsity, [plan.seed, index, 0])
    if plan.real_inputs:
        x = gen_input_uniform(pt.m, pt.k, [plan.seed, index, 1])
    else:
        x = gen_input(pt.m, pt.k, [plan.seed, index, 1])
    bias = gen_bias(pt.n, [plan.seed, index, 2])
    fmt = spec.build(w, pt.cfg)
    prepared = spec.prepare(x)

    y = spec.run(prepared, fmt, bias, pt.cfg, False)
    ref = oracle_gemm(x, w, bias, pt.cfg.alpha)
    _verify(y, ref, exact=not plan.real_inputs, variant=pt.variant, pt=pt)

    for _ in range(plan.warmup):
        spec.run(prepared, fmt, bias, pt.cfg, False)
    times = []
    for _ in range(plan.reps):
        t0 = time.perf_counter_ns()
        spec.run(prepared, fmt, bias, pt.cfg, False)
        times.append(time.perf_counter_ns() - t0)
    median_ns = int(statistics.median(times))

    adds = mults = None
    if plan.instrument:
        _, counts = spec.run(prepared, fmt, bias, pt.cfg, True)
        adds, mults = counts.adds, counts.mults

    flops = flop_count(pt.m, pt.k, pt.n, w.nnz)
    resolved_b = getattr(fmt, "B", None)
    resolved_g = getattr(fmt, "g", None)
    return BenchRecord(
        variant=pt.variant,
        m=pt.m,
        k=pt.k,
        n=pt.n,
        sparsity=pt.sparsity,
        uf=pt.cfg.uf if "UF" in spec.emit else None,
        mr=pt.cfg.mr if "MR" in spec.emit else None,
        nr=pt.cfg.nr if "NR" in spec.emit else None,
        b=resolved_b if "B" in spec.emit else None,
        g=resolved_g if "g" in spec.emit else None,
        reps=plan.reps,
        median_ns=median_ns,
        flops=flops,
        flops_per_sec=flops / (median_ns * 1e-9),
        flops_per_cycle=None,
        adds=adds,
        mults=mults,
    )


def run_bench(plan: BenchPlan, freq_ghz: float | None = None) -> list[BenchRecord]:
    """Run every point of the plan; kernel-vs-oracle verification gates
    each point, so no record is ever emitted for a wrong kernel.
    flops_per_cycle is filled in when the sustained clock is supplied.
    """
    records = []
    for i, pt in enumerate(plan.points):
        rec = run_point(pt, plan, i)
        if freq_ghz is not None:
            if freq_ghz <= 0:
                raise ParameterError(f"freq_ghz must be positive, got {freq_ghz}")
            cycles = rec.median_ns * freq_ghz
            rec = _with(rec, flops_per_cycle=rec.flops / cycles)
        records.append(rec)
    return records


def _with(rec: BenchRecord, **kw) -> BenchRecord:
    return replace(rec, **kw)


def grid_search(
    ks: Sequence[int],
    ufs: Sequence[int] = GRID_UF,
    mrs: Sequence[int] = GRID_MR,
    *,
    s: Fraction | str = Fraction(1, 4),
    m: int = 32,
    n: int = 1024,
    variant: str = "unrolled",
    reps: int = 5,
    warmup: int = 2,
    seed: int = 0,
    freq_ghz: float | None = None,
) -> tuple[dict[int, tuple[int, int]], list[BenchRecord]]:
    """Exhaustive (UF, MR) x K sweep at fixed M, N, sparsity.

    Returns ({K: (best UF, best MR)}, all records); best means the highest
    flops_per_sec for that K.
    """
    frac = as_fraction(s)
    points = [
        BenchPoint(variant, m, k, n, frac, GemmConfig(uf=uf, mr=mr))
        for k in ks
        for uf in ufs
        for mr in mrs
    ]
    plan = BenchPlan(tuple(points), warmup=warmup, reps=reps, seed=seed)
    records = run_bench(plan, freq_ghz)
    best: dict[int, tuple[int, int]] = {}
    best_rate: dict[int, float] = {}
    for rec in records:
        if rec.k not in best or rec.flops_per_sec > best_rate[rec.k]:
            best[rec.k] = (rec.uf, rec.mr)
            best_rate[rec.k] = rec.flops_per_sec
    return best, records


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

PRESET_NAMES = ("fig6", "fig8", "fig10", "grid")


def preset_plan(
    name: str,
    *,
    ks: Sequence[int] | None = None,
    m: int | None = None,
    n: int | None = None,
    reps: int = 5,
    warmup: int = 2,
    seed: int = 0,
    alpha: float | None = None,
) -> BenchPlan:
    """Build the benchmark plan for a named preset.

    fig6:  all scalar variants at 1/2 sparsity over the K sweep (M=32, N=1024).
    fig8:  interleaved_blocked over the K sweep at the four sparsities
           (M=64, N=4096).
    fig10: base vs the three vectorized kernels (fused PReLU) at 1/4
           sparsity, M=N=1024, K from 512.
    grid:  the unrolled (UF, MR) tuning grid at 1/4 sparsity (M=32, N=1024).

    ks/m/n/reps/warmup override the preset's published shape so the same
    row structure can be produced at desk scale.
    """
    if name not in PRESET_NAMES:
        raise ParameterError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")
    points: list[BenchPoint] = []
    if name == "fig6":
        kk = tuple(ks or SWEEP_K)
        mm, nn = m or 32, n or 1024
        for tag in SCALAR_TAGS:
            for k in kk:
                points.append(BenchPoint(tag, mm, k, nn, Fraction(1, 2)))
    elif name == "fig8":
        kk = tuple(ks or SWEEP_K)
        mm, nn = m or 64, n or 4096
        for s in SWEEP_SPARSITIES:
            for k in kk:
                points.append(BenchPoint("interleaved_blocked", mm, k, nn, s))
    elif name == "fig10":
        kk = tuple(ks or ((512,) + SWEEP_K))
        mm, nn = m or 1024, n or 1024
        a = DEFAULT_FIG10_ALPHA if alpha is None else alpha
        for k in kk:
            points.append(BenchPoint("base", mm, k, nn, Fraction(1, 4)))
        for tag in ("vertical", "horizontal", "vectorized_optimal"):
            for k in kk:
                points.append(BenchPoint(tag, mm, k, nn, Fraction(1, 4), GemmConfig(alpha=a)))
    else:  # grid
        kk = tuple(ks or SWEEP_K)
        mm, nn = m or 32, n or 1024
        for k in kk:
            for uf in GRID_UF:
                for mr in GRID_MR:
                    points.append(
                        BenchPoint("unrolled", mm, k, nn, Fraction(1, 4), GemmConfig(uf=uf, mr=mr))
                    )
    return BenchPlan(tuple(points), warmup=warmup, reps=reps, seed=seed)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def write_csv(records: Iterable[BenchRecord], fh: TextIO) -> None:
    """Emit records in the fixed column schema; inapplicable fields stay empty."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.variant,
                r.m,
                r.k,
                r.n,
                r.sparsity.numerator,
                r.sparsity.denominator,
                _opt(r.uf),
                _opt(r.mr),
                _opt(r.nr),
                _opt(r.b),
                _opt(r.g),
                r.reps,
                r.median_ns,
                r.flops,
                repr(r.flops_per_sec),
                "" if r.flops_per_cycle is None else repr(r.flops_per_cycle),
                _opt(r.adds),
                _opt(r.mults),
            ]
        )


def _opt(v) -> str:
    return "" if v is None else str(v)


def read_csv(fh: TextIO) -> list[BenchRecord]:
    """Parse a schema CSV back into records (exact round trip)."""
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(header) != CSV_COLUMNS:
        raise ParameterError(
            f"CSV header mismatch: expected {','.join(CSV_COLUMNS)}, got {header}"
        )
    out = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise ParameterError(f"CSV row has {len(row)} fields, expected {len(CSV_COLUMNS)}: {row!r}")
        out.append(
            BenchRecord(
                variant=row[0],
                m=int(row[1]),
                k=int(row[2]),
                n=int(row[3]),
                sparsity=Fraction(int(row[4]), int(row[5])),
                uf=_opt_int(row[6]),
                mr=_opt_int(row[7]),
                nr=_opt_int(row[8]),
                b=_opt_int(row[9]),
                g=_opt_int(row[10]),
                reps=int(row[11]),
                median_ns=int(row[12]),
                flops=int(row[13]),
                flops_per_sec=float(row[14]),
                flops_per_cycle=None if row[15] == "" else float(row[15]),
                adds=_opt_int(row[16]),
                mults=_opt_int(row[17]),
            )
        )
    return out


def _opt_int(s: str) -> int | None:
    return None if s == "" else int(s)


def oi_table(
    ks: Sequence[int] = SWEEP_K,
    sparsities: Sequence[Fraction] = SWEEP_SPARSITIES,
    *,
    m: int = 64,
    n: int = 1024,
    seed: int = 0,
) -> list[tuple[int, Fraction, int, int, float]]:
    """Operational intensity of the base TCSC format over a (K, s) grid.

    Builds the actual format for each cell so byte counts come from real
    arrays. Returns rows of (K, s, nnz, format_bytes, oi).
    """
    from .tcsc import tcsc_from_dense

    rows = []
    for k in ks:
        for s in sparsities:
            w = gen_ternary(k, n, s, seed)
            t = tcsc_from_dense(w)
            fb = _format_bytes(t)
            rows.append((k, s, w.nnz, fb, operational_intensity(m, k, n, w.nnz, fb)))
    return rows
