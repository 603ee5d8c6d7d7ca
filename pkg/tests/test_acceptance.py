"""Acceptance gate: one test per required behavior, run at full tolerance.

Each test prints a single PASS/FAIL line (visible with -s; pytest -v adds
its own verdict per test). The relative-speed check is observational only:
it reports the measured ratio but never fails the suite, since wall-clock
ratios depend on the host.
"""

from __future__ import annotations

import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

import terngemm as tg
from terngemm.bench import GRID_MR, GRID_UF

SPARSITIES = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))
CFG_GRID = [(uf, mr) for uf in GRID_UF for mr in GRID_MR]


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _random_shape(rng: np.random.Generator, i: int = 0):
    m = (i % 9) + 1  # covers 1..9, mostly not multiples of 4
    k = int(rng.choice([16, 17, 24, 32, 48, 64, 96, 128, 200, 256, 512, 1024, 2048, 4096],
                       p=[.12, .08, .08, .1, .08, .1, .08, .08, .06, .08, .05, .04, .03, .02]))
    n = int(rng.integers(4, 65))
    s = SPARSITIES[i % 4]  # every sparsity appears
    return m, k, n, s


def test_c1_scalar_kernels_match_oracle_bitwise():
    """Every scalar kernel equals the float64 oracle bit for bit, across
    random shapes, sparsities, and the whole (UF, MR) tuning grid."""
    rng = np.random.default_rng(20_260_815)
    cases = 200
    t0 = time.perf_counter()
    for i in range(cases):
        m, k, n, s = _random_shape(rng, i)
        w = tg.gen_ternary(k, n, s, seed=int(rng.integers(1 << 30)))
        x = tg.gen_input(m, k, seed=int(rng.integers(1 << 30)))
        b = tg.gen_bias(n, seed=int(rng.integers(1 << 30)))
        ref = tg.oracle_gemm(x, w, b).values

        uf, mr = CFG_GRID[i % len(CFG_GRID)]
        nr = (1, 2, 4)[i % 3]
        bsz = int(rng.choice([1, 7, 16, 64, k]))
        g = (1, 2, 4)[(i // 3) % 3]
        cfg = tg.GemmConfig(uf=uf, mr=mr, nr=nr, b=bsz, g=g)

        t = tg.tcsc_from_dense(w)
        runs = {
            "base": tg.gemm_base(x, t, b),
            "unrolled": tg.gemm_unrolled(x, t, b, cfg),
            "blocked": tg.gemm_blocked(x, tg.blocked_from_dense(w, bsz), b, cfg),
            "interleaved_blocked": tg.gemm_interleaved_blocked(
                x, tg.interleaved_blocked_from_dense(w, bsz, g), b, cfg
            ),
            "inverted": tg.gemm_inverted(x, tg.inverted_from_dense(w), b),
            "compressed": tg.gemm_compressed(x, tg.compressed_from_dense(w), b),
        }
        for tag, y in runs.items():
            if not np.array_equal(y.values, ref):
                _report(
                    "scalar-oracle-equivalence", False,
                    f"{tag} diverged at case {i} (M={m} K={k} N={n} s={s} cfg={cfg})",
                )
    elapsed = time.perf_counter() - t0
    _report(
        "scalar-oracle-equivalence", elapsed < 120.0,
        f"{cases} cases x 6 kernels bit-exact, full {len(CFG_GRID)}-point tuning grid, "
        f"{elapsed:.1f}s",
    )


def test_c2_vectorized_kernels_match_oracle_bitwise():
    """The three vector-shaped kernels equal the oracle bit for bit, with
    and without fused PReLU."""
    rng = np.random.default_rng(20_260_816)
    cases = 100
    for i in range(cases):
        m = (i % 9) + 1  # includes plenty of non-multiples of 4
        k = int(rng.choice([16, 24, 33, 48, 64, 128, 256, 512, 1024]))
        n = 4 * int(rng.integers(1, 17))
        s = SPARSITIES[i % 4]
        g = (1, 2, 4)[i % 3]
        bsz = int(rng.choice([4, 16, 64, k]))
        w = tg.gen_ternary(k, n, s, seed=int(rng.integers(1 << 30)))
        x = tg.gen_input(m, k, seed=int(rng.integers(1 << 30)))
        b = tg.gen_bias(n, seed=int(rng.integers(1 << 30)))
        xp = tg.pad_input(x)
        sym = tg.symmetric_from_dense(w, g=g)
        ib = tg.interleaved_blocked_from_dense(w, bsz, g, symmetric_cols=True)
        for alpha in (None, 0.25):
            ref = tg.oracle_gemm(x, w, b, alpha).values
            runs = {
                "vertical": tg.gemm_vertical(xp, sym, b, alpha),
                "horizontal": tg.gemm_horizontal(xp, sym, b, alpha),
                "vectorized_optimal": tg.gemm_vectorized_optimal(xp, ib, b, alpha),
            }
            for tag, y in runs.items():
                if not np.array_equal(y.values, ref):
                    _report(
                        "vectorized-oracle-equivalence", False,
                        f"{tag} diverged at case {i} "
                        f"(M={m} K={k} N={n} s={s} g={g} B={bsz} alpha={alpha})",
                    )
    _report(
        "vectorized-oracle-equivalence", True,
        f"{cases} cases x 3 kernels x (plain, fused PReLU) bit-exact",
    )


def test_c3_every_format_round_trips():
    """dense -> format -> dense is the identity for every storage format."""
    rng = np.random.default_rng(20_260_817)
    builders = {
        "tcsc": tg.tcsc_from_dense,
        "blocked": lambda w: tg.blocked_from_dense(w, int(rng.integers(1, w.K + 8))),
        "interleaved": lambda w: tg.interleaved_from_dense(w, int(rng.integers(1, 6))),
        "interleaved_blocked": lambda w: tg.interleaved_blocked_from_dense(
            w, int(rng.integers(1, w.K + 8)), int(rng.integers(1, 6))
        ),
        "interleaved_blocked_symmetric": lambda w: tg.interleaved_blocked_from_dense(
            w, int(rng.integers(1, w.K + 8)), int(rng.integers(1, 6)), symmetric_cols=True
        ),
        "inverted": tg.inverted_from_dense,
        "compressed": tg.compressed_from_dense,
        "symmetric": lambda w: tg.symmetric_from_dense(w, int(rng.integers(1, 6))),
    }
    per_format = 30
    degenerate = [
        tg.TernaryDense(np.zeros((12, 4), dtype=np.int8)),       # all-zero W
        tg.gen_ternary(12, 4, 1, seed=1),                        # full density
        tg.gen_ternary(7, 4, "1/2", seed=2),                     # K mod 5 != 0
        tg.gen_ternary(3, 8, 1, seed=3),                         # tiny K, B >= K
    ]
    for name, build in builders.items():
        for case in range(per_format):
            k = int(rng.integers(1, 100))
            n = 4 * int(rng.integers(1, 9))  # multiple of 4 suits every format
            vals = rng.integers(-1, 2, size=(k, n)).astype(np.int8)
            w = tg.TernaryDense(vals)
            back = build(w).to_dense()
            if back != w:
                _report("format-round-trip", False, f"{name} failed at K={k} N={n}")
        for w in degenerate:
            if build(w).to_dense() != w:
                _report("format-round-trip", False, f"{name} failed a degenerate case")

    for code in range(243):  # the packed-byte codec is exhaustively invertible
        if tg.compress5(tg.decompress5(code)) != code:
            _report("format-round-trip", False, f"code {code} does not invert")
    for code in range(243, 256):
        try:
            tg.decompress5(code)
        except tg.InvalidCodeError:
            continue
        _report("format-round-trip", False, f"code {code} accepted but has no meaning")
    _report(
        "format-round-trip", True,
        f"{len(builders)} formats x {per_format} random + 4 degenerate matrices; "
        "243 codes invert, 13 dead codes rejected",
    )


def test_c4_cost_model_and_operational_intensity():
    """The flop model is exact and the intensity anchor lands on 12.77."""
    ok_flops = (
        tg.flop_count(32, 1024, 1024, 1024 * 256) == 8_421_376
        and tg.flop_count(64, 4096, 4096, 4096 * 2048) == 537_133_056
    )
    _report("cost-model-frozen-values", ok_flops, "both pinned flop counts exact")

    # closed form: when s*K is integral, nnz = N*s*K so flops = M*N*(1 + s*K)
    for s in SPARSITIES:
        for m, k, n in [(3, 64, 16), (8, 1024, 32), (1, 16, 4)]:
            sk = s * k
            assert sk.denominator == 1
            nnz = n * int(sk)
            if tg.flop_count(m, k, n, nnz) != m * n * (1 + int(sk)):
                _report(
                    "cost-model-closed-form", False,
                    f"closed form broke at M={m} K={k} N={n} s={s}",
                )
    _report("cost-model-closed-form", True, "M*N*(1+sK) holds for all four sparsities")

    w = tg.gen_ternary(1024, 1024, Fraction(1, 2), seed=0)
    t = tg.tcsc_from_dense(w)
    oi = tg.operational_intensity(64, 1024, 1024, t.nnz, t.format_bytes())
    _report(
        "operational-intensity-anchor", abs(oi - 12.77) <= 0.01,
        f"bytes={t.format_bytes()} oi={oi:.4f} (target 12.77 +/- 0.01)",
    )

    rng = np.random.default_rng(20_260_818)
    for i in range(10):
        m, k, n, s = _random_shape(rng, i)
        w = tg.gen_ternary(k, n, s, seed=int(rng.integers(1 << 30)))
        x = tg.gen_input(m, k, seed=1)
        b = tg.gen_bias(n, seed=2)
        _, ops = tg.gemm_base(x, tg.tcsc_from_dense(w), b, counted=True)
        if tg.flop_count(m, k, n, w.nnz) != ops.adds + ops.mults:
            _report(
                "cost-model-vs-instrumentation", False,
                f"model != measured at M={m} K={k} N={n} s={s}",
            )
    _report("cost-model-vs-instrumentation", True, "model equals measured adds on 10 shapes")


def test_c5_symmetric_stream_invariants_and_dummy_sensitivity():
    """Symmetric streams keep 4-column groups in lockstep, and their dummy
    slots are provably live: corrupting the padded input column changes the
    output whenever dummies exist."""
    rng = np.random.default_rng(20_260_819)
    checked = perturbed = 0
    for i in range(100):
        k = int(rng.integers(1, 80))
        n = 4 * int(rng.integers(1, 9))
        g = (1, 2, 3, 4)[i % 4]
        vals = rng.integers(-1, 2, size=(k, n)).astype(np.int8)
        w = tg.TernaryDense(vals)
        sym = tg.symmetric_from_dense(w, g=g)
        quantum = np.lcm(4, g)
        lens = np.diff(sym.col_ptr)
        for grp in range(n // 4):
            group_lens = lens[4 * grp : 4 * grp + 4]
            if len(set(group_lens.tolist())) != 1:
                _report("symmetric-invariants", False, f"uneven group {grp} at case {i}")
            if group_lens[0] % (2 * quantum) != 0:
                _report(
                    "symmetric-invariants", False,
                    f"stream length {group_lens[0]} not a whole pair multiple of "
                    f"lcm(4, g)={quantum} at case {i}",
                )
        if (sym.indices > k).any() or sym.to_dense() != w or sym.nnz != w.nnz:
            _report("symmetric-invariants", False, f"stream content wrong at case {i}")
        checked += 1

        if sym.dummy_count > 0 and perturbed < 25:
            x = tg.gen_input(2, k, seed=i)
            b = tg.gen_bias(n, seed=i + 1)
            xp = tg.pad_input(x)
            clean_v = tg.gemm_vertical(xp, sym, b).values.copy()
            clean_h = tg.gemm_horizontal(xp, sym, b).values.copy()
            xp.values[:, -1] = 3.0
            dirty_v = tg.gemm_vertical(xp, sym, b).values
            dirty_h = tg.gemm_horizontal(xp, sym, b).values
            if np.array_equal(clean_v, dirty_v) or np.array_equal(clean_h, dirty_h):
                _report(
                    "symmetric-invariants", False,
                    f"dummy slots not read at case {i} (dummy_count={sym.dummy_count})",
                )
            perturbed += 1
    ok = checked == 100 and perturbed > 0
    _report(
        "symmetric-invariants", ok,
        f"{checked} matrices checked, dummy sensitivity shown on {perturbed}",
    )


def test_c6_operation_counters_are_exact():
    """The reference kernel reports exactly M*N + M*nnz adds and zero
    multiplies; no kernel multiplies unless PReLU is fused in."""
    rng = np.random.default_rng(20_260_820)
    for i in range(10):
        m, k, n, s = _random_shape(rng, i)
        w = tg.gen_ternary(k, n, s, seed=int(rng.integers(1 << 30)))
        x = tg.gen_input(m, k, seed=3)
        b = tg.gen_bias(n, seed=4)
        _, ops = tg.gemm_base(x, tg.tcsc_from_dense(w), b, counted=True)
        if ops != tg.OpCount(adds=m * n + m * w.nnz, mults=0):
            _report(
                "operation-counters", False,
                f"base reported {ops} for M={m} K={k} N={n} nnz={w.nnz}",
            )

    w, x, b = (tg.gen_ternary(48, 16, "1/2", 9), tg.gen_input(3, 48, 10), tg.gen_bias(16, 11))
    for tag in tg.VARIANTS:
        _, ops = tg.run_variant(tag, x, w, b, counted=True)
        if ops.mults != 0:
            _report("operation-counters", False, f"{tag} multiplied without PReLU")
    _report(
        "operation-counters", True,
        "base count pinned on 10 shapes; 9/9 variants multiply-free without PReLU",
    )


def test_c7_relative_speed_logged():
    """Observational: median time of the tuned kernel vs the reference one
    at the large benchmark shape. Logged, never asserted."""
    pt_base = tg.BenchPoint("base", 64, 16384, 1024, Fraction(1, 2))
    pt_fast = tg.BenchPoint(
        "interleaved_blocked", 64, 16384, 1024, Fraction(1, 2), tg.GemmConfig(g=2)
    )
    plan = tg.BenchPlan((pt_base, pt_fast), warmup=1, reps=3, seed=0)
    recs = tg.run_bench(plan)
    ratio = recs[0].median_ns / recs[1].median_ns
    detail = (
        f"interleaved_blocked is {ratio:.2f}x base at M=64 K=16384 N=1024 s=1/2 "
        f"(base {recs[0].median_ns / 1e6:.1f} ms, tuned {recs[1].median_ns / 1e6:.1f} ms; "
        f"soft target 1.5x)"
    )
    print(f"INFO relative-speed: {detail}")
    warnings.warn(f"relative-speed (observational): {detail}", stacklevel=1)
