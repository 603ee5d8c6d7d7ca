"""Command line interface.

Subcommands: gen, convert, verify, bench, gridsearch, oi.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 I/O or file parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io as tio
from .bench import (
    GRID_MR,
    GRID_UF,
    PRESET_NAMES,
    SWEEP_K,
    SWEEP_SPARSITIES,
    BenchPlan,
    BenchPoint,
    grid_search,
    oi_table,
    preset_plan,
    run_bench,
    write_csv,
)
from .dense import TernaryDense, as_fraction, gen_bias, gen_input, gen_ternary, oracle_gemm
from .errors import ParameterError, ParseError, VerificationError
from .kernels import SCALAR_TAGS, SIMD_TAGS, VARIANTS, GemmConfig, run_variant

DEFAULT_SEED = 0


def _fraction(text: str) -> Fraction:
    return as_fraction(Fraction(text))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="terngemm", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random ternary weight file")
    g.add_argument("--K", type=int, required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--s", type=_fraction, required=True, help="density, e.g. 1/4")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("convert", help="convert between dense and sparse format files")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--to", required=True, choices=["dense"] + list(tio.FORMAT_TAGS))
    c.add_argument("--out", required=True)
    c.add_argument("--B", type=int, default=None, help="block size for blocked formats")
    c.add_argument("--g", type=int, default=None, help="interleave group size")
    c.set_defaults(func=cmd_convert)

    v = sub.add_parser("verify", help="check kernels against the dense oracle")
    v.add_argument("--M", type=int, default=4)
    v.add_argument("--K", type=int, default=64)
    v.add_argument("--N", type=int, default=16)
    v.add_argument("--s", type=_fraction, default=Fraction(1, 4))
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--variant", action="append", choices=list(VARIANTS), default=None)
    v.add_argument("--UF", type=int, default=None)
    v.add_argument("--MR", type=int, default=None)
    v.add_argument("--B", type=int, default=None)
    v.add_argument("--g", type=int, default=None)
    v.add_argument("--alpha", type=float, default=None, help="PReLU slope (vectorized variants)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="benchmark kernels, emitting schema CSV")
    b.add_argument("--preset", choices=PRESET_NAMES, default=None)
    b.add_argument("--variant", action="append", choices=list(VARIANTS), default=None)
    b.add_argument("--M", type=int, default=None)
    b.add_argument("--K", type=int, action="append", default=None, help="repeatable")
    b.add_argument("--N", type=int, default=None)
    b.add_argument("--s", type=_fraction, default=None)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--B", type=int, default=None)
    b.add_argument("--g", type=int, default=None)
    b.add_argument("--UF", type=int, default=None)
    b.add_argument("--MR", type=int, default=None)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--warmup", type=int, default=2)
    b.add_argument("--freq-ghz", type=float, default=None, dest="freq_ghz")
    b.add_argument("--alpha", type=float, default=None)
    b.add_argument("--instrument", action="store_true", help="fill measured adds/mults columns")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bench)

    gs = sub.add_parser("gridsearch", help="exhaustive (UF, MR) x K tuning sweep")
    gs.add_argument("--K", type=int, action="append", default=None)
    gs.add_argument("--UF", type=int, action="append", default=None)
    gs.add_argument("--MR", type=int, action="append", default=None)
    gs.add_argument("--M", type=int, default=32)
    gs.add_argument("--N", type=int, default=1024)
    gs.add_argument("--s", type=_fraction, default=Fraction(1, 4))
    gs.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gs.add_argument("--reps", type=int, default=5)
    gs.add_argument("--warmup", type=int, default=2)
    gs.add_argument("--freq-ghz", type=float, default=None, dest="freq_ghz")
    gs.add_argument("--out", default=None)
    gs.set_defaults(func=cmd_gridsearch)

    o = sub.add_parser("oi", help="operational intensity table for the base format")
    o.add_argument("--M", type=int, default=64)
    o.add_argument("--N", type=int, default=1024)
    o.add_argument("--K", type=int, action="append", default=None)
    o.add_argument("--s", type=_fraction, action="append", default=None)
    o.add_argument("--seed", type=int, default=DEFAULT_SEED)
    o.add_argument("--out", default=None)
    o.set_defaults(func=cmd_oi)

    return p


def _cfg_from(args, for_variant: str | None = None) -> GemmConfig:
    kw = {}
    if getattr(args, "UF", None) is not None:
        kw["uf"] = args.UF
    if getattr(args, "MR", None) is not None:
        kw["mr"] = args.MR
    if getattr(args, "B", None) is not None:
        kw["b"] = args.B
    if getattr(args, "g", None) is not None:
        kw["g"] = args.g
    alpha = getattr(args, "alpha", None)
    if alpha is not None and (for_variant is None or VARIANTS[for_variant].supports_alpha):
        kw["alpha"] = alpha
    return GemmConfig(**kw)


def cmd_gen(args) -> int:
    w = gen_ternary(args.K, args.N, args.s, args.seed)
    with open(args.out, "wb") as fh:
        tio.save_dense(w, fh)
    print(f"wrote {args.out}: K={args.K} N={args.N} nnz={w.nnz}")
    return 0


def cmd_convert(args) -> int:
    data = Path(args.infile).read_bytes()
    obj = tio.load_any(data)
    dense = obj if isinstance(obj, TernaryDense) else obj.to_dense()
    if args.to == "dense":
        with open(args.out, "wb") as fh:
            tio.save_dense(dense, fh)
        print(f"wrote {args.out}: dense K={dense.K} N={dense.N}")
        return 0
    from .tcsc import tcsc_from_dense
    from .variants import (
        blocked_from_dense,
        compressed_from_dense,
        interleaved_blocked_from_dense,
        interleaved_from_dense,
        inverted_from_dense,
        symmetric_from_dense,
    )

    builders = {
        "tcsc": lambda: tcsc_from_dense(dense),
        "blocked": lambda: blocked_from_dense(dense, args.B),
        "interleaved": lambda: interleaved_from_dense(dense, args.g or 4),
        "interleaved_blocked": lambda: interleaved_blocked_from_dense(dense, args.B, args.g or 2),
        "inverted": lambda: inverted_from_dense(dense),
        "compressed": lambda: compressed_from_dense(dense),
        "symmetric": lambda: symmetric_from_dense(dense, args.g or 2),
    }
    fmt = builders[args.to]()
    with open(args.out, "wb") as fh:
        tio.save_sparse(fmt, fh)
    print(f"wrote {args.out}: {args.to} K={fmt.K} N={fmt.N}")
    return 0


def cmd_verify(args) -> int:
    requested = args.variant
    if requested is None:
        variants = list(SCALAR_TAGS)
        if args.N % 4 == 0:
            variants += list(SIMD_TAGS)
        if args.alpha is not None:
            variants = [v for v in variants if VARIANTS[v].supports_alpha]
            if not variants:
                raise ParameterError("alpha requested but no vectorized variant is applicable")
    else:
        variants = requested
        for v in variants:
            if VARIANTS[v].kind == "simd" and args.N % 4 != 0:
                raise ParameterError(f"variant {v!r} needs N divisible by 4, got N={args.N}")
            if args.alpha is not None and not VARIANTS[v].supports_alpha:
                raise ParameterError(f"variant {v!r} has no fused PReLU; drop --alpha")

    w = gen_ternary(args.K, args.N, args.s, args.seed)
    x = gen_input(args.M, args.K, args.seed + 1)
    bias = gen_bias(args.N, args.seed + 2)
    failures = 0
    for tag in variants:
        cfg = _cfg_from(args, for_variant=tag)
        y = run_variant(tag, x, w, bias, cfg)
        ref = oracle_gemm(x, w, bias, cfg.alpha)
        if np.array_equal(y.values, ref.values):
            print(f"ok   {tag}")
        else:
            failures += 1
            m, n = map(int, np.argwhere(y.values != ref.values)[0])
            print(
                f"FAIL {tag}: first mismatch at ({m}, {n}): "
                f"kernel {y.values[m, n]!r} vs oracle {ref.values[m, n]!r}"
            )
    if failures:
        print(f"{failures}/{len(variants)} variants failed", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    if args.preset is not None:
        plan = preset_plan(
            args.preset,
            ks=args.K,
            m=args.M,
            n=args.N,
            reps=args.reps,
            warmup=args.warmup,
            seed=args.seed,
            alpha=args.alpha,
        )
        if args.instrument:
            plan = BenchPlan(plan.points, plan.warmup, plan.reps, plan.seed, instrument=True)
    else:
        if not args.variant:
            raise ParameterError("bench needs --preset or at least one --variant")
        m = args.M if args.M is not None else 64
        n = args.N if args.N is not None else 1024
        s = args.s if args.s is not None else Fraction(1, 2)
        ks = args.K or [1024]
        points = [
            BenchPoint(v, m, k, n, s, _cfg_from(args, for_variant=v))
            for v in args.variant
            for k in ks
        ]
        plan = BenchPlan(
            tuple(points), warmup=args.warmup, reps=args.reps, seed=args.seed,
            instrument=args.instrument,
        )
    records = run_bench(plan, args.freq_ghz)
    _emit_csv(records, args.out)
    return 0


def _emit_csv(records, out: str | None) -> None:
    if out is None:
        write_csv(records, sys.stdout)
    else:
        with open(out, "w", newline="") as fh:
            write_csv(records, fh)
        print(f"wrote {out}: {len(records)} records", file=sys.stderr)


def cmd_gridsearch(args) -> int:
    best, records = grid_search(
        args.K or SWEEP_K,
        args.UF or GRID_UF,
        args.MR or GRID_MR,
        s=args.s,
        m=args.M,
        n=args.N,
        reps=args.reps,
        warmup=args.warmup,
        seed=args.seed,
        freq_ghz=args.freq_ghz,
    )
    for k in sorted(best):
        uf, mr = best[k]
        print(f"best K={k}: UF={uf} MR={mr}", file=sys.stderr)
    _emit_csv(records, args.out)
    return 0


def cmd_oi(args) -> int:
    ks = args.K or list(SWEEP_K)
    sparsities = args.s or list(SWEEP_SPARSITIES)
    rows = oi_table(ks, sparsities, m=args.M, n=args.N, seed=args.seed)
    by_cell = {(k, s): oi for k, s, _, _, oi in rows}
    lines = [f"operational intensity (flops/byte), M={args.M}, N={args.N}, base format"]
    header = "K".ljust(8) + "".join(f"s={s}".rjust(12) for s in sparsities)
    lines.append(header)
    for k in ks:
        lines.append(str(k).ljust(8) + "".join(f"{by_cell[(k, s)]:12.2f}" for s in sparsities))
    text = "\n".join(lines)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
