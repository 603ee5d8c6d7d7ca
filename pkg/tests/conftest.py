"""Shared test helpers.

Kernel JIT compilation makes first calls slow, so the hypothesis deadline
is disabled globally.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, settings

import terngemm as tg

settings.register_profile(
    "jit", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("jit")

SPARSITIES = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


def worked_example():
    """The 4 x 2 reference case used throughout: Y = XW + b = [[12, 18]]."""
    w = tg.TernaryDense(np.array([[1, 0], [0, -1], [-1, 0], [1, 0]], dtype=np.int8))
    x = tg.DenseMatrix(np.array([[1.0, 2.0, 3.0, 4.0]], dtype=np.float32))
    b = tg.BiasVector(np.array([10.0, 20.0], dtype=np.float32))
    return w, x, b


def make_case(M: int, K: int, N: int, s, seed: int):
    """Deterministic random (W, X, b) with integer-valued X."""
    w = tg.gen_ternary(K, N, s, seed)
    x = tg.gen_input(M, K, seed + 1)
    b = tg.gen_bias(N, seed + 2)
    return w, x, b


def random_ternary(rng: np.random.Generator, K: int, N: int) -> tg.TernaryDense:
    """Unstructured ternary matrix; column nnz varies, unlike gen_ternary."""
    vals = rng.integers(-1, 2, size=(K, N)).astype(np.int8)
    return tg.TernaryDense(vals)
