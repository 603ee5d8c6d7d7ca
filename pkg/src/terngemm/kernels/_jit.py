"""numba shim: compile when available, fall back to pure Python otherwise.

The kernels are written as plain loops so they stay correct either way;
without numba they are only useful at toy sizes.
"""

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on numba-less hosts
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap
