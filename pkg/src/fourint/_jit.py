"""Backend switch for the compiled kernels.

Set ``FOURINT_KERNELS=numpy`` to force the pure-numpy fallbacks (useful for
debugging or on platforms without numba).  The default is ``numba`` whenever
it imports cleanly.
"""
import os

_requested = os.environ.get("FOURINT_KERNELS", "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError("numba disabled by FOURINT_KERNELS")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn

BACKEND = "numba" if HAVE_NUMBA else "numpy"
