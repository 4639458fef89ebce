"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 20]

Both variants are imported from the same module, so the comparison does not
depend on FOURINT_KERNELS.  The first numba call (compilation) is excluded.
"""
import argparse
import timeit

import numpy as np

from fourint import kernels
from fourint._jit import HAVE_NUMBA


def cases(rng):
    fx = rng.normal(size=(256, 21, 2)) + 0j
    half = rng.uniform(0.01, 1.0, size=256)
    seq = np.cumsum([(-1) ** k / (k + 1) for k in range(40)]).astype(complex)
    n = np.arange(-32, 33, dtype=np.int64)
    c = rng.normal(size=n.size) + 1j * rng.normal(size=n.size)
    x = np.linspace(0, 2 * np.pi, 4096)
    w = (rng.normal(size=4096) + 1j * rng.normal(size=4096)) * 2
    return {
        "gk21_reduce": (fx, half),
        "wynn_epsilon": (seq,),
        "richardson": (seq, 4),
        "trig_poly": (n, c, x),
        "taylor_remainder": (w, 3),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba unavailable (or disabled by FOURINT_KERNELS); nothing to compare")
        return 0
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}{'numpy [us]':>12}{'numba [us]':>12}{'speedup':>10}")
    for name, call_args in cases(rng).items():
        slow = getattr(kernels, f"{name}_numpy")
        fast = getattr(kernels, f"{name}_numba")
        fast(*call_args)  # compile
        a, b = slow(*call_args), fast(*call_args)
        for u, v in zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)):
            assert np.allclose(u, v, rtol=1e-10, atol=1e-12), name
        t_np = min(timeit.repeat(lambda: slow(*call_args), number=10, repeat=args.repeat)) / 10
        t_nb = min(timeit.repeat(lambda: fast(*call_args), number=10, repeat=args.repeat)) / 10
        print(f"{name:<18}{t_np * 1e6:>12.1f}{t_nb * 1e6:>12.1f}{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
