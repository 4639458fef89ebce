import os
import subprocess
import sys

import numpy as np
import pytest

from fourint import kernels
from fourint._jit import HAVE_NUMBA

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def test_gk_exactness():
    for p in range(32):
        exact = (1 - (-1) ** (p + 1)) / (p + 1)
        assert abs(kernels.GK_WEIGHTS @ kernels.GK_NODES ** p - exact) < 1e-14
    for p in range(20):
        exact = (1 - (-1) ** (p + 1)) / (p + 1)
        assert abs(kernels.G_WEIGHTS @ kernels.GK_NODES ** p - exact) < 1e-14


def test_gk21_parity():
    rng = np.random.default_rng(1)
    fx = rng.normal(size=(7, 21, 2)) + 1j * rng.normal(size=(7, 21, 2))
    half = rng.uniform(0.1, 2, size=7)
    a = kernels.gk21_reduce_numpy(fx, half)
    b = kernels.gk21_reduce_numba(fx, half)
    np.testing.assert_allclose(a[0], b[0], rtol=1e-14, atol=1e-14)
    np.testing.assert_allclose(a[1], b[1], rtol=1e-12, atol=1e-14)


def test_wynn_parity():
    s = np.cumsum([(-1) ** k / (k + 1) for k in range(30)]).astype(complex)
    a = kernels.wynn_epsilon_numpy(s)
    b = kernels.wynn_epsilon_numba(s)
    assert abs(a[0] - np.log(2)) < 1e-12
    assert abs(a[0] - b[0]) < 1e-15


def test_richardson_parity():
    v = np.array([np.pi + 2.0 ** -j + 4.0 ** -j for j in range(8)], dtype=complex)
    a = kernels.richardson_numpy(v, 4)
    b = kernels.richardson_numba(v, 4)
    np.testing.assert_allclose(a, b, atol=1e-15)
    assert abs(a[-1] - np.pi) < 1e-12


def test_trig_poly_parity():
    n = np.array([-3, 0, 2, 16], dtype=np.int64)
    c = np.array([1 + 1j, 0.5, -2j, 0.25])
    x = np.linspace(0, 2 * np.pi, 50)
    a = kernels.trig_poly_numpy(n, c, x)
    b = kernels.trig_poly_numba(n, c, x)
    direct = (c[None, :] * np.exp(1j * np.outer(x, n))).sum(axis=1)
    np.testing.assert_allclose(a, direct, atol=1e-13)
    np.testing.assert_allclose(a, b, atol=1e-13)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_taylor_remainder_parity(k):
    w = np.array([0, 1e-8j, 0.3 - 0.2j, -1.5j, 2j, 5j], dtype=complex)
    a = kernels.taylor_remainder_numpy(w, k)
    b = kernels.taylor_remainder_numba(w, k)
    np.testing.assert_allclose(a, b, rtol=1e-13)
    from math import factorial
    for wi, ai in zip(w, a):
        if abs(wi) > 0.1:
            poly = sum(wi ** j / factorial(j) for j in range(k))
            assert abs(ai - (np.exp(wi) - poly) / wi ** k) < 1e-12
        else:
            assert abs(ai - 1 / factorial(k)) < abs(wi) + 1e-15


def test_backend_flag_selects_numpy():
    env = dict(os.environ, FOURINT_KERNELS="numpy")
    out = subprocess.run([sys.executable, "-c", "from fourint import kernels; print(kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
