import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from fourint.errors import ConvergenceError, MeasureError
from fourint.measure import combine, density_measure, dirac
from fourint.transforms import (bochner_kernel, bochner_transform, carleman,
                                cosine_transform, fourier_measure, hilbert_generalized,
                                hilbert_line, sine_transform)

LAPLACE = density_measure("exp(-abs(t))")
GAUSS = density_measure("exp(-t^2)")
EXP_RIGHT = density_measure("exp(-t)", 0.0)
EXP_LEFT = density_measure("exp(t)", -math.inf, 0.0)


@pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 3.0, -2.0])
def test_fourier_closed_forms(x):
    assert abs(fourier_measure(LAPLACE, x) - oracles.laplace_fourier(x)) < 1e-8
    assert abs(fourier_measure(GAUSS, x) - oracles.gauss_fourier(x)) < 1e-8
    assert abs(fourier_measure(dirac(0.0), x) - oracles.INV_SQRT_2PI) < 1e-15
    shifted = fourier_measure(dirac(1.5), x)
    assert abs(shifted - oracles.INV_SQRT_2PI * cmath.exp(-1.5j * x)) < 1e-15


def test_fourier_vectorised():
    xs = np.array([[0.0, 1.0], [2.0, 3.0]])
    v = fourier_measure(LAPLACE, xs)
    assert v.shape == (2, 2)
    assert abs(v[1, 1] - oracles.laplace_fourier(3.0)) < 1e-8


@pytest.mark.parametrize("t", [0.5, 1.0, 4.0])
def test_sine_cosine(t):
    root = math.sqrt(2 / math.pi)
    assert abs(cosine_transform(lambda x: np.exp(-x), t) - root / (1 + t * t)) < 1e-9
    assert abs(sine_transform(lambda x: np.exp(-x), t) - root * t / (1 + t * t)) < 1e-9


def test_sine_transform_of_constant_diverges():
    with pytest.raises(ConvergenceError):
        sine_transform(lambda x: np.ones_like(x), 1.0)


@pytest.mark.parametrize("z", list(oracles.GAUSS_CARLEMAN))
def test_carleman_gauss_oracle(z):
    assert abs(carleman(GAUSS, z).value - oracles.GAUSS_CARLEMAN[z]) < 1e-9


@pytest.mark.parametrize("z", [1j, 0.5 + 2j, -1 - 0.5j, 3 - 1j])
def test_carleman_half_line(z):
    assert abs(carleman(EXP_RIGHT, z).value - oracles.exp_right_carleman(z)) < 1e-9
    assert abs(carleman(EXP_LEFT, z).value - oracles.exp_left_carleman(z)) < 1e-9
    assert abs(carleman(LAPLACE, z).value - oracles.laplace_carleman(z)) < 1e-9


def test_carleman_atom_at_origin_is_halved():
    assert carleman(dirac(0.0), 1j).value == 0.5
    assert carleman(dirac(0.0), -1j).value == -0.5
    assert carleman(dirac(0.0), -1j).branch == "lower"
    with pytest.raises(ValueError):
        carleman(dirac(0.0), 1.0)


@pytest.mark.parametrize("z0", [1 + 1j, -0.5 - 1.5j])
def test_carleman_mean_value_property(z0):
    # holomorphic in each half plane: value at the centre equals the circle mean
    r, n = 0.4, 16
    pts = z0 + r * np.exp(2j * math.pi * np.arange(n) / n)
    mean = np.mean([carleman(GAUSS, p).value for p in pts])
    assert abs(mean - carleman(GAUSS, z0).value) < 1e-8


def test_hilbert_of_lorentzian():
    # H[1/(1+t^2)](x) = x/(1+x^2) with the 1/(x-t) kernel
    for x in (0.0, 0.5, 2.0):
        v = hilbert_line(lambda t: 1 / (1 + t * t), x, 1e-8)
        assert abs(v - x / (1 + x * x)) < 1e-7


def test_generalised_hilbert_of_constant_is_zero():
    assert abs(hilbert_generalized(lambda t: np.ones_like(t), 0.7, 1e-7)) < 1e-6


def test_generalised_hilbert_cos_oracle():
    f = lambda t: np.cos(t) / (1 + t * t)     # noqa: E731
    hf = lambda x: (math.sin(x) + x / math.e) / (1 + x * x)   # noqa: E731
    v = hilbert_generalized(f, 0.7, 1e-9)
    # the generalised transform differs from H f by a constant: compare differences
    w = hilbert_generalized(f, 0.0, 1e-9)
    assert abs((v - w) - (hf(0.7) - hf(0.0))) < 1e-7


def test_bochner_kernel_limit_at_zero():
    for k in (1, 2, 3):
        v = bochner_kernel(0.0, 1.7, k)[0]
        assert abs(v - 1.7 ** k / math.factorial(k)) < 1e-15
        # continuity across the |x| = 1 switch
        a = bochner_kernel(1.0, 0.9, k)[0]
        b = bochner_kernel(1.0 + 1e-12, 0.9, k)[0]
        assert abs(a - (cmath.exp(-0.9j) - sum((-0.9j) ** j / math.factorial(j)
                                              for j in range(k))) / (-1j) ** k) < 1e-12
        assert abs(b - cmath.exp(-0.9j * (1 + 1e-12)) / (-1j * (1 + 1e-12)) ** k) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-5, 5))
def test_bochner_k0_is_fourier(x):
    assert bochner_transform(LAPLACE, 0, x) == fourier_measure(LAPLACE, x)


def test_bochner_class_check():
    with pytest.raises(MeasureError):
        bochner_transform(density_measure("1"), 1, 1.0)
    v = bochner_transform(density_measure("1"), 2, 1.0)
    assert np.isfinite(v)


def test_bochner_of_atom():
    mu = combine([(1, dirac(0.5)), (1, dirac(3.0, -2.0))])
    t = 0.8
    direct = (bochner_kernel(0.5, t, 2)[0] - 2 * bochner_kernel(3.0, t, 2)[0]) / math.sqrt(2 * math.pi)
    assert abs(bochner_transform(mu, 2, t) - direct) < 1e-15


REAL_MEASURES = [LAPLACE, GAUSS, EXP_RIGHT, combine([(1, dirac(1.0)), (2, dirac(-0.5))]),
                 density_measure("t*exp(-t^2)")]
SAMPLE_X = np.linspace(-4.0, 4.5, 10)


@pytest.mark.parametrize("idx", range(len(REAL_MEASURES)))
def test_conjugate_symmetry_and_bound(idx):
    from fourint.measure import total_variation
    mu = REAL_MEASURES[idx]
    bound = total_variation(mu) / math.sqrt(2 * math.pi)
    for x in SAMPLE_X:
        v = fourier_measure(mu, x)
        assert abs(fourier_measure(mu, -x) - v.conjugate()) < 1e-9
        assert abs(v) <= bound + 1e-9


@pytest.mark.parametrize("mu", [LAPLACE, EXP_RIGHT, EXP_LEFT])
@pytest.mark.parametrize("z0", [0.5 + 1j, -1 - 0.7j])
def test_carleman_small_circle_mean(mu, z0):
    pts = z0 + 0.01 * np.exp(2j * math.pi * np.arange(8) / 8)
    mean = np.mean([carleman(mu, p).value for p in pts])
    assert abs(mean - carleman(mu, z0).value) < 1e-6
