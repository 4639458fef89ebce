"""Transforms of measures and functions on the line.

Normalisations:

* Fourier transform of a measure: mu^(x) = (2 pi)^-1/2 int e^{-ixt} d mu(t).
* Cosine / sine transforms: F_c(t) = sqrt(2/pi) int_0^inf f(x) cos(xt) dx,
  F_s likewise with sin.
* Carleman transform: F+(z) = int'_[0,inf) e^{itz} d mu for Im z > 0 and
  F-(z) = -int'_(-inf,0] e^{itz} d mu for Im z < 0, where the prime means
  an atom at 0 is counted with half its weight on either half line.
* Hilbert transform on the line: (Hf)(x) = (1/pi) PV int f(t) / (x - t) dt.
* Generalised Hilbert transform: the same with kernel
  1/(x - t) + t/(1 + t^2), defined for int |f|^2/(1+t^2) < inf.
* Bochner k-th transform: (2 pi)^-1/2 int (e^{-ixt} - P_{k-1}(x,t)) / (-ix)^k d mu
  with P_{k-1} the Taylor polynomial of e^{-ixt} of degree k-1 in x,
  kept only for |x| <= 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, MeasureError
from .measure import Measure, in_class_Mk
from .quad import (DEFAULT_PV_TOL, PVResult, integrate_adaptive, integrate_improper,
                   integrate_oscillatory, pv_double_limit)

SQRT_2PI = math.sqrt(2.0 * math.pi)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
INNER_TOL = 1e-10


def _require(r: PVResult, what: str) -> complex:
    if not r.converged:
        raise ConvergenceError(f"{what} did not converge: {r.divergence_hint}", r)
    return r.value


# ---------------------------------------------------------------------------
# Fourier transform of a measure
# ---------------------------------------------------------------------------

def _oscillatory_segment(amp, omega, a, b, tol, what):
    """int_a^b amp(t) e^{-i omega t} dt for any a < b (either end may be infinite)."""
    if a < 0 < b and (math.isinf(a) or math.isinf(b)):
        return (_oscillatory_segment(amp, omega, a, 0.0, tol / 2, what)
                + _oscillatory_segment(amp, omega, 0.0, b, tol / 2, what))
    if omega == 0.0:
        return _require(integrate_improper(amp, a, b, tol), what)
    if math.isinf(a):
        def flipped(s):
            return amp(-s)
        upper = None if math.isinf(b) else -b
        if upper is None:
            raise ValueError("segment must have at least one finite end here")
        return _require(integrate_oscillatory(flipped, -omega, "exp", upper, tol), what)
    end = None if math.isinf(b) else b
    return _require(integrate_oscillatory(amp, omega, "exp", a, tol, b=end), what)


def _fourier_scalar(mu: Measure, x: float, tol: float) -> complex:
    total = 0j
    for at in mu.atoms:
        total += at.weight * complex(math.cos(x * at.t), -math.sin(x * at.t))
    for p in mu.pieces:
        total += _oscillatory_segment(p.density, x, p.a, p.b, tol,
                                      f"Fourier integral over [{p.a}, {p.b}] at x={x}")
    return total / SQRT_2PI


def fourier_measure(mu: Measure, x, tol=INNER_TOL):
    """mu^(x); ``x`` may be a scalar or an array (evaluated pointwise)."""
    if np.ndim(x) == 0:
        return _fourier_scalar(mu, float(x), tol)
    xs = np.asarray(x, dtype=float)
    return np.array([_fourier_scalar(mu, float(v), tol) for v in xs.ravel()]).reshape(xs.shape)


def fourier_callable(mu: Measure, tol=INNER_TOL):
    """Vectorised handle lambda -> mu^(lambda) for use as a quadrature integrand."""
    if not mu.pieces:
        locs = np.array([a.t for a in mu.atoms])
        w = np.array([a.weight for a in mu.atoms])

        def atomic(lam):
            lam = np.asarray(lam, dtype=float)
            if locs.size == 0:
                return np.zeros(lam.shape, dtype=complex)
            return np.exp(-1j * np.multiply.outer(lam, locs)) @ w / SQRT_2PI
        return atomic
    return lambda lam: fourier_measure(mu, lam, tol)


# ---------------------------------------------------------------------------
# Sine and cosine transforms
# ---------------------------------------------------------------------------

def _trig_transform(f, t, kind, tol, full):
    t = float(t)
    if not t > 0:
        raise ValueError("the transform variable t must be positive")
    r = integrate_oscillatory(f, t, kind, 0.0, tol)
    scaled = PVResult(SQRT_2_OVER_PI * r.value, SQRT_2_OVER_PI * r.abs_error_estimate,
                      r.evaluations, r.converged, r.divergence_hint, r.history)
    if full:
        return scaled
    return float(_require(scaled, f"{kind} transform at t={t}").real)


def cosine_transform(f, t, tol=INNER_TOL, *, full=False):
    """F_c(t) = sqrt(2/pi) int_0^inf f(x) cos(xt) dx."""
    return _trig_transform(f, t, "cos", tol, full)


def sine_transform(f, t, tol=INNER_TOL, *, full=False):
    """F_s(t) = sqrt(2/pi) int_0^inf f(x) sin(xt) dx."""
    return _trig_transform(f, t, "sin", tol, full)


# ---------------------------------------------------------------------------
# Carleman transform
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CarlemanValue:
    z: complex
    value: complex
    branch: str  # "upper" or "lower"

    def __post_init__(self):
        if self.z.imag == 0:
            raise ValueError("Carleman transform needs Im z != 0")
        if self.branch != ("upper" if self.z.imag > 0 else "lower"):
            raise ValueError("branch must match the half-plane of z")


def carleman(mu: Measure, z, tol=INNER_TOL) -> CarlemanValue:
    """F+(z) (Im z > 0) or F-(z) (Im z < 0) with the primed half-line convention."""
    z = complex(z)
    if z.imag == 0:
        raise ValueError("Carleman transform needs Im z != 0")
    upper = z.imag > 0
    total = 0j
    for at in mu.atoms:
        w = at.weight * np.exp(1j * at.t * z)
        if at.t == 0:
            total += 0.5 * at.weight
        elif (at.t > 0) == upper:
            total += w
    for p in mu.pieces:
        a, b = (max(p.a, 0.0), p.b) if upper else (p.a, min(p.b, 0.0))
        if not a < b:
            continue

        def integrand(t, p=p):
            return p.density(t) * np.exp(1j * t * z)

        r = integrate_improper(integrand, a, b, tol)
        total += _require(r, f"Carleman integral over [{a}, {b}] at z={z}")
    value = total if upper else -total
    return CarlemanValue(z, complex(value), "upper" if upper else "lower")


# ---------------------------------------------------------------------------
# Hilbert transforms on the line
# ---------------------------------------------------------------------------

def _scaled(r: PVResult, c) -> PVResult:
    return PVResult(c * r.value, abs(c) * r.abs_error_estimate, r.evaluations,
                    r.converged, r.divergence_hint, r.history)


def hilbert_line(phi, x, tol=DEFAULT_PV_TOL, *, full=False, cancel=None):
    """(H phi)(x) = (1/pi) PV int phi(t) / (x - t) dt (symmetric double limit)."""
    x = float(x)

    def integrand(t):
        return np.asarray(phi(t)) / (x - t)

    r = _scaled(pv_double_limit(integrand, x0=x, tol=tol * math.pi, cancel=cancel),
                1.0 / math.pi)
    if full:
        return r
    return _require(r, f"Hilbert transform at x={x}")


def hilbert_generalized(f, x, tol=DEFAULT_PV_TOL, *, full=False, cancel=None):
    """(h f)(x) = (1/pi) PV int (1/(x - t) + t/(1 + t^2)) f(t) dt.

    The two kernel terms are combined as (1 + x t) / ((x - t)(1 + t^2)),
    which decays like 1/t^2 and avoids cancellation for large |t|.
    """
    x = float(x)

    def integrand(t):
        return np.asarray(f(t)) * (1.0 + x * t) / ((x - t) * (1.0 + t * t))

    r = _scaled(pv_double_limit(integrand, x0=x, tol=tol * math.pi, cancel=cancel),
                1.0 / math.pi)
    if full:
        return r
    return float(_require(r, f"generalised Hilbert transform at x={x}").real)


# ---------------------------------------------------------------------------
# Bochner k-th transform
# ---------------------------------------------------------------------------

def bochner_kernel(x, t, k):
    """(e^{-ixt} - P_{k-1}(x,t)) / (-ix)^k with the |x| <= 1 cut-off.

    For |x| <= 1 this equals t^k E_k(-ixt), E_k(w) = sum_j w^j/(j+k)!,
    which is evaluated by its series near w = 0, so x = 0 needs no patch
    (the limit there is t^k / k!).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x.shape, dtype=complex)
    near = np.abs(x) <= 1.0
    if np.any(near):
        w = np.ascontiguousarray(-1j * x[near] * t)
        out[near] = t ** k * kernels.taylor_remainder(w, k)
    far = ~near
    if np.any(far):
        xf = x[far]
        out[far] = np.exp(-1j * xf * t) / (-1j * xf) ** k
    return out


def _bochner_scalar(mu, k, t, tol):
    total = 0j
    if mu.atoms:
        locs = np.array([a.t for a in mu.atoms])
        w = np.array([a.weight for a in mu.atoms])
        total += complex(np.sum(bochner_kernel(locs, t, k) * w))
    for p in mu.pieces:
        what = f"Bochner integral over [{p.a}, {p.b}] at t={t}"
        lo, hi = max(p.a, -1.0), min(p.b, 1.0)
        if lo < hi:
            def near(x, p=p):
                return p.density(x) * bochner_kernel(x, t, k)
            total += _require(integrate_adaptive(near, lo, hi, tol, points=[0.0]), what)
        for a, b in ((p.a, min(p.b, -1.0)), (max(p.a, 1.0), p.b)):
            if not a < b:
                continue

            def amp(x, p=p):
                x = np.asarray(x, dtype=float)
                return p.density(x) / (-1j * x) ** k

            total += _oscillatory_segment(amp, t, a, b, tol, what)
    return total / SQRT_2PI


def bochner_transform(mu: Measure, k: int, t, tol=INNER_TOL, *, check_class=True):
    """mu^(k, t).  For k = 0 this is exactly :func:`fourier_measure`."""
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return fourier_measure(mu, t, tol)
    if check_class:
        report = in_class_Mk(mu, k)
        if not report.in_class:
            raise MeasureError(f"measure is not in M_{k}: {report.diagnostics}")
    if np.ndim(t) == 0:
        return _bochner_scalar(mu, k, float(t), tol)
    ts = np.asarray(t, dtype=float)
    return np.array([_bochner_scalar(mu, k, float(v), tol)
                     for v in ts.ravel()]).reshape(ts.shape)


def bochner_callable(mu: Measure, k: int, tol=INNER_TOL):
    """Vectorised handle lambda -> mu^(k, lambda); the class check runs once."""
    if k == 0:
        return fourier_callable(mu, tol)
    report = in_class_Mk(mu, k)
    if not report.in_class:
        raise MeasureError(f"measure is not in M_{k}: {report.diagnostics}")
    return lambda lam: bochner_transform(mu, k, lam, tol, check_class=False)
