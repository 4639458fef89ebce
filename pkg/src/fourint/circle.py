"""The Wiener algebra on the unit circle, for trigonometric polynomials.

A :class:`CoeffSeq` holds finitely many Fourier coefficients c_n of
phi(x) = sum c_n e^{inx}.  The circle is traversed counterclockwise,
zeta = e^{ix}.  Conventions:

* Cauchy integral psi(z) = int_T phi(zeta) / (zeta - z) d zeta, equal to
  2 pi i sum_{n>=0} c_n z^n inside the disc and -2 pi i sum_{n<0} c_n z^n
  outside.
* Boundary principal value (1/pi) PV int_T phi(zeta)/(zeta - z) d zeta =
  i sum eta_n c_n z^n with eta_n = 1 for n >= 0 and -1 for n < 0.
* Conjugate function (Hw)(x) = PV (1/2pi) int_0^{2pi} cot((x-y)/2) w(y) dy,
  acting on coefficients as c_n -> -i sign(n) c_n.

Each identity is computed from the coefficients and cross-checked by an
independent quadrature.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConsistencyError, ConvergenceError, MeasureError
from .quad import PVResult, integrate_adaptive, limit_of

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class CoeffSeq:
    """Finitely supported coefficient sequence n -> c_n.

    Zero coefficients are dropped so that equality is structural.
    ``tail_bound`` is a caller-supplied bound on sum_{|n|>Nmax} |c_n| when
    the sequence truncates an infinite one.
    """

    coeffs: tuple = ()  # sorted tuple of (n, complex)
    tail_bound: float = 0.0

    def __post_init__(self):
        clean = {}
        for n, c in self.coeffs:
            if int(n) != n:
                raise MeasureError(f"coefficient index {n!r} is not an integer")
            n = int(n)
            if n in clean:
                raise MeasureError(f"duplicate coefficient index {n}")
            clean[n] = complex(c)
        items = tuple(sorted((n, c) for n, c in clean.items() if c != 0))
        object.__setattr__(self, "coeffs", items)
        if not self.tail_bound >= 0:
            raise MeasureError("tail bound must be non-negative")

    @classmethod
    def from_mapping(cls, mapping, tail_bound=0.0):
        return cls(tuple(mapping.items()), tail_bound)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "coeffs" not in data:
            raise MeasureError('coefficient input must be an object with a "coeffs" list')
        items = []
        for item in data["coeffs"]:
            try:
                items.append((int(item["n"]), complex(float(item.get("re", 0.0)),
                                                      float(item.get("im", 0.0)))))
            except (KeyError, TypeError, ValueError) as exc:
                raise MeasureError(f"bad coefficient entry {item!r}: {exc}") from exc
        return cls(tuple(items), float(data.get("tail_bound", 0.0)))

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MeasureError(f"invalid JSON at line {exc.lineno} column {exc.colno}: "
                               f"{exc.msg}") from exc
        return cls.from_dict(data)

    def to_dict(self):
        return {"coeffs": [{"n": n, "re": c.real, "im": c.imag} for n, c in self.coeffs]}

    def __getitem__(self, n):
        for m, c in self.coeffs:
            if m == n:
                return c
        return 0j

    @property
    def indices(self):
        return np.array([n for n, _ in self.coeffs], dtype=np.int64)

    @property
    def values(self):
        return np.array([c for _, c in self.coeffs], dtype=complex)

    @property
    def in_W0(self):
        return self[0] == 0

    def __neg__(self):
        return CoeffSeq(tuple((n, -c) for n, c in self.coeffs), self.tail_bound)

    def restricted(self, keep):
        return CoeffSeq(tuple((n, c) for n, c in self.coeffs if keep(n)))


def wiener_norm(w: CoeffSeq) -> float:
    """sum |c_n|, correctly rounded (independent of summation order)."""
    return math.fsum(abs(c) for _, c in w.coeffs)


def eval_on_circle(w: CoeffSeq, x):
    """phi(e^{ix}) = sum c_n e^{inx}; scalar or array x."""
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    out = kernels.trig_poly(w.indices, w.values, np.ascontiguousarray(xs))
    if np.ndim(x) == 0:
        return complex(out[0])
    return out.reshape(np.shape(x))


def _power_sum(w, z, keep):
    total = 0j
    for n, c in w.coeffs:
        if keep(n):
            total += c * z ** n
    return total


def _check_off_circle(z):
    if abs(abs(z) - 1.0) <= UNIT_TOL:
        raise ValueError("z must not lie on the unit circle")


def cauchy_coefficients(w: CoeffSeq, z) -> complex:
    """Coefficient formula for int_T phi(zeta)/(zeta - z) d zeta."""
    z = complex(z)
    _check_off_circle(z)
    if abs(z) < 1:
        return 2j * math.pi * _power_sum(w, z, lambda n: n >= 0)
    return -2j * math.pi * _power_sum(w, z, lambda n: n < 0)


def cauchy_quadrature(w: CoeffSeq, z, tol=1e-10, max_points=2 ** 22) -> PVResult:
    """Trapezoid rule in the angle, doubled until two levels agree within tol.

    The integrand is periodic and analytic, so the rule converges
    geometrically at rate |z|^M (or |z|^-M outside the disc).
    """
    z = complex(z)
    _check_off_circle(z)
    m = 64
    prev = None
    evals = 0
    while m <= max_points:
        theta = 2.0 * math.pi * np.arange(m) / m
        zeta = np.exp(1j * theta)
        vals = eval_on_circle(w, theta) * 1j * zeta / (zeta - z)
        evals += m
        cur = complex(vals.sum() * (2.0 * math.pi / m))
        if prev is not None and abs(cur - prev) <= tol:
            return PVResult(cur, abs(cur - prev), evals, True)
        prev = cur
        m *= 2
    return PVResult(prev, math.inf, evals, False, "trapezoid rule did not stabilise")


def cauchy_integral_disc(w: CoeffSeq, z, tol=1e-8) -> complex:
    """psi(z) from the coefficient formula, verified against quadrature."""
    value = cauchy_coefficients(w, z)
    quad_r = cauchy_quadrature(w, z, tol / 10)
    if not quad_r.converged:
        raise ConvergenceError("Cauchy integral quadrature did not converge", quad_r)
    if abs(quad_r.value - value) > 10 * tol:
        raise ConsistencyError(f"Cauchy integral routes disagree by "
                               f"{abs(quad_r.value - value):.3e}")
    return value


def _on_circle_angle(z):
    z = complex(z)
    if abs(abs(z) - 1.0) > UNIT_TOL:
        raise ValueError("z must lie on the unit circle (|z| = 1 within 1e-12)")
    return math.atan2(z.imag, z.real)


def pv_circle_coefficients(w: CoeffSeq, z) -> complex:
    """i sum eta_n c_n z^n."""
    _on_circle_angle(z)
    z = complex(z)
    total = 0j
    for n, c in w.coeffs:
        total += (1 if n >= 0 else -1) * c * z ** n
    return 1j * total


def _arc_limit(paired, tol, label):
    """lim_{eps->0} int_eps^pi paired(s) ds over eps_j = 2^-j pi/64."""
    base = integrate_adaptive(paired, math.pi / 64, math.pi, tol / 4)
    if not base.converged:
        return base
    acc = [base.value]

    def step(j):
        hi = math.pi / 64 * 2.0 ** (-j)
        r = integrate_adaptive(paired, hi / 2, hi, tol / 32)
        acc[0] += r.value
        return acc[0], r.abs_error_estimate

    v, e, ok, hint, hist = limit_of(step, tol, max_steps=60, label=label)
    return PVResult(v, e + base.abs_error_estimate, 0, ok, hint, hist)


def pv_circle_quadrature(w: CoeffSeq, z, tol=1e-10) -> PVResult:
    """(1/pi) PV int_T phi(zeta)/(zeta - z) d zeta with a symmetric arc excised.

    With zeta = z e^{is}, the integrand is i phi e^{is}/(e^{is} - 1) ds
    = (i/2) phi + (1/2) cot(s/2) phi; folding s and -s together leaves a
    bounded integrand on (0, pi).
    """
    x = _on_circle_angle(z)

    def paired(s):
        up = eval_on_circle(w, x + s)
        dn = eval_on_circle(w, x - s)
        return 0.5j * (up + dn) + 0.5 * (up - dn) / np.tan(0.5 * s)

    r = _arc_limit(paired, tol * math.pi, "arc excision limit (eps -> 0)")
    return PVResult(r.value / math.pi, r.abs_error_estimate / math.pi, r.evaluations,
                    r.converged, r.divergence_hint, r.history)


def pv_circle(w: CoeffSeq, z, tol=1e-8) -> complex:
    """i sum eta_n c_n z^n for |z| = 1, verified against PV quadrature."""
    value = pv_circle_coefficients(w, z)
    r = pv_circle_quadrature(w, z, tol / 10)
    if not r.converged:
        raise ConvergenceError(f"PV quadrature on the circle: {r.divergence_hint}", r)
    if abs(r.value - value) > 10 * tol:
        raise ConsistencyError(f"PV routes disagree by {abs(r.value - value):.3e}")
    return value


def hilbert_circle(w: CoeffSeq) -> CoeffSeq:
    """Coefficient action c_n -> -i sign(n) c_n, computed without rounding."""
    out = []
    for n, c in w.coeffs:
        if n > 0:
            out.append((n, complex(c.imag, -c.real)))
        elif n < 0:
            out.append((n, complex(-c.imag, c.real)))
    return CoeffSeq(tuple(out))


def hilbert_circle_quadrature(w: CoeffSeq, x, tol=1e-10) -> PVResult:
    """(Hw)(x) by the cotangent kernel, folded as cot(s/2)(w(x-s) - w(x+s))/(2 pi)."""
    x = float(x)

    def paired(s):
        return (eval_on_circle(w, x - s) - eval_on_circle(w, x + s)) / np.tan(0.5 * s)

    r = _arc_limit(paired, tol * 2 * math.pi, "cotangent excision limit (eps -> 0)")
    c = 1.0 / (2.0 * math.pi)
    return PVResult(c * r.value, c * r.abs_error_estimate, r.evaluations, r.converged,
                    r.divergence_hint, r.history)


def eigen_decompose(w: CoeffSeq):
    """Split w in W0 into its analytic (n > 0) and anti-analytic (n < 0) parts.

    H acts as -i on the first and +i on the second.
    """
    if not w.in_W0:
        raise MeasureError("eigen decomposition needs c_0 = 0")
    return w.restricted(lambda n: n > 0), w.restricted(lambda n: n < 0)
