"""Identity checkers: each side is computed by an independent route and the
gap is judged against a tolerance.

* :func:`carleman_identity` - (i/sqrt(2 pi)) PV int mu^(l)/(l + z) dl = F(z).
* :func:`povzner` - (i k!/sqrt(2 pi)) PV int mu^(k, l)/(l + z)^(k+1) dl = F(z).
* :func:`hilbert_identity` - (1/pi) PV int mu^(l)/(l - x) dl = -i nu^(x),
  d nu = sign(t) d mu.
* :func:`hilbert_eigenrelation` - H mu^ = +-i mu^ for half-line measures.
* :func:`hilbert_involution_E1` - h(h f) + f is constant.
* :func:`circle_isometry` - the conjugate operator preserves the Wiener norm
  on W0 and squares to -1.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .. import circle as circ
from ..errors import ConvergenceError, DomainError, MeasureError
from ..measure import Measure, in_class_Mk, sign_weight, total_variation
from ..quad import DEFAULT_PV_TOL, pv_double_limit, integrate_improper
from ..transforms import (SQRT_2PI, bochner_callable, carleman, fourier_callable,
                          fourier_measure, hilbert_generalized, hilbert_line)
from .sampling import as_expression, convergence, patched
from .verdict import Evidence, Verdict, compare, inconclusive


def _pv_tol(tol):
    return min(DEFAULT_PV_TOL, tol / 10.0)


def _finite(name, mu):
    try:
        tv = total_variation(mu)
    except MeasureError as exc:
        return None, inconclusive(name, f"measure is not finite: {exc}")
    return Evidence("total variation", tv, None, True), None


def _rhs_carleman(name, mu, z, ev):
    try:
        return carleman(mu, z).value, None
    except ConvergenceError as exc:
        return None, inconclusive(name, f"Carleman transform: {exc}",
                                  ev + [convergence("Carleman integral", exc.result)])


def _check_z(z):
    z = complex(z)
    if z.imag == 0:
        raise ValueError("z must have a non-zero imaginary part")
    return z


def carleman_lhs(mu, z, pv_tol=DEFAULT_PV_TOL):
    """(i/sqrt(2 pi)) PV int mu^(l)/(l + z) dl as a PVResult (value scaled)."""
    fhat = fourier_callable(mu)

    def integrand(lam):
        return fhat(lam) / (lam + z)

    return pv_double_limit(integrand, None, pv_tol)


def carleman_identity(mu: Measure, z, tol=1e-4, *, pv_tol=None,
                      convergence_only=False) -> Verdict:
    """Carleman transform as a principal value over the Fourier transform."""
    name = "carleman"
    z = _check_z(z)
    tv, bad = _finite(name, mu)
    if bad:
        return bad
    r = carleman_lhs(mu, z, pv_tol or _pv_tol(tol))
    conv = convergence("PV int mu^(l)/(l + z) dl (symmetric limit at infinity)", r)
    if convergence_only:
        return Verdict(name + "-convergence", bool(r.converged), not r.converged,
                       evidence=(tv, conv),
                       notes="only the existence of the principal value is reported")
    if not r.converged:
        return inconclusive(name, "principal value did not converge", [tv, conv])
    lhs = 1j / SQRT_2PI * r.value
    rhs, bad = _rhs_carleman(name, mu, z, [tv, conv])
    if bad:
        return bad
    return compare(name, lhs, rhs, tol, [tv, conv])


def povzner(mu: Measure, k, z, tol=1e-3, *, pv_tol=None) -> Verdict:
    """Carleman transform from the Bochner k-th transform."""
    name = "povzner"
    z = _check_z(z)
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    report = in_class_Mk(mu, k)
    cls = Evidence(f"d|mu|/(1 + |x|^{k}) finite", report.weighted_variation, None,
                   report.in_class)
    if not report.in_class:
        return inconclusive(name, f"measure is not in M_{k}: {report.diagnostics}", [cls])
    if k == 0:
        r = carleman_lhs(mu, z, pv_tol or _pv_tol(tol))
    else:
        bhat = bochner_callable(mu, k)

        def integrand(lam):
            return bhat(lam) / (lam + z) ** (k + 1)

        r = pv_double_limit(integrand, None, pv_tol or _pv_tol(tol))
    conv = convergence(f"PV int mu^({k}, l)/(l + z)^{k + 1} dl", r)
    if not r.converged:
        return inconclusive(name, "principal value did not converge", [cls, conv])
    lhs = 1j * math.factorial(k) / SQRT_2PI * r.value
    rhs, bad = _rhs_carleman(name, mu, z, [cls, conv])
    if bad:
        return bad
    return compare(name, lhs, rhs, tol, [cls, conv])


def hilbert_identity(mu: Measure, x, tol=1e-4, *, pv_tol=None) -> Verdict:
    """(1/pi) PV int mu^(l)/(l - x) dl = -i nu^(x) with d nu = sign(t) d mu."""
    name = "hilbert"
    x = float(x)
    tv, bad = _finite(name, mu)
    if bad:
        return bad
    fhat = fourier_callable(mu)

    def integrand(lam):
        return fhat(lam) / (lam - x)

    r = pv_double_limit(integrand, x, pv_tol or _pv_tol(tol))
    conv = convergence(f"PV int mu^(l)/(l - {x!r}) dl", r)
    if not r.converged:
        return inconclusive(name, "principal value did not converge", [tv, conv])
    lhs = r.value / math.pi
    try:
        rhs = -1j * fourier_measure(sign_weight(mu), x)
    except ConvergenceError as exc:
        return inconclusive(name, f"transform of sign(t) d mu: {exc}", [tv, conv])
    return compare(name, lhs, rhs, tol, [tv, conv])


def hilbert_eigenrelation(mu: Measure, points, tol=1e-4) -> Verdict:
    """H mu^ = i mu^ for mu on [0, inf), -i mu^ for mu on (-inf, 0]."""
    name = "eigenrelation"
    if mu.support_within(0.0, math.inf):
        sign = 1
    elif mu.support_within(-math.inf, 0.0):
        sign = -1
    else:
        return inconclusive(name, "measure is not supported in a half line")
    fhat = fourier_callable(mu)
    ev = []
    worst = (-1.0, None, None)
    for x in points:
        r = hilbert_line(fhat, float(x), _pv_tol(tol), full=True)
        if not r.converged:
            return inconclusive(name, f"Hilbert transform at x={x}: {r.divergence_hint}",
                                ev + [convergence(f"H mu^({x})", r)])
        lhs = complex(r.value)
        rhs = sign * 1j * complex(fourier_measure(mu, float(x)))
        gap = abs(lhs - rhs)
        ev.append(Evidence(f"|H mu^({x!r}) - ({'+' if sign > 0 else '-'}i) mu^({x!r})|",
                           gap, tol, gap <= tol))
        if gap > worst[0]:
            worst = (gap, lhs, rhs)
    return compare(name, worst[1], worst[2], tol, ev,
                   notes=f"eigenvalue {'+' if sign > 0 else '-'}i; lhs/rhs at the worst point")


# ---------------------------------------------------------------------------
# h^2 f = -f + C
# ---------------------------------------------------------------------------

TABLE_HALF_WIDTH = 64.0
PANEL_WIDTH = 2.0
CHEB_DEGREE = 15
MAX_SPLITS = 3


class _PiecewiseChebyshev:
    """Piecewise Chebyshev interpolant of a scalar function on [-T, T],
    panels split while the trailing coefficients stay above ``tol``."""

    def __init__(self, fn, half_width, tol):
        edges = np.linspace(-half_width, half_width,
                            int(round(2 * half_width / PANEL_WIDTH)) + 1)
        todo = [(lo, hi, 0) for lo, hi in zip(edges[:-1], edges[1:])]
        done = []
        self.samples = 0
        while todo:
            lo, hi, level = todo.pop()
            c = self._fit(fn, lo, hi)
            if np.max(np.abs(c[-2:])) > tol and level < MAX_SPLITS:
                mid = 0.5 * (lo + hi)
                todo += [(lo, mid, level + 1), (mid, hi, level + 1)]
            else:
                done.append((lo, hi, c))
        done.sort()
        self.lo = np.array([d[0] for d in done])
        self.hi = np.array([d[1] for d in done])
        self.coef = np.array([d[2] for d in done])

    def _fit(self, fn, lo, hi):
        def mapped(u):
            return np.array([fn(0.5 * (lo + hi) + 0.5 * (hi - lo) * v) for v in u])
        self.samples += CHEB_DEGREE + 1
        return cheb.chebinterpolate(mapped, CHEB_DEGREE)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        i = np.clip(np.searchsorted(self.hi, x), 0, len(self.hi) - 1)
        u = (2.0 * x - self.lo[i] - self.hi[i]) / (self.hi[i] - self.lo[i])
        return cheb.chebval(u, self.coef[i].T, tensor=False)


def _tail_model(g, tol):
    """hf(t) ~ c0 + m0/(pi t) + m1/(pi t^2) for large |t|, from the
    expansion of the kernel in powers of 1/t (m_j = int u^j f(u) du).
    The moments are taken as symmetric limits, which agree with the plain
    integrals whenever those converge and damp oscillating tails."""
    parts = []
    for label, fn in (("int u f(u)/(1+u^2) du", lambda u: u * g(u) / (1 + u * u)),
                      ("int f(u) du", g),
                      ("PV int u f(u) du", lambda u: u * g(u))):
        parts.append((label, pv_double_limit(fn, None, tol)))
    c0 = parts[0][1].value.real / math.pi if parts[0][1].converged else math.nan
    m0 = parts[1][1].value.real if parts[1][1].converged else math.nan
    m1 = parts[2][1].value.real if parts[2][1].converged else 0.0

    def model(t):
        t = np.asarray(t, dtype=float)
        return c0 + m0 / (math.pi * t) + m1 / (math.pi * t * t)
    return model, parts, math.isfinite(c0) and math.isfinite(m0)


def hilbert_involution_E1(f, sample_points=(-2.0, 0.0, 1.0, 3.0), tol=1e-3, *,
                          half_width=TABLE_HALF_WIDTH) -> Verdict:
    """h(h f) + f is the same constant C at every sample point."""
    name = "E1"
    fe = as_expression(f)
    g = patched(fe)
    pre = integrate_improper(lambda u: g(u) ** 2 / (1 + u * u), -math.inf, math.inf, 1e-8)
    ev = [convergence("int |f|^2/(1 + x^2) dx", pre)]
    if not pre.converged:
        return inconclusive(name, "f is not in the domain of h", ev)
    inner_tol = 1e-9

    def hf_point(s):
        return hilbert_generalized(g, float(s), inner_tol)

    try:
        table = _PiecewiseChebyshev(hf_point, half_width, 1e-9)
        model, parts, ok = _tail_model(g, 1e-9)
    except ConvergenceError as exc:
        return inconclusive(name, f"inner transform: {exc}", ev)
    ev += [convergence(label, r) for label, r in parts]
    if not ok:
        return inconclusive(name, "tail model of h f unavailable", ev)
    seam = float(max(abs(table(np.array([s * half_width]))[0] - model(np.array([s * half_width]))[0])
                     for s in (-1.0, 1.0)))
    ev.append(Evidence(f"|table - tail model| at |t| = {half_width}", seam, None, None))
    ev.append(Evidence("inner evaluations tabulated", table.samples, None, None))

    def hf(t):
        t = np.asarray(t, dtype=float)
        inside = np.abs(t) <= half_width
        out = np.empty(t.shape)
        out[inside] = table(t[inside])
        out[~inside] = model(t[~inside])
        return out

    sums = []
    for x in sample_points:
        r = hilbert_generalized(hf, float(x), 1e-7, full=True)
        if not r.converged:
            return inconclusive(name, f"outer transform at x={x}: {r.divergence_hint}",
                                ev + [convergence(f"h(h f)({x})", r)])
        s = float(r.value.real) + float(g(np.array([float(x)]))[0])
        sums.append(s)
        ev.append(Evidence(f"h(h f)({x!r}) + f({x!r})", s, None, None))
    c = float(np.mean(sums))
    spread = float(max(sums) - min(sums))
    ev.append(Evidence("spread of h(h f) + f over the sample points", spread, tol,
                       spread <= tol))
    return Verdict(name, bool(spread <= tol), False, evidence=tuple(ev), value=c,
                   notes=f"C = {c!r}")


# ---------------------------------------------------------------------------
# Circle
# ---------------------------------------------------------------------------

def circle_isometry(w: circ.CoeffSeq) -> Verdict:
    """||H w|| = ||w|| and H(H w) = -w exactly, for w in W0."""
    name = "circle-isometry"
    if not w.in_W0:
        return inconclusive(name, "c_0 must vanish")
    hw = circ.hilbert_circle(w)
    n_in, n_out = circ.wiener_norm(w), circ.wiener_norm(hw)
    twice = circ.hilbert_circle(hw)
    inv = twice == -w
    ev = (Evidence("||H w|| - ||w||", n_out - n_in, 0.0, n_out == n_in),
          Evidence("H(H w) == -w", inv, None, inv))
    return Verdict(name, bool(n_out == n_in and inv), False, complex(n_out), complex(n_in),
                   abs(n_out - n_in), ev)


def circle_pv(w: circ.CoeffSeq, z, tol=1e-6) -> Verdict:
    """Coefficient formula for the boundary principal value against quadrature."""
    try:
        r = circ.pv_circle_quadrature(w, z, tol / 10)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    conv = convergence("PV quadrature on the circle", r)
    if not r.converged:
        return inconclusive("circle-pv", "arc excision limit did not converge", [conv])
    return compare("circle-pv", r.value, circ.pv_circle_coefficients(w, z), tol, [conv])


def circle_cauchy(w: circ.CoeffSeq, z, tol=1e-8) -> Verdict:
    r = circ.cauchy_quadrature(w, z, tol / 10)
    conv = convergence("trapezoid rule on the circle", r)
    if not r.converged:
        return inconclusive("circle-cauchy", "trapezoid rule did not stabilise", [conv])
    return compare("circle-cauchy", r.value, circ.cauchy_coefficients(w, z), tol, [conv])
