"""Membership of a function in the Wiener algebra F(R) of Fourier
transforms of integrable functions.

* :func:`check_C0` - R continuous, vanishing at infinity and convex or
  concave on each piece of a finite partition is in F(R) exactly when
  int_1^inf |R(x) - R(-x)|/x dx and every int_0^1 |R(a_k + x) - R(a_k - x)|/x dx
  converge.
* :func:`check_d1`, :func:`check_d2`, :func:`check_6alpha` - sufficient
  conditions for even, odd and general R in terms of
  g(t) = int_0^b R'(x) sin(xt) dx (or cos, or the even/odd parts of R')
  and the variation integral int_b^inf V_x^inf R' dx.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..quad import (PVResult, integrate_improper, integrate_to_endpoint, limit_of)
from .sampling import (as_expression, convergence, convexity, defined_on, infer_sign,
                       patched, piece_samples, tends_to_zero, values)
from .verdict import ConvexityPartition, Evidence, Verdict, inconclusive

CONV_TOL = 1e-8
SYMMETRY_TOL = 1e-12
PARITY_GRID = np.logspace(-4.0, 4.0, 200)
FD_STEP = 1e-6
GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
MAX_WINDOWS = 11
MAX_WORK = 6e8
WINDOW_REL_TOL = 1e-3
_trapezoid = getattr(np, "trapezoid", None) or np.trapz  # numpy < 2 spelling


def _verdict(name, hyp, cond, notes=""):
    ev = tuple(hyp) + tuple(cond)
    if not all(e.ok for e in hyp):
        return inconclusive(name, "hypotheses not met" + (f"; {notes}" if notes else ""), ev)
    return Verdict(name, all(bool(e.ok) for e in cond), False, evidence=ev, notes=notes)


# ---------------------------------------------------------------------------
# C0: necessary and sufficient criterion for piecewise convex R
# ---------------------------------------------------------------------------

def _continuity_at(f, a):
    """|f(a + d) - f(a - d)| shrinks as d -> 0 (d = 1e-3, 1e-5, 1e-7, 1e-9)."""
    d = np.array([1e-3, 1e-5, 1e-7, 1e-9]) * max(1.0, abs(a))
    jump = np.abs(values(f, a + d) - values(f, a - d))
    ok = bool(np.all(np.isfinite(jump)) and np.all(np.diff(jump) <= 1e-15)
              and (jump[-1] < jump[0] or jump[-1] <= 1e-12))
    return Evidence(f"continuous at {a!r} (jump at distance 1e-9)", float(jump[-1]), None, ok)


def check_C0(R, partition: ConvexityPartition, tol=CONV_TOL) -> Verdict:
    """R in F(R) iff the listed integrals converge, for piecewise convex R."""
    name = "C0"
    expr = as_expression(R)
    if not isinstance(partition, ConvexityPartition):
        partition = ConvexityPartition(tuple(partition))
    f = patched(expr)
    hyp = []
    for i, (a, b) in enumerate(partition.pieces):
        xs = piece_samples(a, b)
        hyp.append(defined_on(expr, xs, f"piece [{a}, {b}]"))
        sign = partition.piece_signs[i] if partition.piece_signs else infer_sign(expr, xs)
        if sign == 0:
            hyp.append(Evidence(f"piece [{a}, {b}]: neither convex nor concave", False,
                                None, False))
        else:
            word = "convex" if sign > 0 else "concave"
            hyp.append(convexity(expr, xs, sign, f"piece [{a}, {b}] {word}"))
    hyp.append(tends_to_zero(expr, 1))
    hyp.append(tends_to_zero(expr, -1))
    for a in partition.breakpoints:
        hyp.append(_continuity_at(expr, a))
    if not all(e.ok for e in hyp):
        return _verdict(name, hyp, [])

    def odd_at_infinity(x):
        return np.abs(f(x) - f(-x)) / x

    cond = [convergence("int_1^inf |R(x) - R(-x)|/x dx",
                        integrate_improper(odd_at_infinity, 1.0, math.inf, tol))]
    for a in partition.breakpoints:
        def local(x, a=a):
            return np.abs(f(a + x) - f(a - x)) / x
        try:
            r = integrate_to_endpoint(local, 0.0, 1.0, tol)
        except DomainError as exc:
            r = PVResult(complex("nan"), math.inf, 0, False, str(exc))
        cond.append(convergence(f"int_0^1 |R({a!r} + x) - R({a!r} - x)|/x dx", r))
    return _verdict(name, hyp, cond)


# ---------------------------------------------------------------------------
# Sufficient conditions d1, d2, 6alpha
# ---------------------------------------------------------------------------

def derivative(f):
    """Central-difference R' with a relative step; kinks only matter within it."""
    def d(x):
        x = np.asarray(x, dtype=float)
        h = FD_STEP * np.maximum(1.0, np.abs(x))
        return (f(x + h) - f(x - h)) / (2.0 * h)
    return d


def _trig_family(kern, b, ts, kind):
    """int_0^b kern(x) trig(x t) dx for every t in ts (composite 16-point
    Gauss-Legendre with panels of at most half a period at max(ts))."""
    tmax = float(np.max(ts))
    npan = max(8, int(math.ceil(b * tmax / math.pi)))
    edges = np.linspace(0.0, b, npan + 1)
    half = 0.5 * np.diff(edges)
    x = ((edges[:-1] + half)[:, None] + half[:, None] * GL_NODES[None, :]).ravel()
    w = (half[:, None] * GL_WEIGHTS[None, :]).ravel()
    kw = kern(x) * w
    trig = np.sin if kind == "sin" else np.cos
    out = np.empty(len(ts))
    chunk = max(1, int(2e7 // x.size))
    for i in range(0, len(ts), chunk):
        out[i:i + chunk] = trig(np.multiply.outer(ts[i:i + chunk], x)) @ kw
    return out


def _abs_over_t(kern, b, kind, tol, label):
    """int_1^inf |g(t)|/t dt over dyadic windows [2^j, 2^(j+1)].

    |g| oscillates with period about pi/b, so each window uses the
    trapezoid rule with 64 points per period.  Only convergence is at
    stake, so the limit rule runs at ``tol`` relative to the first window.
    """
    if b == 0:
        return Evidence(f"{label}: b = 0, so g vanishes", 0.0, None, True)

    def window(j):
        lo, hi = 2.0 ** j, 2.0 ** (j + 1)
        n = int(max(256, math.ceil((hi - lo) * b * 64 / math.pi)))
        npan = max(8, math.ceil(b * hi / math.pi))
        if n * npan * 16 > MAX_WORK:
            raise DomainError("work limit reached")
        ts = np.linspace(lo, hi, n + 1)
        y = np.abs(_trig_family(kern, b, ts, kind)) / ts
        return float(_trapezoid(y, ts))

    first = window(0)
    if first == 0.0:
        return Evidence(f"{label}: g vanishes on [1, 2]", 0.0, None, True)
    acc = [0.0]

    def step(j):
        acc[0] += first if j == 0 else window(j)
        return acc[0], 0.0

    try:
        v, e, ok, hint, hist = limit_of(step, tol * first, max_steps=MAX_WINDOWS, label=label)
    except DomainError as exc:
        return Evidence(label, f"undecided: {exc}", None, False)
    return convergence(label, PVResult(v, e, 0, ok, hint, hist))


def _tail_grid(b, n):
    u = np.concatenate([np.linspace(0.0, 1.0, n, endpoint=False),
                        np.logspace(0.0, 12.0, 12 * n)])
    return b + u


def _variation_integral(rp, b, tol, label, n=512):
    """int_b^inf V_x^inf R' dx, with V from the tabulated R' on a grid
    (uniform on [b, b+1], log-spaced beyond) and checked against the grid
    with twice the density."""
    results = []
    for dens in (n, 2 * n):
        x = _tail_grid(b, dens)
        d = rp(x)
        if not np.all(np.isfinite(d)):
            return Evidence(label, "R' undefined on the grid", None, False)
        jumps = np.abs(np.diff(d))
        var = np.concatenate([np.cumsum(jumps[::-1])[::-1], [0.0]]) + abs(d[-1])
        seg = 0.5 * (var[1:] + var[:-1]) * np.diff(x)
        cum = np.concatenate([[0.0], np.cumsum(seg)])

        def step(j, x=x, cum=cum):
            top = b + 16.0 * 2.0 ** j
            if top > x[-1]:
                raise DomainError("grid exhausted")
            return float(np.interp(top, x, cum)), 0.0

        try:
            results.append(limit_of(step, tol, max_steps=36, label=label))
        except DomainError as exc:
            return Evidence(label, f"undecided: {exc}", None, False)
    (v1, e1, ok1, h1, _), (v2, e2, ok2, h2, hist) = results
    ok = ok1 and ok2 and abs(v1 - v2) <= max(1e-3 * abs(v2), 10 * tol)
    hint = h2 or h1 or ("" if ok else f"grid refinement changed the value by {abs(v1 - v2):.3e}")
    return convergence(label, PVResult(v2, abs(v1 - v2) + e2, 0, ok, hint or "", hist))


def _common(expr, f, rp, tol):
    hyp = [defined_on(expr, np.concatenate([-PARITY_GRID, PARITY_GRID]), "R on the sample grid"),
           tends_to_zero(expr, 1), tends_to_zero(expr, -1)]
    l1 = integrate_improper(lambda x: np.abs(rp(x)), -math.inf, math.inf, tol)
    hyp.append(convergence("R' is integrable on the line", l1))
    return hyp


def _parity(expr, sign, label):
    x = PARITY_GRID
    a, c = values(expr, x), values(expr, -x)
    gap = float(np.max(np.abs(a - sign * c) / (1.0 + np.abs(a))))
    return Evidence(f"{label} (largest relative defect)", gap, SYMMETRY_TOL,
                    bool(np.isfinite(gap) and gap <= SYMMETRY_TOL))


def check_d1(R, b=0.0, tol=1e-5) -> Verdict:
    """Even R: int_1^inf |g|/t < inf with g = int_0^b R' sin(xt), and
    int_b^inf V_x^inf R' dx < inf."""
    name = "d1"
    expr, b = as_expression(R), float(b)
    if b < 0:
        raise ValueError("b must be non-negative")
    f = patched(expr)
    rp = derivative(f)
    hyp = [_parity(expr, 1, "R even")] + _common(expr, f, rp, CONV_TOL)
    if not all(e.ok for e in hyp):
        return _verdict(name, hyp, [])
    cond = [_abs_over_t(rp, b, "sin", WINDOW_REL_TOL, "int_1^inf |g(t)|/t dt, g = int_0^b R' sin(xt)"),
            _variation_integral(rp, b, tol, "int_b^inf V_x^inf R' dx")]
    return _verdict(name, hyp, cond)


def check_d2(R, b=0.0, tol=1e-5) -> Verdict:
    """Odd R with R(0) = 0: int_0^inf |R|/x < inf, int_1^inf |g|/t < inf with
    g = int_0^b R' cos(xt), and int_b^inf V_x^inf R' dx < inf."""
    name = "d2"
    expr, b = as_expression(R), float(b)
    if b < 0:
        raise ValueError("b must be non-negative")
    f = patched(expr)
    rp = derivative(f)
    r0 = float(f(np.array([0.0]))[0])
    hyp = [_parity(expr, -1, "R odd"),
           Evidence("|R(0)|", abs(r0), SYMMETRY_TOL, abs(r0) <= SYMMETRY_TOL)]
    hyp += _common(expr, f, rp, CONV_TOL)
    if not all(e.ok for e in hyp):
        return _verdict(name, hyp, [])
    near = integrate_to_endpoint(lambda x: np.abs(f(x)) / x, 0.0, 1.0, CONV_TOL)
    far = integrate_improper(lambda x: np.abs(f(x)) / x, 1.0, math.inf, CONV_TOL)
    both = PVResult(near.value + far.value, near.abs_error_estimate + far.abs_error_estimate,
                    near.evaluations + far.evaluations, near.converged and far.converged,
                    "; ".join(h for h in (near.divergence_hint, far.divergence_hint) if h),
                    near.history + far.history)
    cond = [convergence("int_0^inf |R(x)|/x dx", both),
            _abs_over_t(rp, b, "cos", WINDOW_REL_TOL, "int_1^inf |g(t)|/t dt, g = int_0^b R' cos(xt)"),
            _variation_integral(rp, b, tol, "int_b^inf V_x^inf R' dx")]
    return _verdict(name, hyp, cond)


def check_6alpha(R, b=0.0, tol=1e-5) -> Verdict:
    """No parity: int_0^inf |R(x) - R(-x)|/x < inf; g = int_0^b (R'(x) - R'(-x)) sin(xt)
    and h = int_0^b (R'(x) + R'(-x)) cos(xt) with int_1^inf |.|/t < inf; and the
    variation integrals on both half lines."""
    name = "6alpha"
    expr, b = as_expression(R), float(b)
    if b < 0:
        raise ValueError("b must be non-negative")
    f = patched(expr)
    rp = derivative(f)
    hyp = _common(expr, f, rp, CONV_TOL)
    if not all(e.ok for e in hyp):
        return _verdict(name, hyp, [])

    def odd(x):
        return np.abs(f(x) - f(-x)) / x

    near = integrate_to_endpoint(odd, 0.0, 1.0, CONV_TOL)
    far = integrate_improper(odd, 1.0, math.inf, CONV_TOL)
    both = PVResult(near.value + far.value, near.abs_error_estimate + far.abs_error_estimate,
                    near.evaluations + far.evaluations, near.converged and far.converged,
                    "; ".join(h for h in (near.divergence_hint, far.divergence_hint) if h),
                    near.history + far.history)

    def rp_reflected(x):
        return -rp(-np.asarray(x, dtype=float))

    cond = [convergence("int_0^inf |R(x) - R(-x)|/x dx", both),
            _abs_over_t(lambda x: rp(x) - rp(-x), b, "sin", WINDOW_REL_TOL,
                        "int_1^inf |g(t)|/t dt, g = int_0^b (R'(x) - R'(-x)) sin(xt)"),
            _abs_over_t(lambda x: rp(x) + rp(-x), b, "cos", WINDOW_REL_TOL,
                        "int_1^inf |h(t)|/t dt, h = int_0^b (R'(x) + R'(-x)) cos(xt)"),
            _variation_integral(rp, b, tol, "int_b^inf V_x^inf R' dx"),
            _variation_integral(rp_reflected, b, tol, "int_{-inf}^{-b} V_{-inf}^x R' dx")]
    return _verdict(name, hyp, cond)
