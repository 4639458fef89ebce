"""Sampled hypothesis checks shared by the checkers.

Analytic hypotheses (monotonicity, convexity, decay) can only be sampled;
each helper returns an :class:`Evidence` record so the verdict shows what
was looked at.
"""
from __future__ import annotations

import math

import numpy as np

from .. import expr as ex
from ..errors import DomainError
from ..quad import PVResult
from .verdict import Evidence

EPS = np.finfo(float).eps
REL_STEP = 1e-4
EXCLUSION = 1e-3
NOISE = 64.0


def as_expression(e):
    return ex.parse(e) if isinstance(e, str) else e


def values(f, x):
    """f at the points x with nan wherever f is undefined."""
    x = np.asarray(x, dtype=float)
    if isinstance(f, ex.Expression):
        return ex.evaluate_array(f.ast, x)[0]
    with np.errstate(all="ignore"):
        try:
            return np.asarray(f(x), dtype=float)
        except (ArithmeticError, ValueError):
            return np.array([_scalar(f, v) for v in x.ravel()]).reshape(x.shape)


def _scalar(f, v):
    try:
        return float(f(np.array([v]))[0])
    except (ArithmeticError, ValueError):
        return math.nan


def patched(f):
    """Vectorised f that bridges isolated undefined points by continuity.

    A node landing exactly on a removable gap (say x = 0 in 1/abs(x)
    terms) is replaced by the mean of the values a relative 1e-9 away;
    if that fails too the DomainError is raised.
    """
    def g(x):
        x = np.asarray(x, dtype=float)
        v = values(f, x)
        bad = ~np.isfinite(v)
        if np.any(bad):
            d = 1e-9 * np.maximum(1.0, np.abs(x[bad]))
            fix = 0.5 * (values(f, x[bad] - d) + values(f, x[bad] + d))
            if not np.all(np.isfinite(fix)):
                i = int(np.flatnonzero(~np.isfinite(fix))[0])
                raise DomainError(f"function undefined near x={float(x[bad][i])!r}")
            v = v.copy()
            v[bad] = fix
        return v
    return g


def defined_on(f, x, label):
    v = values(f, x)
    bad = int(np.count_nonzero(~np.isfinite(v)))
    return Evidence(f"{label}: undefined sample points", bad, 0, bad == 0)


def decreasing(f, x, label="decreasing on the sample grid"):
    """Non-increasing along the sorted points x, up to rounding."""
    x = np.sort(np.asarray(x, dtype=float))
    v = values(f, x)
    if not np.all(np.isfinite(v)):
        return Evidence(label, "undefined points", 0.0, False)
    rise = np.diff(v) - 4 * EPS * (np.abs(v[1:]) + np.abs(v[:-1]))
    worst = float(max(rise.max(), 0.0))
    return Evidence(label + " (largest rise)", worst, 0.0, worst <= 0.0)


def second_differences(f, x):
    """(D2, noise) with the relative step REL_STEP of the local scale."""
    x = np.asarray(x, dtype=float)
    h = REL_STEP * np.maximum(np.abs(x), EXCLUSION)
    lo, mid, hi = values(f, x - h), values(f, x), values(f, x + h)
    d2 = lo - 2.0 * mid + hi
    noise = NOISE * EPS * (np.abs(lo) + 2.0 * np.abs(mid) + np.abs(hi))
    return d2, noise


def convexity(f, x, sign, label):
    """Evidence that sign * f'' >= 0 at the sample points (sign = +1 convex)."""
    d2, noise = second_differences(f, x)
    if not np.all(np.isfinite(d2)):
        return Evidence(label, "undefined points", 0.0, False)
    bad = int(np.count_nonzero(sign * d2 < -noise))
    return Evidence(label + " (violations)", bad, 0, bad == 0)


def infer_sign(f, x):
    d2, noise = second_differences(f, x)
    if not np.all(np.isfinite(d2)):
        return 0
    if np.all(d2 >= -noise):
        return 1
    if np.all(d2 <= noise):
        return -1
    return 0


def piece_samples(a, b, n=32):
    """Interior sample points of a piece, EXCLUSION away from finite ends."""
    if math.isfinite(a) and math.isfinite(b):
        lo, hi = a + EXCLUSION, b - EXCLUSION
        if not lo < hi:
            return np.array([0.5 * (a + b)])
        return np.linspace(lo, hi, n)
    off = np.logspace(math.log10(EXCLUSION), 6.0, n)
    if math.isfinite(a):
        return a + off
    if math.isfinite(b):
        return (b - off)[::-1]
    return np.concatenate([-off[::-1], off])


def tends_to_zero(f, direction=1, label=None):
    """|f| on the ladder direction * 10^k, k = 0..300: eventually
    non-increasing and ending at most half its maximum."""
    label = label or f"tends to 0 at {'+' if direction > 0 else '-'}inf"
    x = direction * 10.0 ** np.arange(0, 301, 2)
    v = np.abs(values(f, x))
    if not np.all(np.isfinite(v)):
        return Evidence(label, "undefined far samples", 0.5, False)
    top = float(v.max())
    tail = v[len(v) // 2:]
    mono = bool(np.all(tail[1:] <= tail[:-1] * (1 + 1e-9) + 1e-300))
    ratio = float(v[-1] / top) if top > 0 else 0.0
    return Evidence(label + " (|f(far)| / max|f|)", ratio, 0.5, mono and ratio <= 0.5)


def convergence(label, r: PVResult):
    """Evidence record for an integral's convergence verdict."""
    val = r.value if r.converged else (r.divergence_hint or "not converged")
    return Evidence(label, val, None, bool(r.converged), tuple(r.history))
