"""Quadrature engine.

* :func:`integrate_adaptive` - globally adaptive Gauss-Kronrod (21/10) on a
  finite interval, batched so one integrand call covers many panels.
* :func:`integrate_improper` - window doubling towards infinity with
  Richardson stabilisation of the partial results.
* :func:`integrate_oscillatory` - half-period slicing of
  ``amplitude(x) * {sin, cos, exp}(omega x)`` into an alternating series,
  accelerated with the Wynn epsilon algorithm.
* :func:`pv_point` / :func:`pv_double_limit` - principal values at a finite
  point (symmetric pairing around the singularity) and at infinity
  (symmetric windows with a smooth taper).
* :func:`residue_oracle` - closed form of ``int e^{iu} / (u - w)^{k+1} du``.

Integrands are vectorised callables: they take a 1-d float array and return
an array of the same length (real or complex), or of shape ``(n, m)`` for
vector-valued integrands used internally.

Every limit is judged by the same rule: the sequence of partial results is
Richardson-extrapolated; two consecutive extrapolated differences below
``tol`` mean convergence, while four consecutive refinements that each fail
to shrink the difference by ``DECAY_FACTOR`` mean divergence.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betainc

from . import kernels
from .errors import Cancelled

DEFAULT_TOL = 1e-8
DEFAULT_PV_TOL = 1e-6
DEFAULT_BUDGET = 1_000_000
N0 = 16
DECAY_FACTOR = 1.25
CONFIRMATIONS = 4
RICHARDSON_ORDER = 4
MAX_DOUBLINGS = 48
TAPER_ORDER = 6


@dataclass(frozen=True)
class PVResult:
    """Value of an improper or principal-value integral plus diagnostics.

    ``history`` holds the raw partial results (window values) behind the
    verdict so borderline cases can be audited.
    """

    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool
    divergence_hint: str = ""
    history: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.converged and not self.divergence_hint:
            raise ValueError("a non-converged result needs a divergence hint")
        if not self.abs_error_estimate >= 0 and not math.isnan(self.abs_error_estimate):
            raise ValueError("error estimate must be non-negative")

    def as_dict(self):
        return {
            "re": float(np.real(self.value)),
            "im": float(np.imag(self.value)),
            "abs_error_estimate": float(self.abs_error_estimate),
            "evaluations": int(self.evaluations),
            "converged": bool(self.converged),
            "divergence_hint": self.divergence_hint,
        }


class CancelToken:
    """Cooperative cancellation flag checked inside long limit loops."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self):
        return self._event.is_set()

    def check(self):
        if self._event.is_set():
            raise Cancelled("evaluation cancelled")


_default_budget = contextvars.ContextVar("default_budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def default_budget(limit):
    """Within the block, integrals without an explicit budget get ``limit``
    evaluations each."""
    if not int(limit) > 0:
        raise ValueError("budget must be positive")
    token = _default_budget.set(int(limit))
    try:
        yield
    finally:
        _default_budget.reset(token)


class _BudgetExhausted(Exception):
    pass


class Budget:
    """Counts integrand evaluations against a hard limit."""

    def __init__(self, limit=None, cancel=None):
        self.limit = int(_default_budget.get() if limit is None else limit)
        self.spent = 0
        self.cancel = cancel

    def charge(self, n):
        if self.cancel is not None:
            self.cancel.check()
        if self.spent + n > self.limit:
            raise _BudgetExhausted
        self.spent += n


def _sample(f, x, budget):
    budget.charge(x.size)
    y = np.asarray(f(x), dtype=complex)
    if y.shape == ():
        y = np.full(x.shape, complex(y))
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[0] != x.size:
        raise ValueError("integrand returned an array of the wrong length")
    return y


def _unwrap(v):
    """Scalar complex from a length-1 component array."""
    return complex(v[0]) if np.ndim(v) and len(v) == 1 else v


# ---------------------------------------------------------------------------
# Finite intervals
# ---------------------------------------------------------------------------

def _gk_panels(f, lo, hi, budget):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * kernels.GK_NODES[None, :]).ravel()
    y = _sample(f, x, budget)
    fx = y.reshape(lo.size, kernels.GK_NODES.size, y.shape[1])
    return kernels.gk21_reduce(np.ascontiguousarray(fx), half)


def _adaptive(f, a, b, tol, budget, points=None, max_iter=400):
    """Core adaptive loop.  Returns (value[m], err, converged, hint)."""
    cuts = [a]
    if points is not None:
        cuts += sorted(p for p in points if a < p < b)
    cuts.append(b)
    lo = np.array(cuts[:-1], dtype=float)
    hi = np.array(cuts[1:], dtype=float)
    val, err = _gk_panels(f, lo, hi, budget)
    for _ in range(max_iter):
        total = val.sum(axis=0)
        total_err = float(err.sum())
        if not np.isfinite(total_err) or not np.all(np.isfinite(total)):
            return total, math.inf, False, "integrand produced non-finite values"
        floor = 200.0 * np.finfo(float).eps * float(np.abs(val).sum(axis=0).max())
        if total_err <= max(tol, floor):
            return total, total_err, True, ""
        order = np.argsort(-err, kind="stable")
        need = total_err - 0.5 * tol
        cum = np.cumsum(err[order])
        nsel = int(np.searchsorted(cum, need)) + 1
        sel = order[:nsel]
        width = hi[sel] - lo[sel]
        scale = np.maximum(np.abs(lo[sel]), np.abs(hi[sel]))
        splittable = width > 1e3 * np.finfo(float).eps * np.maximum(scale, 1e-300)
        sel = np.sort(sel[splittable])
        if sel.size == 0:
            return total, total_err, False, "roundoff limits the attainable accuracy"
        mid = 0.5 * (lo[sel] + hi[sel])
        new_lo = np.concatenate([lo[sel], mid])
        new_hi = np.concatenate([mid, hi[sel]])
        try:
            nv, ne = _gk_panels(f, new_lo, new_hi, budget)
        except _BudgetExhausted:
            return total, total_err, False, "evaluation budget exhausted"
        keep = np.ones(lo.size, dtype=bool)
        keep[sel] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        order = np.argsort(lo, kind="stable")
        lo, hi, val, err = lo[order], hi[order], val[order], err[order]
    return val.sum(axis=0), float(err.sum()), False, "panel refinement limit reached"


def integrate_adaptive(f, a, b, tol=DEFAULT_TOL, *, budget=None,
                       points=None, cancel=None) -> PVResult:
    """Integral of ``f`` over the finite interval [a, b].

    ``points`` are interior abscissae (kinks, integrable singularities) used
    as initial panel boundaries.  Non-convergence within the budget is
    reported through ``converged=False``.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate_adaptive needs finite limits")
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    if a == b:
        return PVResult(0j, 0.0, 0, True)
    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    try:
        v, e, ok, hint = _adaptive(f, a, b, tol, bud, points)
    except _BudgetExhausted:
        return PVResult(complex("nan"), math.inf, bud.spent - start, False,
                        "evaluation budget exhausted")
    return PVResult(sign * _unwrap(v), e, bud.spent - start, ok, hint)


# ---------------------------------------------------------------------------
# Limit sequences
# ---------------------------------------------------------------------------

@dataclass
class _LimitState:
    values: list = field(default_factory=list)
    extrapolated: np.ndarray = None
    converged: bool = False
    diverged: bool = False
    error: float = math.inf


def _judge(values, tol, decay=DECAY_FACTOR, confirmations=CONFIRMATIONS,
           order=RICHARDSON_ORDER):
    """Apply the convergence/divergence rule to a list of partial results."""
    st = _LimitState(values=list(values))
    v = np.asarray(values, dtype=complex)
    ext = kernels.richardson(v, order) if v.size else v
    st.extrapolated = ext
    if v.size < 3:
        return st
    d = np.abs(np.diff(ext))
    if d[-1] <= tol and d[-2] <= tol:
        st.converged = True
        st.error = float(max(d[-1], d[-2]))
        return st
    # Secondary route for geometric but non-dyadic rates such as N^-1/2:
    # Wynn epsilon on the raw partial results, accepted only while the raw
    # differences keep shrinking by the decay factor.
    raw = np.abs(np.diff(v))
    if v.size >= 6 and np.all(raw[-3:] * decay <= raw[-4:-1]):
        est = [kernels.wynn_epsilon(v[:m])[0] for m in (v.size - 2, v.size - 1, v.size)]
        g1, g2 = abs(est[2] - est[1]), abs(est[1] - est[0])
        if g1 <= tol and g2 <= tol:
            ext = ext.copy()
            ext[-1] = est[2]
            st.extrapolated = ext
            st.converged = True
            st.error = float(max(g1, g2))
            return st
    streak = 0
    for j in range(1, d.size):
        if d[j] > tol and d[j - 1] > tol and d[j] * decay > d[j - 1]:
            streak += 1
        else:
            streak = 0
    st.diverged = streak >= confirmations
    st.error = float(d[-1])
    return st


def limit_of(step, tol, *, max_steps=MAX_DOUBLINGS, min_steps=3, label="limit"):
    """Drive ``step(j) -> (value, err)`` until the limit rule decides.

    Returns (value, error, converged, hint, history).  ``step`` may raise
    the internal budget exception, which is turned into a hint.
    """
    values = []
    extra_err = 0.0
    st = _LimitState()
    hint = ""
    for j in range(max_steps):
        try:
            v, e = step(j)
        except _BudgetExhausted:
            hint = f"{label}: evaluation budget exhausted after {j} refinements"
            break
        if not np.isfinite(v):
            hint = f"{label}: non-finite partial result at refinement {j}"
            break
        values.append(complex(v))
        extra_err = max(extra_err, float(e))
        if len(values) < min_steps:
            continue
        st = _judge(values, tol)
        if st.converged:
            return (complex(st.extrapolated[-1]), st.error + extra_err, True, "",
                    tuple(values))
        if st.diverged:
            hint = (f"{label}: successive differences failed to shrink by a factor "
                    f"{DECAY_FACTOR} over {CONFIRMATIONS} consecutive refinements")
            break
    else:
        hint = f"{label}: no stabilisation within {max_steps} refinements"
    if not values:
        return complex("nan"), math.inf, False, hint, ()
    st = _judge(values, tol)
    last = complex(st.extrapolated[-1]) if st.extrapolated is not None and len(values) else values[-1]
    return last, max(st.error, extra_err), False, hint, tuple(values)


# ---------------------------------------------------------------------------
# Improper integrals
# ---------------------------------------------------------------------------

def _half_line(f, a, tol, bud, label):
    """int_a^inf f by window doubling.  Returns value/err/ok/hint/history."""
    sub_tol = tol / 32.0
    acc = [0j]

    def step(j):
        lo = a if j == 0 else a + N0 * 2.0 ** (j - 1)
        hi = a + N0 * 2.0 ** j
        v, e, ok, hint = _adaptive(f, lo, hi, sub_tol, bud)
        if not ok and hint != "roundoff limits the attainable accuracy":
            raise _BudgetExhausted if "budget" in hint else _StepFailed(hint)
        acc[0] += complex(v[0])
        return acc[0], e

    try:
        return limit_of(step, tol, label=label)
    except _StepFailed as exc:
        return complex("nan"), math.inf, False, f"{label}: {exc}", ()


class _StepFailed(Exception):
    pass


def integrate_to_endpoint(f, a, b, tol=DEFAULT_TOL, *, budget=None,
                          cancel=None) -> PVResult:
    """int_a^b f for an integrand that may be singular at the lower end a.

    The excised neighbourhood shrinks dyadically, eps_j = (b - a) 2^-j, and
    the partial integrals are judged with the limit rule, so a divergent
    endpoint singularity is reported rather than summed.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("integrate_to_endpoint needs a < b")
    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    h = b - a
    acc = [0j]

    def step(j):
        hi = a + h * 2.0 ** (-j)
        lo = a + h * 2.0 ** (-j - 1)
        v, e, ok, hint = _adaptive(f, lo, hi, tol / 32.0, bud)
        if not ok and "roundoff" not in hint:
            raise _BudgetExhausted if "budget" in hint else _StepFailed(hint)
        acc[0] += complex(v[0])
        return acc[0], e

    try:
        v, e, ok, hint, hist = limit_of(step, tol, max_steps=60,
                                        label="endpoint limit (eps -> 0)")
    except _StepFailed as exc:
        v, e, ok, hint, hist = (complex("nan"), math.inf, False,
                                f"endpoint limit (eps -> 0): {exc}", ())
    return PVResult(v, e, bud.spent - start, ok, hint, hist)


def integrate_improper(f, a=0.0, b=math.inf, tol=DEFAULT_TOL, *,
                       budget=None, cancel=None) -> PVResult:
    """Integral over an interval whose ends may be infinite.

    Each infinite end is handled by doubling windows ``N0 * 2**j`` and
    judging the sequence of partial integrals with the limit rule; a
    divergent integral comes back with ``converged=False``.
    """
    a, b = float(a), float(b)
    if a > b:
        r = integrate_improper(f, b, a, tol, budget=budget, cancel=cancel)
        return PVResult(-r.value, r.abs_error_estimate, r.evaluations, r.converged,
                        r.divergence_hint, r.history)
    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    if math.isfinite(a) and math.isfinite(b):
        return integrate_adaptive(f, a, b, tol, budget=bud)
    if math.isfinite(a):
        v, e, ok, hint, hist = _half_line(f, a, tol, bud, "upper window limit")
        return PVResult(v, e, bud.spent - start, ok, hint, hist)
    if math.isfinite(b):
        def g(x):
            return f(-x)
        v, e, ok, hint, hist = _half_line(g, -b, tol, bud, "lower window limit")
        return PVResult(v, e, bud.spent - start, ok, hint, hist)
    left = integrate_improper(f, -math.inf, 0.0, tol / 2, budget=bud)
    right = integrate_improper(f, 0.0, math.inf, tol / 2, budget=bud)
    hint = "; ".join(h for h in (left.divergence_hint, right.divergence_hint) if h)
    return PVResult(left.value + right.value,
                    left.abs_error_estimate + right.abs_error_estimate,
                    bud.spent - start, left.converged and right.converged, hint,
                    left.history + right.history)


# ---------------------------------------------------------------------------
# Oscillatory integrals
# ---------------------------------------------------------------------------

_KINDS = ("sin", "cos", "exp")


def _kernel(kind, omega):
    if kind == "sin":
        return lambda x: np.sin(omega * x)
    if kind == "cos":
        return lambda x: np.cos(omega * x)
    return lambda x: np.exp(-1j * omega * x)


def amplitude_decays(amplitude, start, scale):
    """Probe |amplitude| on a geometric ladder far beyond ``start``.

    True when the magnitude is eventually non-increasing and ends clearly
    below its maximum over the ladder.
    """
    try:
        with np.errstate(all="ignore"):
            x = start + scale * 2.0 ** np.arange(0, 61)
            y = np.abs(np.asarray(amplitude(x), dtype=complex))
    except (ArithmeticError, ValueError):
        return False
    if not np.all(np.isfinite(y)):
        return False
    top = y.max()
    if top == 0.0:
        return True
    tail = y[-20:]
    monotone = np.all(tail[1:] <= tail[:-1] * (1 + 1e-9) + 1e-300)
    return bool(monotone and tail[-1] <= 0.5 * top)


def _geometric_cuts(a, b):
    """a + 2^k for k >= -3 inside (a, b): resolves O(1) features near a when
    the first half-period is very long."""
    cuts = []
    k = -3
    while a + 2.0 ** k < b and k < 1100:
        if a + 2.0 ** k > a:
            cuts.append(a + 2.0 ** k)
        k += 1
    return cuts


def integrate_oscillatory(amplitude, omega, kind="sin", a=0.0, tol=DEFAULT_TOL, *,
                          b=None, budget=None, cancel=None) -> PVResult:
    """int_a^inf amplitude(x) * K(omega x) dx with K in {sin, cos, exp(-i .)}.

    The half line is cut at the kernel's zeros ``k*pi/omega`` (sine and the
    complex exponential) or ``(k+1/2)*pi/omega`` (cosine).  Consecutive
    slice integrals then alternate in sign when the amplitude is eventually
    monotone; the series is summed with Wynn acceleration and stopped once
    the accelerated value is stable and the slice terms are decreasing.
    With a finite ``b`` the same slices are simply summed.
    """
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}")
    omega = float(omega)
    if omega == 0.0 or not math.isfinite(omega):
        raise ValueError("omega must be finite and non-zero")
    sign = 1.0
    if kind == "sin" and omega < 0:
        omega, sign = -omega, -1.0
    elif kind == "cos" and omega < 0:
        omega = -omega
    kern = _kernel(kind, omega)

    def integrand(x):
        return np.asarray(amplitude(x)) * kern(x)

    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    period = math.pi / abs(omega)
    a = float(a)
    if not period < 1e300:
        # subnormal omega: the kernel does not oscillate on representable x
        r = integrate_improper(integrand, a, math.inf if b is None else float(b), tol,
                               budget=bud)
        return PVResult(sign * r.value, r.abs_error_estimate, bud.spent - start,
                        r.converged, r.divergence_hint, r.history)
    phase0 = 0.5 * period if kind == "cos" else 0.0
    k0 = math.ceil((a - phase0) / period)
    first = phase0 + k0 * period
    if first <= a:
        k0 += 1
        first = phase0 + k0 * period

    def done(v, e, ok, hint, hist=()):
        return PVResult(sign * v, e, bud.spent - start, ok, hint, hist)

    try:
        if b is not None:
            b = float(b)
            if b <= first:
                r = integrate_adaptive(integrand, a, b, tol, budget=bud,
                                       points=_geometric_cuts(a, b))
                return done(r.value, r.abs_error_estimate, r.converged, r.divergence_hint)
            n_full = int((b - first) // period)
            cuts = _geometric_cuts(a, first) + [first + i * period for i in range(n_full + 1)]
            v, e, ok, hint = _adaptive(integrand, a, b, tol, bud, points=cuts)
            return done(_unwrap(v), e, ok, hint)

        head, head_err, ok, hint = _adaptive(integrand, a, first, tol / 4, bud,
                                             points=_geometric_cuts(a, first))
        if not ok and "roundoff" not in hint:
            return done(complex(head[0]), head_err, False, "leading segment: " + hint)
        head = complex(head[0])
        if not amplitude_decays(amplitude, first, max(period, 1.0)):
            return done(complex("nan"), math.inf, False,
                        "amplitude does not decay; the alternating series has no limit")

        slice_tol = tol * 1e-3
        terms = []
        term_err = 0.0
        estimates = []
        block = 16
        k = 0
        max_slices = 200_000
        while k < max_slices:
            lo = first + period * np.arange(k, k + block)
            hi = lo + period
            val, err = _gk_panels(integrand, lo, hi, bud)
            val = val[:, 0]
            for i in np.flatnonzero(err > slice_tol):
                v, e, ok_i, hint_i = _adaptive(integrand, lo[i], hi[i], slice_tol, bud)
                if not ok_i and "roundoff" not in hint_i:
                    return done(head + sum(terms), math.inf, False, "slice: " + hint_i)
                val[i] = v[0]
                err[i] = e
            terms.extend(complex(t) for t in val)
            term_err += float(err.sum())
            k += block
            sums = head + np.cumsum(np.asarray(terms))
            mags = np.abs(np.asarray(terms[-8:]))
            scale = max(np.abs(np.asarray(terms)).max(), 1e-300)
            decreasing = bool(np.all(mags[1:] <= mags[:-1] * (1 + 1e-8) + 1e-15 * scale))
            if mags.max() <= tol * 1e-3:
                return done(complex(sums[-1]), term_err + float(mags.max()), True, "",
                            tuple(estimates))
            est, _ = kernels.wynn_epsilon(np.ascontiguousarray(sums[-40:]))
            estimates.append(complex(est))
            if len(estimates) >= 2 and decreasing:
                gap = abs(estimates[-1] - estimates[-2])
                if gap <= 0.5 * tol:
                    return done(complex(est), gap + term_err, True, "", tuple(estimates))
            block = min(2 * block, 4096)
        return done(complex(estimates[-1]), math.inf, False,
                    "accelerated partial sums did not stabilise", tuple(estimates))
    except _BudgetExhausted:
        return done(complex("nan"), math.inf, False, "evaluation budget exhausted")


# ---------------------------------------------------------------------------
# Principal values
# ---------------------------------------------------------------------------

def _pv_near(f, x0, h, tol, bud):
    """lim_{eps->0} int_{eps<|x-x0|<h} f via paired panels p(s) = f(x0+s)+f(x0-s)."""

    def paired(s):
        return np.asarray(f(x0 + s)) + np.asarray(f(x0 - s))

    acc = [0j]
    sub_tol = tol / 32.0

    def step(j):
        hi = h * 2.0 ** (-j)
        lo = hi / 2.0
        v, e, ok, hint = _adaptive(paired, lo, hi, sub_tol, bud)
        if not ok and "roundoff" not in hint:
            raise _StepFailed(hint)
        acc[0] += complex(v[0])
        return acc[0], e

    try:
        return limit_of(step, tol, max_steps=60, label="inner limit (eps -> 0)")
    except _StepFailed as exc:
        return complex("nan"), math.inf, False, f"inner limit (eps -> 0): {exc}", ()


def pv_point(f, x0, a, b, tol=DEFAULT_TOL, *, budget=None,
             cancel=None) -> PVResult:
    """Cauchy principal value of int_a^b f with a singularity at x0.

    The excised neighbourhood is symmetric; on it the integrand is folded
    into ``f(x0+s) + f(x0-s)`` so an odd singular part cancels exactly,
    and the limit eps -> 0 is taken over eps_j = h 2^-j.  A singularity
    that does not cancel (e.g. 1/(x-x0)^2) is reported as non-convergent.
    """
    a, b, x0 = float(a), float(b), float(x0)
    if not a < x0 < b:
        raise ValueError("pv_point needs a < x0 < b")
    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    h = min(1.0, x0 - a, b - x0)
    near, near_err, ok, hint, hist = _pv_near(f, x0, h, tol / 2, bud)
    total = near
    err = near_err
    try:
        for lo, hi in ((a, x0 - h), (x0 + h, b)):
            if hi > lo:
                v, e, ok_i, hint_i = _adaptive(f, lo, hi, tol / 4, bud)
                total += complex(v[0])
                err += e
                if not ok_i and "roundoff" not in hint_i:
                    ok = False
                    hint = hint or f"outer segment [{lo}, {hi}]: {hint_i}"
    except _BudgetExhausted:
        ok = False
        hint = hint or "evaluation budget exhausted"
    return PVResult(total, err, bud.spent - start, ok, hint, hist)


def _taper(s):
    """Smooth step 1 -> 0 on [0, 1] with TAPER_ORDER-1 vanishing derivatives."""
    s = np.clip(s, 0.0, 1.0)
    return 1.0 - betainc(TAPER_ORDER, TAPER_ORDER, s)


def pv_double_limit(f, x0=None, tol=DEFAULT_PV_TOL, *, n0=N0,
                    budget=None, cancel=None) -> PVResult:
    """Symmetric double limit of int_{-N}^{x0-eps} + int_{x0+eps}^{N} f.

    With ``x0=None`` only the symmetric limit at infinity is taken.  The
    tails are folded into g(u) = f(u) + f(-u) on [N0, inf).  Instead of a
    sharp cut at N the partial integral is faded out over [N, 2N] with a
    smooth taper; this is a weighted average of symmetric truncations with
    cut-offs in [N, 2N], so it has the same limit, and oscillatory tails of
    size O(1/N) are damped to O(N^-TAPER_ORDER).
    """
    bud = budget if isinstance(budget, Budget) else Budget(budget, cancel)
    start = bud.spent
    n = float(n0)
    if x0 is not None:
        x0 = float(x0)
        while n < abs(x0) + 2.0:
            n *= 2.0
        core = pv_point(f, x0, -n, n, tol / 4, budget=bud)
        c_val, c_err, c_ok, c_hint = (core.value, core.abs_error_estimate,
                                      core.converged, core.divergence_hint)
    else:
        try:
            v, c_err, c_ok, c_hint = _adaptive(f, -n, n, tol / 4, bud, points=[0.0])
            c_val = complex(v[0])
        except _BudgetExhausted:
            return PVResult(complex("nan"), math.inf, bud.spent - start, False,
                            "core segment: evaluation budget exhausted")
        if not c_ok and "roundoff" in c_hint:
            c_ok, c_hint = True, ""
    if not c_ok:
        return PVResult(c_val, c_err, bud.spent - start, False, c_hint)

    def pair(u):
        return np.asarray(f(u)) + np.asarray(f(-u))

    plain = [0j]

    def step(j):
        lo = n * 2.0 ** j
        hi = 2.0 * lo

        def both(u):
            g = pair(u)
            return np.stack([g, g * _taper((u - lo) / lo)], axis=-1)

        v, e, ok, hint = _adaptive(both, lo, hi, tol / 32.0, bud)
        if not ok and "roundoff" not in hint:
            raise _BudgetExhausted if "budget" in hint else _StepFailed(hint)
        value = plain[0] + complex(v[1])
        plain[0] += complex(v[0])
        return value, e

    try:
        t_val, t_err, t_ok, t_hint, hist = limit_of(
            step, tol / 2, label="outer limit (N -> inf)")
    except _StepFailed as exc:
        t_val, t_err, t_ok, t_hint, hist = (complex("nan"), math.inf, False,
                                            f"outer limit (N -> inf): {exc}", ())
    return PVResult(c_val + t_val, c_err + t_err, bud.spent - start, t_ok, t_hint, hist)


def residue_oracle(t, z, k):
    """Closed form of int_{-inf}^{inf} e^{iu} / (u - t z)^{k+1} du.

    The pole w = t z contributes 2 pi i e^{iw} i^k / k! when Im w > 0 and
    nothing when Im w < 0.  For t = 0 (only with k = 0) the kernel
    degenerates and the symmetric principal value int dl / (l + z) =
    -i pi sign(Im z) is returned instead.
    """
    z = complex(z)
    t = float(t)
    k = int(k)
    if z.imag == 0.0:
        raise ValueError("residue_oracle needs Im z != 0")
    if k < 0:
        raise ValueError("k must be non-negative")
    if t == 0.0:
        if k != 0:
            raise ValueError("t = 0 is only defined for k = 0")
        return -1j * math.pi * math.copysign(1.0, z.imag)
    w = t * z
    if w.imag > 0:
        return 2j * math.pi * np.exp(1j * w) * (1j ** k) / math.factorial(k)
    return 0j
