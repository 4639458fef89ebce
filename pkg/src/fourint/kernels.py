"""Hot numerical kernels with a numba path and a pure-numpy fallback.

Every kernel exists twice: ``<name>_numba`` (compiled with ``@njit`` when
numba is available) and ``<name>_numpy``.  The unsuffixed public name is
bound to whichever backend :mod:`fourint._jit` selected at import time, so
callers never need to care.  Both variants must agree to rounding; the test
suite checks this and ``benchmarks/bench_kernels.py`` times them.
"""
import math

import numpy as np

from ._jit import BACKEND, njit

# 21-point Kronrod rule and its embedded 10-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208064614590,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# Ascending node layout: -x0 .. -x9, 0, x9 .. x0.
GK_NODES = np.concatenate([-_XGK[:10], [0.0], _XGK[9::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:10], [_WGK[10]], _WGK[9::-1]])
_g_half = np.zeros(10)
_g_half[1::2] = _WG
G_WEIGHTS = np.concatenate([_g_half, [0.0], _g_half[::-1]])

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny


# ---------------------------------------------------------------------------
# Gauss-Kronrod panel reduction
# ---------------------------------------------------------------------------

def gk21_reduce_numpy(fx, half):
    """Reduce sampled panels to Kronrod values and error estimates.

    fx has shape (P, 21, M): integrand samples at the GK nodes of P panels,
    M components each.  half holds the panel half-widths.  Returns
    (kronrod (P, M), error (P,)) with the QUADPACK-style error estimate
    taken as the maximum over components.
    """
    h = half[:, None]
    resk = np.einsum("n,pnm->pm", GK_WEIGHTS, fx)
    resg = np.einsum("n,pnm->pm", G_WEIGHTS, fx)
    resabs = np.einsum("n,pnm->pm", GK_WEIGHTS, np.abs(fx)) * np.abs(h)
    mean = resk * 0.5
    resasc = np.einsum("n,pnm->pm", GK_WEIGHTS,
                       np.abs(fx - mean[:, None, :])) * np.abs(h)
    resk = resk * h
    err = np.abs((resk - resg * h))
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _UFLOW / (50.0 * _EPS), np.maximum(err, floor), err)
    return resk, err.max(axis=1)


@njit(cache=True)
def gk21_reduce_numba(fx, half):
    npan, nn, m = fx.shape
    resk_out = np.zeros((npan, m), dtype=np.complex128)
    err_out = np.zeros(npan)
    for p in range(npan):
        h = half[p]
        worst = 0.0
        for c in range(m):
            rk = 0.0 + 0.0j
            rg = 0.0 + 0.0j
            ra = 0.0
            for n in range(nn):
                v = fx[p, n, c]
                rk += GK_WEIGHTS[n] * v
                rg += G_WEIGHTS[n] * v
                ra += GK_WEIGHTS[n] * abs(v)
            mean = rk * 0.5
            rasc = 0.0
            for n in range(nn):
                rasc += GK_WEIGHTS[n] * abs(fx[p, n, c] - mean)
            ah = abs(h)
            ra *= ah
            rasc *= ah
            rk = rk * h
            e = abs(rk - rg * h)
            if rasc != 0.0 and e != 0.0:
                e = rasc * min(1.0, (200.0 * e / rasc) ** 1.5)
            if ra > _UFLOW / (50.0 * _EPS):
                e = max(e, 50.0 * _EPS * ra)
            resk_out[p, c] = rk
            if e > worst or e != e:
                worst = e
        err_out[p] = worst
    return resk_out, err_out


# ---------------------------------------------------------------------------
# Wynn epsilon acceleration
# ---------------------------------------------------------------------------

def _wynn_body(s):
    n = s.shape[0]
    if n == 0:
        return 0.0 + 0.0j, np.inf
    if n < 3:
        err = abs(s[-1] - s[-2]) if n == 2 else np.inf
        return s[-1], err
    prev = np.zeros(n + 1, dtype=np.complex128)
    cur = s.astype(np.complex128).copy()
    best = cur[n - 1]
    best_err = abs(cur[n - 1] - cur[n - 2])
    last_even = best
    for k in range(1, n):
        m = cur.shape[0] - 1
        nxt = np.zeros(m, dtype=np.complex128)
        stalled = False
        for j in range(m):
            d = cur[j + 1] - cur[j]
            scale = max(abs(cur[j + 1]), abs(cur[j]))
            if abs(d) <= 4.0 * _EPS * scale or d == 0:
                stalled = True
                break
            nxt[j] = prev[j + 1] + 1.0 / d
        if stalled:
            if k % 2 == 1:
                # cur is an even column that has stopped moving
                best = cur[m]
                best_err = abs(cur[m] - cur[m - 1]) if m >= 1 else 0.0
            break
        prev = cur
        cur = nxt
        if k % 2 == 0 and m >= 1:
            est = cur[m - 1]
            err = abs(est - last_even)
            if m >= 2:
                err = max(err, abs(est - cur[m - 2]))
            if err <= best_err:
                best = est
                best_err = err
            last_even = est
        if m <= 1:
            break
    return best, best_err


def wynn_epsilon_numpy(s):
    """Wynn epsilon estimate of lim s_n.  Returns (estimate, error)."""
    return _wynn_body(np.asarray(s, dtype=np.complex128))


wynn_epsilon_numba = njit(cache=True)(_wynn_body)


# ---------------------------------------------------------------------------
# Richardson extrapolation for geometric (ratio 2) refinement
# ---------------------------------------------------------------------------

def richardson_numpy(values, max_order):
    """Diagonal of the ratio-2 Richardson table with error powers 1..max_order.

    values[j] is the j-th term of a sequence whose error behaves like
    c1*h_j + c2*h_j**2 + ... with h_j = h_0 / 2**j.
    """
    v = np.asarray(values, dtype=np.complex128)
    n = v.shape[0]
    out = np.empty(n, dtype=np.complex128)
    if n == 0:
        return out
    table = np.full((n, max_order + 1), np.nan + 0j)
    table[:, 0] = v
    for m in range(1, max_order + 1):
        fac = 2.0 ** m - 1.0
        table[m:, m] = table[m:, m - 1] + (table[m:, m - 1] - table[m - 1:-1, m - 1]) / fac
    for j in range(n):
        out[j] = table[j, min(j, max_order)]
    return out


@njit(cache=True)
def richardson_numba(values, max_order):
    n = values.shape[0]
    out = np.empty(n, dtype=np.complex128)
    table = np.zeros((n, max_order + 1), dtype=np.complex128)
    for j in range(n):
        table[j, 0] = values[j]
        top = min(j, max_order)
        for m in range(1, top + 1):
            fac = 2.0 ** m - 1.0
            table[j, m] = table[j, m - 1] + (table[j, m - 1] - table[j - 1, m - 1]) / fac
        out[j] = table[j, top]
    return out


# ---------------------------------------------------------------------------
# Trigonometric polynomials
# ---------------------------------------------------------------------------

def trig_poly_numpy(n, c, x):
    """sum_k c[k] * exp(i * n[k] * x) for every x."""
    x = np.asarray(x, dtype=float)
    if n.shape[0] == 0:
        return np.zeros(x.shape, dtype=np.complex128)
    phase = np.exp(1j * np.multiply.outer(x, n.astype(float)))
    return phase @ c


@njit(cache=True)
def trig_poly_numba(n, c, x):
    out = np.zeros(x.shape[0], dtype=np.complex128)
    for i in range(x.shape[0]):
        acc = 0.0 + 0.0j
        for k in range(n.shape[0]):
            ang = n[k] * x[i]
            acc += c[k] * complex(math.cos(ang), math.sin(ang))
        out[i] = acc
    return out


# ---------------------------------------------------------------------------
# Taylor remainder E_k(w) = sum_j w**j / (j + k)!
# ---------------------------------------------------------------------------

_SERIES_RADIUS = 2.0


def taylor_remainder_numpy(w, k):
    """E_k(w) = (e**w - sum_{m<k} w**m/m!) / w**k, stable near w = 0."""
    w = np.asarray(w, dtype=np.complex128)
    out = np.empty_like(w)
    small = np.abs(w) <= _SERIES_RADIUS
    ws = w[small]
    term = np.full(ws.shape, 1.0 / math.factorial(k), dtype=np.complex128)
    acc = term.copy()
    for j in range(1, 60):
        term = term * ws / (j + k)
        acc = acc + term
        if ws.size == 0 or np.max(np.abs(term)) <= 1e-18 * max(1.0, np.max(np.abs(acc))):
            break
    out[small] = acc
    wb = w[~small]
    poly = np.zeros(wb.shape, dtype=np.complex128)
    t = np.ones(wb.shape, dtype=np.complex128)
    for m in range(k):
        poly = poly + t
        t = t * wb / (m + 1)
    out[~small] = (np.exp(wb) - poly) / wb ** k
    return out


@njit(cache=True)
def taylor_remainder_numba(w, k):
    out = np.empty(w.shape[0], dtype=np.complex128)
    inv_kfact = 1.0
    for m in range(2, k + 1):
        inv_kfact /= m
    for i in range(w.shape[0]):
        wi = w[i]
        if abs(wi) <= _SERIES_RADIUS:
            term = complex(inv_kfact, 0.0)
            acc = term
            for j in range(1, 60):
                term = term * wi / (j + k)
                acc += term
                if abs(term) <= 1e-18 * max(1.0, abs(acc)):
                    break
            out[i] = acc
        else:
            poly = 0.0 + 0.0j
            t = 1.0 + 0.0j
            for m in range(k):
                poly += t
                t = t * wi / (m + 1)
            out[i] = (np.exp(wi) - poly) / wi ** k
    return out


# ---------------------------------------------------------------------------
# Public dispatch
# ---------------------------------------------------------------------------

if BACKEND == "numba":
    gk21_reduce = gk21_reduce_numba
    wynn_epsilon = wynn_epsilon_numba
    richardson = richardson_numba
    trig_poly = trig_poly_numba
    taylor_remainder = taylor_remainder_numba
else:
    gk21_reduce = gk21_reduce_numpy
    wynn_epsilon = wynn_epsilon_numpy
    richardson = richardson_numpy
    trig_poly = trig_poly_numpy
    taylor_remainder = taylor_remainder_numpy


def backend():
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return BACKEND
