"""Reference inputs: the measure corpus and the piecewise convex examples."""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from ..measure import density_measure, dirac
from .verdict import ConvexityPartition


def corpus_measures() -> dict:
    """Atoms at 0 and +-1 and four densities with exponential decay."""
    return {
        "delta0": dirac(0.0),
        "delta1": dirac(1.0),
        "delta-1": dirac(-1.0),
        "laplace": density_measure("exp(-abs(t))"),
        "exp-right": density_measure("exp(-t)", 0.0, math.inf),
        "exp-left": density_measure("exp(t)", -math.inf, 0.0),
        "gaussian": density_measure("exp(-t^2)"),
    }


def half_line_measures() -> dict:
    """Corpus members supported in [0, inf) (sign +1) or (-inf, 0] (sign -1),
    excluding the atom at the origin, whose transform is constant."""
    out = {}
    for name, mu in corpus_measures().items():
        if mu.support_within(0.0, math.inf) and not mu.support_within(0.0, 0.0):
            out[name] = (mu, 1)
        elif mu.support_within(-math.inf, 0.0) and not mu.support_within(0.0, 0.0):
            out[name] = (mu, -1)
    return out


# R = 1/sqrt(1 + ln^2|x|): with u = ln|x|, R'' has the sign of u^3 + 2u^2 + u - 1.
LOG_EXAMPLE = "1/sqrt(1+log(abs(x))^2)"
ITERATED_LOG_EXAMPLE = "1/lnk(2, exp(exp(1))+abs(x))"
# odd part sign(x) e^{-|x|} / ln(e + 1/|x|) makes int_0^1 |R(x) - R(-x)|/x diverge
NEGATIVE_EXAMPLE = "sign(x)*exp(-abs(x))/log(exp(1)+1/abs(x))"


def log_example_partition() -> ConvexityPartition:
    u = brentq(lambda u: u ** 3 + 2 * u ** 2 + u - 1, 0.0, 1.0, xtol=1e-15)
    x = math.exp(u)
    return ConvexityPartition((-x, 0.0, x), (1, -1, -1, 1))


def iterated_log_partition() -> ConvexityPartition:
    return ConvexityPartition((0.0,), (1, 1))


def _negative_inflection():
    def psi(s):
        return np.exp(-s) / np.log(np.e + 1.0 / s)

    def d2(s):
        h = 1e-4 * s
        return psi(s + h) - 2 * psi(s) + psi(s - h)
    return brentq(d2, 0.1, 5.0, xtol=1e-12)


def negative_partition() -> ConvexityPartition:
    s = _negative_inflection()
    return ConvexityPartition((-s, 0.0, s), (-1, 1, -1, 1))


AUTO_PARTITIONS = {
    "paper-example": log_example_partition,
    "log-example": log_example_partition,
    "iterated-log": iterated_log_partition,
    "negative-example": negative_partition,
}


def c0_examples() -> dict:
    """name -> (expression source, partition, expected status)."""
    return {
        "log-example": (LOG_EXAMPLE, log_example_partition(), "passed"),
        "iterated-log": (ITERATED_LOG_EXAMPLE, iterated_log_partition(), "passed"),
        "negative-example": (NEGATIVE_EXAMPLE, negative_partition(), "failed"),
    }
