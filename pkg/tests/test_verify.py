import math

import numpy as np
import pytest

import oracles
from fourint import expr as ex
from fourint import verify
from fourint.circle import CoeffSeq
from fourint.measure import density_measure, dirac
from fourint.verify.sampling import patched, tends_to_zero
from fourint.verify.verdict import compare, inconclusive


# ---------------------------------------------------------------------------
# Verdict plumbing
# ---------------------------------------------------------------------------

def test_verdict_validation():
    with pytest.raises(ValueError):
        verify.Verdict("x", True, True)
    with pytest.raises(ValueError):
        verify.Verdict("x", True, False, 1.0, 2.0, 0.5)
    v = compare("x", 1.0, 1.0 + 1e-9, 1e-6)
    assert v.passed and v.status == "passed" and v.exit_code == 0
    assert compare("x", 1.0, 2.0, 1e-6).exit_code == 3
    assert inconclusive("x", "why").exit_code == 4


def test_partition_validation():
    with pytest.raises(ValueError):
        verify.ConvexityPartition((1.0, 0.0), (1, 1, 1))
    with pytest.raises(ValueError):
        verify.ConvexityPartition((0.0,), (1, 2))
    with pytest.raises(ValueError):
        verify.ConvexityPartition((0.0,), (1,))
    p = verify.ConvexityPartition((0.0,), (1, -1))
    assert p.pieces == ((-math.inf, 0.0), (0.0, math.inf))
    assert p.piece_signs == (1, -1)


def test_sampling_helpers():
    e = ex.parse("sin(x)/x")
    g = patched(e)
    assert abs(g(np.array([0.0]))[0] - 1.0) < 1e-8
    assert tends_to_zero(ex.parse("1/(1+x^2)"), 1).ok
    assert not tends_to_zero(ex.parse("1"), 1).ok


# ---------------------------------------------------------------------------
# Sine/cosine positivity checks
# ---------------------------------------------------------------------------

def test_s1_exponential():
    v = verify.check_S1(ex.parse("exp(-x)"))
    assert v.passed, v.as_dict()
    assert abs(v.lhs.real - math.pi / 2) < 1e-5


def test_s2_exponential_value():
    v = verify.check_S2(ex.parse("exp(-x)"))
    assert v.passed and abs(v.rhs.real - oracles.SQRT_HALF_PI) < 1e-12
    assert abs(v.lhs - v.rhs) < 1e-6


@pytest.mark.parametrize("src", ["sin(x)", "exp(x)", "1"])
def test_s2_hypothesis_failures_are_inconclusive(src):
    assert verify.check_S2(ex.parse(src)).inconclusive


def test_s3_passes():
    assert verify.check_S3(ex.parse("exp(-x)")).passed


def test_3alpha():
    v = verify.check_3alpha(ex.parse("exp(-x)"))
    assert v.passed
    assert any(abs(e.value - oracles.PSI_INTEGRAL_CONST) < 1e-9
               for e in v.evidence if isinstance(e.value, complex))


# ---------------------------------------------------------------------------
# Membership checks
# ---------------------------------------------------------------------------

def test_d1_gaussian():
    assert verify.check_d1(ex.parse("exp(-x^2)")).passed


def test_d2_odd():
    assert verify.check_d2(ex.parse("x*exp(-abs(x))")).passed


def test_d1_rejects_odd_function():
    v = verify.check_d1(ex.parse("x*exp(-abs(x))"))
    assert not v.passed


def test_log_partition_matches_oracle():
    from fourint.verify.corpus import log_example_partition
    p = log_example_partition()
    assert abs(p.breakpoints[2] - math.exp(oracles.PEAK_U)) < 1e-14


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def test_carleman_delta0():
    v = verify.carleman_identity(dirac(0.0), 1j)
    assert v.passed and abs(v.lhs - 0.5) < 1e-6


def test_carleman_convergence_only():
    v = verify.carleman_identity(density_measure("exp(-abs(t))"), 1j, convergence_only=True)
    assert v.passed and v.name == "carleman-convergence"


def test_infinite_measure_is_inconclusive():
    assert verify.carleman_identity(density_measure("1"), 1j).inconclusive


def test_hilbert_identity_delta1():
    v = verify.hilbert_identity(dirac(1.0), 0.5)
    assert v.passed


def test_eigenrelation_needs_half_line():
    assert verify.hilbert_eigenrelation(density_measure("exp(-t^2)"), [0.0]).inconclusive
    assert verify.hilbert_eigenrelation(dirac(1.0), [0.0, 1.0]).passed


def test_povzner_k1():
    assert verify.povzner(density_measure("exp(-abs(t))"), 1, 1j).passed


def test_circle_checks():
    w = CoeffSeq.from_mapping({1: 1.0, -3: 2j})
    assert verify.circle_isometry(w).passed
    assert verify.circle_isometry(CoeffSeq.from_mapping({0: 1.0})).inconclusive
    assert verify.circle_pv(w, 1j).passed
    assert verify.circle_cauchy(w, 0.5).passed


@pytest.mark.parametrize("src,const", [("1/(1+t^2)", oracles.E1_CONST_LORENTZ),
                                       ("cos(t)/(1+t^2)", oracles.E1_CONST_COS)])
def test_involution_constant_matches_closed_form(src, const):
    v = verify.hilbert_involution_E1(ex.parse(src))
    assert v.passed
    assert abs(v.value - const) < 1e-6


def test_checker_is_order_independent():
    a = compare("x", 1.0, 1.0 + 5e-5, 1e-4)
    b = compare("x", 1.0 + 5e-5, 1.0, 1e-4)
    assert a.status == b.status and a.abs_gap == b.abs_gap
    mu = density_measure("exp(-abs(t))")
    first = verify.carleman_identity(mu, 1 + 2j)
    verify.hilbert_identity(mu, 0.7)
    assert verify.carleman_identity(mu, 1 + 2j).as_dict() == first.as_dict()
