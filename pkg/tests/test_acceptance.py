"""End-to-end acceptance criteria.  Each test prints exactly one PASS/FAIL line."""
import math
import time

import numpy as np
import pytest
from scipy import integrate as sint

import oracles
from fourint import expr as ex
from fourint import report, verify
from fourint.circle import CoeffSeq
from fourint.quad import integrate_oscillatory, pv_double_limit, residue_oracle
from fourint.measure import density_measure, dirac
from fourint.verify.identities import carleman_lhs
from fourint.transforms import SQRT_2PI

pytestmark = pytest.mark.acceptance

CARLEMAN_Z = (1j, -1j, 1 + 2j, -3 - 0.5j)
HILBERT_X = (-2.0, 0.0, 0.7, 5.0)
EIGEN_X = tuple(np.linspace(-3.0, 3.0, 10))
SEED = 20240601


def line(report_line, ok, label, detail):
    report_line(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


def test_carleman_representation(report_line):
    worst, rows = 0.0, 0
    for name, mu in verify.corpus_measures().items():
        for z in CARLEMAN_Z:
            v = verify.carleman_identity(mu, z, 1e-4)
            assert not v.inconclusive, (name, z, v.notes)
            worst = max(worst, v.abs_gap)
            rows += 1
    d0 = verify.carleman_identity(dirac(0.0), 1j, 1e-6)
    forced = abs(d0.lhs - 0.5)
    ok = worst <= 1e-4 and forced <= 1e-6
    line(report_line, ok, "1 carleman", f"{rows} cases, worst gap {worst:.2e}; delta0 at i "
                                         f"|lhs - 1/2| = {forced:.2e}")
    assert ok


def test_povzner_formula(report_line):
    start = time.perf_counter()
    worst, k0 = 0.0, 0.0
    for src in ("exp(-abs(t))", "exp(-t^2)"):
        mu = density_measure(src)
        for k in (0, 1, 2):
            for z in (1j, 2j, -1j):
                v = verify.povzner(mu, k, z, 1e-3)
                assert not v.inconclusive, (src, k, z, v.notes)
                worst = max(worst, v.abs_gap)
                if k == 0:
                    ref = 1j / SQRT_2PI * carleman_lhs(mu, z, 1e-7).value
                    k0 = max(k0, abs(v.lhs - ref))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-3 and k0 <= 1e-6 and elapsed <= 300
    line(report_line, ok, "2 povzner", f"18 cases, worst gap {worst:.2e}; k=0 vs carleman "
                                        f"{k0:.2e}; {elapsed:.1f} s")
    assert ok


def test_hilbert_identity(report_line):
    worst = 0.0
    for name, mu in verify.corpus_measures().items():
        for x in HILBERT_X:
            v = verify.hilbert_identity(mu, x, 1e-4)
            assert not v.inconclusive, (name, x, v.notes)
            worst = max(worst, v.abs_gap)
    d0 = max(abs(verify.hilbert_identity(dirac(0.0), x, 1e-8).lhs) for x in HILBERT_X)
    ok = worst <= 1e-4 and d0 <= 1e-8
    line(report_line, ok, "3 hilbert", f"worst gap {worst:.2e}; delta0 |lhs| {d0:.2e}")
    assert ok


def test_eigenrelations(report_line):
    worst = 0.0
    for name, (mu, _) in verify.half_line_measures().items():
        v = verify.hilbert_eigenrelation(mu, EIGEN_X, 1e-4)
        assert not v.inconclusive, (name, v.notes)
        worst = max(worst, v.abs_gap)
    ok = worst <= 1e-4
    line(report_line, ok, "4 eigenrelations", f"{len(verify.half_line_measures())} measures x "
                                               f"10 points, worst {worst:.2e}")
    assert ok


def test_circle_identities(report_line):
    pts = np.exp(2j * math.pi * (np.arange(12) + 0.25) / 12)
    worst_pv = 0.0
    for n in range(-16, 17):
        w = CoeffSeq.from_mapping({n: 1.0})
        for z in pts:
            v = verify.circle_pv(w, z, 1e-6)
            assert not v.inconclusive
            worst_pv = max(worst_pv, v.abs_gap)
    rng = np.random.default_rng(SEED)
    exact = 0
    for _ in range(100):
        idx = rng.choice([n for n in range(-20, 21) if n != 0], size=rng.integers(1, 9),
                         replace=False)
        c = rng.normal(size=idx.size) + 1j * rng.normal(size=idx.size)
        v = verify.circle_isometry(CoeffSeq.from_mapping(dict(zip(idx.tolist(), c))))
        exact += int(v.passed and v.abs_gap == 0.0)
    ok = worst_pv <= 1e-6 and exact == 100
    line(report_line, ok, "5 circle", f"33 monomials x 12 points worst {worst_pv:.2e}; "
                                       f"{exact}/100 exact isometry and H^2 = -I")
    assert ok


def test_positivity_and_exact_integrals(report_line):
    f = ex.parse("exp(-x)")
    s2 = verify.check_S2(f, 1e-10)
    s1 = verify.check_S1(f, 0, 1e-10)
    gap_fc = abs(s2.lhs - oracles.SQRT_HALF_PI)
    gap_g = abs(s1.lhs - math.pi / 2)
    violations = sum(int(e.value) for v in (s1, s2) for e in v.evidence
                     if "violations" in e.label and "> -tol" in e.label)
    ok = s1.passed and s2.passed and gap_fc <= 1e-6 and gap_g <= 1e-5 and violations == 0
    line(report_line, ok, "6 positivity", f"int F_c gap {gap_fc:.2e}; int g/t gap {gap_g:.2e}; "
                                           f"{violations} grid violations")
    assert ok


def test_membership_criterion(report_line):
    outcome, slowest = [], 0.0
    for name, (src, part, expected) in verify.c0_examples().items():
        start = time.perf_counter()
        v = verify.check_C0(ex.parse(src), part)
        slowest = max(slowest, time.perf_counter() - start)
        outcome.append((name, v.status, expected))
    ok = all(s == e for _, s, e in outcome) and slowest <= 120
    line(report_line, ok, "7 C0", ", ".join(f"{n} {s}" for n, s, _ in outcome)
         + f"; slowest {slowest:.1f} s")
    assert ok


def test_involution(report_line):
    v = verify.hilbert_involution_E1(ex.parse("1/(1+t^2)"), (-2.0, 0.0, 1.0, 3.0), 1e-3)
    spread = next(e.value for e in v.evidence if e.label.startswith("spread"))
    c = v.value
    ok = v.passed and spread <= 1e-3 and abs(c) <= 1e-3
    line(report_line, ok, "8 involution", f"spread {spread:.2e}; C = {c:.10f} "
                                           f"(|C| <= 1e-3 required)")
    assert spread <= 1e-3
    assert abs(c) <= 1e-3


def _amplitudes():
    fams = []
    for a in (0.5, 1.0, 2.0, 3.0, 5.0):
        fams.append((f"exp(-{a}x)", lambda x, a=a: np.exp(-a * x)))
    for p in (1.0, 1.5, 2.0, 3.0, 4.0):
        fams.append((f"(1+x)^-{p}", lambda x, p=p: (1 + x) ** -p))
    for c in (0.5, 1.0, 2.0, 4.0, 8.0):
        fams.append((f"1/({c}+x^2)", lambda x, c=c: 1 / (c + x * x)))
    for a in (0.5, 1.0, 1.5, 2.0, 3.0):
        fams.append((f"x exp(-{a}x)", lambda x, a=a: x * np.exp(-a * x)))
    return fams


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_quadrature_core(report_line):
    rng = np.random.default_rng(SEED)
    worst_res = 0.0
    for _ in range(10):
        t = float(rng.uniform(-3, 3))
        z = complex(rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.3, 2))
        k = int(rng.integers(0, 3))
        w = t * z
        r = pv_double_limit(lambda u: np.exp(1j * u) / (u - w) ** (k + 1))
        assert r.converged
        worst_res = max(worst_res, abs(r.value - residue_oracle(t, z, k)))
    worst_osc = 0.0
    for i, (label, amp) in enumerate(_amplitudes()):
        kind = "sin" if i % 2 == 0 else "cos"
        omega = float(rng.uniform(0.5, 6.0))
        r = integrate_oscillatory(amp, omega, kind, tol=1e-10)
        ref, _ = sint.quad(amp, 0, np.inf, weight=kind, wvar=omega, epsabs=1e-13, limlst=200)
        assert r.converged, label
        worst_osc = max(worst_osc, abs(r.value - ref))
    ok = worst_res <= 1e-5 and worst_osc <= 1e-6
    line(report_line, ok, "9 quadrature", f"residues worst {worst_res:.2e}; "
                                           f"20 oscillatory worst {worst_osc:.2e}")
    assert ok


def test_determinism(report_line):
    def runs():
        return [
            report.dumps(verify.carleman_identity(density_measure("exp(-t^2)"), 1 + 2j)),
            report.dumps(verify.hilbert_identity(dirac(1.0), 0.5)),
            report.dumps(verify.povzner(density_measure("exp(-abs(t))"), 1, 2j)),
            report.dumps(verify.check_C0(ex.parse(verify.corpus.LOG_EXAMPLE),
                                         verify.AUTO_PARTITIONS["log-example"]())),
            report.dumps(verify.check_S2(ex.parse("exp(-x)"))),
            report.dumps(verify.circle_pv(CoeffSeq.from_mapping({3: 1.0, -1: 2j}), 1j)),
        ]
    first, second = runs(), runs()
    same = sum(a.encode() == b.encode() for a, b in zip(first, second))
    ok = same == len(first)
    line(report_line, ok, "10 determinism", f"{same}/{len(first)} reports byte-identical")
    assert ok
