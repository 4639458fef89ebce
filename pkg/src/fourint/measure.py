"""Finite complex Borel measures on the line: atoms plus piecewise densities.

A density is a finite linear combination ``sum_j c_j * e_j(t)`` of real
expressions with complex coefficients, which keeps the expression grammar
real-valued while allowing complex measures and exact linear algebra
(reflection, even/odd parts, sign weighting) without re-parsing.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .errors import ConvergenceError, MeasureError
from .quad import DEFAULT_TOL, integrate_improper

# ---------------------------------------------------------------------------
# Densities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Density:
    """Complex density sum_j coef_j * expr_j(t)."""

    terms: tuple  # of (complex, Expression)

    @classmethod
    def from_parts(cls, re, im=None):
        terms = []
        for coef, part in ((1.0, re), (1j, im)):
            if part is None:
                continue
            e = ex.parse(part) if isinstance(part, str) else part
            if not e.is_zero_literal:
                terms.append((complex(coef), e))
        return cls(tuple(terms))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for coef, e in self.terms:
            out += coef * e(t)
        return out

    def scaled(self, c):
        c = complex(c)
        if c == 0:
            return Density(())
        return Density(tuple((coef * c, e) for coef, e in self.terms))

    def reflected(self):
        return Density(tuple((coef, e.reflected()) for coef, e in self.terms))

    def __add__(self, other):
        return Density(self.terms + other.terms)

    @property
    def is_zero(self):
        return len(self.terms) == 0

    def real_imag_sources(self):
        """(re, im) source strings, valid only when each part has one term."""
        re = [str(e) for c, e in self.terms if c == 1]
        im = [str(e) for c, e in self.terms if c == 1j]
        if len(re) + len(im) == len(self.terms) and len(re) <= 1 and len(im) <= 1:
            return (re[0] if re else "0", im[0] if im else "0")
        return None


@dataclass(frozen=True)
class Atom:
    t: float
    weight: complex


@dataclass(frozen=True)
class Piece:
    a: float
    b: float
    density: Density


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Measure:
    """Atoms plus densities on intervals with disjoint interiors.

    Construction only checks the structural invariants.  Finite total
    variation is checked by :meth:`checked` (and by every loader), because
    :func:`in_class_Mk` deliberately accepts infinite measures such as
    Lebesgue measure.
    """

    atoms: tuple = ()
    pieces: tuple = ()

    def __post_init__(self):
        locs = [a.t for a in self.atoms]
        if len(set(locs)) != len(locs):
            raise MeasureError("atom locations must be pairwise distinct")
        for a in self.atoms:
            if not math.isfinite(a.t):
                raise MeasureError("atom locations must be finite")
        ordered = sorted(self.pieces, key=lambda p: p.a)
        for p in ordered:
            if not p.a < p.b:
                raise MeasureError(f"piece interval [{p.a}, {p.b}] must have a < b")
        for p, q in zip(ordered, ordered[1:]):
            if q.a < p.b:
                raise MeasureError("piece intervals must have disjoint interiors")

    def checked(self, tol=DEFAULT_TOL):
        """Return self after confirming the total variation is finite."""
        total_variation(self, tol)
        return self

    @property
    def breakpoints(self):
        pts = set()
        for p in self.pieces:
            pts.update(x for x in (p.a, p.b) if math.isfinite(x))
        return sorted(pts)

    def support_within(self, lo, hi):
        """True when every atom and piece lies inside [lo, hi]."""
        return (all(lo <= a.t <= hi for a in self.atoms)
                and all(lo <= p.a and p.b <= hi for p in self.pieces))

    # JSON ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, data, check=True):
        if not isinstance(data, dict):
            raise MeasureError("measure input must be a JSON object")
        unknown = set(data) - {"atoms", "pieces"}
        if unknown:
            raise MeasureError(f"unknown measure fields: {sorted(unknown)}")
        atoms = []
        for item in data.get("atoms", []):
            try:
                atoms.append(Atom(float(item["t"]),
                                  complex(float(item.get("re", 0.0)),
                                          float(item.get("im", 0.0)))))
            except (KeyError, TypeError, ValueError) as exc:
                raise MeasureError(f"bad atom entry {item!r}: {exc}") from exc
        pieces = []
        for item in data.get("pieces", []):
            try:
                a = _endpoint(item["a"])
                b = _endpoint(item["b"])
            except (KeyError, TypeError, ValueError) as exc:
                raise MeasureError(f"bad piece entry {item!r}: {exc}") from exc
            dens = Density.from_parts(str(item.get("re", "0")), str(item.get("im", "0")))
            pieces.append(Piece(a, b, dens))
        mu = cls(tuple(atoms), tuple(pieces))
        return mu.checked() if check else mu

    @classmethod
    def from_json(cls, text, check=True):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MeasureError(f"invalid JSON at line {exc.lineno} column {exc.colno}: "
                               f"{exc.msg}") from exc
        return cls.from_dict(data, check)

    def to_dict(self):
        pieces = []
        for p in self.pieces:
            src = p.density.real_imag_sources()
            if src is None:
                raise MeasureError("density is not expressible as a single (re, im) pair")
            pieces.append({"a": _endpoint_out(p.a), "b": _endpoint_out(p.b),
                           "re": src[0], "im": src[1]})
        return {"atoms": [{"t": a.t, "re": a.weight.real, "im": a.weight.imag}
                          for a in self.atoms],
                "pieces": pieces}


def _endpoint(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("-inf", "-infinity"):
            return -math.inf
        if s in ("inf", "+inf", "infinity"):
            return math.inf
    return float(v)


def _endpoint_out(x):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def dirac(t=0.0, weight=1.0) -> Measure:
    return Measure((Atom(float(t), complex(weight)),))


def density_measure(source, a=-math.inf, b=math.inf, im=None) -> Measure:
    return Measure(pieces=(Piece(float(a), float(b), Density.from_parts(source, im)),))


ZERO_MEASURE = Measure()


# ---------------------------------------------------------------------------
# Linear structure
# ---------------------------------------------------------------------------

def combine(terms) -> Measure:
    """Linear combination sum_i c_i * mu_i for ``terms = [(c_i, mu_i), ...]``."""
    weights = {}
    for c, mu in terms:
        for at in mu.atoms:
            weights[at.t] = weights.get(at.t, 0j) + complex(c) * at.weight
    atoms = tuple(Atom(t, w) for t, w in sorted(weights.items()) if w != 0)

    cuts = set()
    for _, mu in terms:
        for p in mu.pieces:
            cuts.update((p.a, p.b))
    cuts = sorted(cuts)
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        dens = Density(())
        for c, mu in terms:
            for p in mu.pieces:
                if p.a <= lo and hi <= p.b:
                    dens = dens + p.density.scaled(c)
        if not dens.is_zero:
            pieces.append(Piece(lo, hi, dens))
    return Measure(atoms, tuple(pieces))


def reflect(mu: Measure) -> Measure:
    """The measure E -> mu(-E)."""
    # adding 0.0 turns -0.0 into 0.0
    atoms = tuple(sorted((Atom(-a.t + 0.0, a.weight) for a in mu.atoms),
                         key=lambda a: a.t))
    pieces = tuple(sorted((Piece(-p.b + 0.0, -p.a + 0.0, p.density.reflected())
                           for p in mu.pieces),
                          key=lambda p: p.a))
    return Measure(atoms, pieces)


def even_part(mu: Measure) -> Measure:
    return combine([(0.5, mu), (0.5, reflect(mu))])


def odd_part(mu: Measure) -> Measure:
    return combine([(0.5, mu), (-0.5, reflect(mu))])


def restrict(mu: Measure, lo: float, hi: float, *, include_lo=True, include_hi=True) -> Measure:
    """Restriction of mu to the interval between lo and hi."""
    def inside(t):
        return ((lo < t or (include_lo and t == lo)) and (t < hi or (include_hi and t == hi)))
    atoms = tuple(a for a in mu.atoms if inside(a.t))
    pieces = []
    for p in mu.pieces:
        a, b = max(p.a, lo), min(p.b, hi)
        if a < b:
            pieces.append(Piece(a, b, p.density))
    return Measure(atoms, tuple(pieces))


def sign_weight(mu: Measure) -> Measure:
    """d nu = sign(t) d mu: the atom at 0 is annihilated since sign(0) = 0."""
    atoms = tuple(Atom(a.t, a.weight * (1 if a.t > 0 else -1)) for a in mu.atoms if a.t != 0)
    pieces = []
    for p in mu.pieces:
        if p.a < 0:
            pieces.append(Piece(p.a, min(p.b, 0.0), p.density.scaled(-1)))
        if p.b > 0:
            pieces.append(Piece(max(p.a, 0.0), p.b, p.density))
    return Measure(atoms, tuple(pieces))


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

def _piece_integral(p, g, tol):
    def integrand(t):
        return np.asarray(g(t)) * p.density(t)
    return integrate_improper(integrand, p.a, p.b, tol)


def integrate_measure(mu: Measure, g, tol=DEFAULT_TOL) -> complex:
    """int g d mu for a vectorised complex-valued g."""
    total = 0j
    if mu.atoms:
        locs = np.array([a.t for a in mu.atoms])
        w = np.array([a.weight for a in mu.atoms])
        total += complex(np.sum(np.asarray(g(locs), dtype=complex) * w))
    for p in mu.pieces:
        r = _piece_integral(p, g, tol)
        if not r.converged:
            raise ConvergenceError(f"integral over [{p.a}, {p.b}] did not converge: "
                                   f"{r.divergence_hint}", r)
        total += r.value
    return total


def total_variation(mu: Measure, tol=DEFAULT_TOL) -> float:
    """Sum of |atom weights| plus int |density| over every piece."""
    tv = float(sum(abs(a.weight) for a in mu.atoms))
    for p in mu.pieces:
        r = integrate_improper(lambda t, p=p: np.abs(p.density(t)), p.a, p.b, tol)
        if not r.converged:
            raise MeasureError(f"total variation diverges on [{p.a}, {p.b}]: "
                               f"{r.divergence_hint}")
        tv += float(r.value.real)
    return tv


@dataclass(frozen=True)
class MeasureClassReport:
    k: int
    weighted_variation: float
    in_class: bool
    diagnostics: str

    def as_dict(self):
        return {"k": self.k, "weighted_variation": self.weighted_variation,
                "in_class": self.in_class, "diagnostics": self.diagnostics}


def in_class_Mk(mu: Measure, k: int, tol=DEFAULT_TOL) -> MeasureClassReport:
    """Is d|mu| / (1 + |x|^k) a finite measure?  Divergence is a verdict."""
    k = int(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    wv = float(sum(abs(a.weight) / (1.0 + abs(a.t) ** k) for a in mu.atoms))
    notes = []
    ok = True
    for p in mu.pieces:
        def weighted(t, p=p):
            return np.abs(p.density(t)) / (1.0 + np.abs(t) ** k)
        r = integrate_improper(weighted, p.a, p.b, tol)
        if r.converged:
            wv += float(r.value.real)
        else:
            ok = False
            notes.append(f"[{p.a}, {p.b}]: {r.divergence_hint}")
    if not ok:
        wv = math.inf
    return MeasureClassReport(k, wv, ok, "; ".join(notes) or "all weighted integrals converge")
