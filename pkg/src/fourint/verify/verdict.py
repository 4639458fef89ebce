"""Verdicts, evidence records and the convexity partition."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

PASSED, FAILED, INCONCLUSIVE = "passed", "failed", "inconclusive"
EXIT_CODES = {PASSED: 0, FAILED: 3, INCONCLUSIVE: 4}


@dataclass(frozen=True)
class Evidence:
    """One audited quantity: its value, the threshold it was judged against,
    whether it passed, and the raw partial results behind it (if any)."""

    label: str
    value: object
    threshold: float | None = None
    ok: bool | None = None
    history: tuple = ()

    def as_dict(self):
        d = {"label": self.label, "value": self.value, "threshold": self.threshold,
             "ok": self.ok}
        if self.history:
            d["history"] = list(self.history)
        return d


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    inconclusive: bool = False
    lhs: complex | None = None
    rhs: complex | None = None
    abs_gap: float | None = None
    evidence: tuple = ()
    notes: str = ""
    value: object = None  # auxiliary reported quantity, e.g. the constant C

    def __post_init__(self):
        if self.passed and self.inconclusive:
            raise ValueError("a verdict cannot be both passed and inconclusive")
        if self.abs_gap is not None:
            if self.lhs is None or self.rhs is None:
                raise ValueError("abs_gap needs both sides")
            gap = abs(complex(self.lhs) - complex(self.rhs))
            if not (gap == self.abs_gap or (math.isnan(gap) and math.isnan(self.abs_gap))):
                raise ValueError("abs_gap must equal |lhs - rhs|")

    @property
    def status(self):
        if self.passed:
            return PASSED
        return INCONCLUSIVE if self.inconclusive else FAILED

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def as_dict(self):
        return {"name": self.name, "status": self.status, "passed": self.passed,
                "inconclusive": self.inconclusive, "lhs": self.lhs, "rhs": self.rhs,
                "abs_gap": self.abs_gap, "value": self.value, "notes": self.notes,
                "evidence": [e.as_dict() for e in self.evidence]}


def compare(name, lhs, rhs, tol, evidence=(), notes="", value=None) -> Verdict:
    """Verdict for an identity lhs = rhs at absolute tolerance tol."""
    lhs, rhs = complex(lhs), complex(rhs)
    gap = abs(lhs - rhs)
    ev = tuple(evidence) + (Evidence("|lhs - rhs|", gap, tol, gap <= tol),)
    return Verdict(name, bool(gap <= tol), False, lhs, rhs, gap, ev, notes, value)


def inconclusive(name, reason, evidence=(), lhs=None, rhs=None) -> Verdict:
    return Verdict(name, False, True, lhs, rhs, None, tuple(evidence), reason)


@dataclass(frozen=True)
class ConvexityPartition:
    """Breakpoints a_1 < ... < a_n and a convexity sign per piece.

    ``piece_signs[i]`` is +1 (convex) or -1 (concave) on the i-th of the
    n + 1 pieces (-inf, a_1], [a_1, a_2], ..., [a_n, inf).  An empty
    ``piece_signs`` means each sign is inferred from samples.
    """

    breakpoints: tuple = ()
    piece_signs: tuple = field(default=())

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        if any(not math.isfinite(b) for b in bp):
            raise ValueError("breakpoints must be finite")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        signs = tuple(int(s) for s in self.piece_signs)
        object.__setattr__(self, "piece_signs", signs)
        if signs and len(signs) != len(bp) + 1:
            raise ValueError("need one convexity sign per piece (len(breakpoints) + 1)")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("convexity signs must be +1 or -1")

    @property
    def pieces(self):
        ends = (-math.inf,) + self.breakpoints + (math.inf,)
        return tuple(zip(ends[:-1], ends[1:]))

    def as_dict(self):
        return {"breakpoints": list(self.breakpoints), "piece_signs": list(self.piece_signs)}
