"""Command-line front end.

    fourint transform {fourier,carleman,hilbert,bochner,sine,cosine} ...
    fourint verify {s1,s2,s3,t3a,d1,d2,a6,c0,carleman,hilbert,povzner,e1} ...
    fourint circle {cauchy,pv,hilbert,isometry} ...

Transforms exit 0 on success, 1 on bad input and 2 when a quadrature does
not converge.  Verify and circle exit 0 (passed), 3 (failed) or
4 (inconclusive), and 1 on bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys

import numpy as np

from . import __version__, quad
from . import circle as circ
from . import expr as ex
from . import kernels, report, transforms, verify
from .errors import ConvergenceError, DomainError, FourintError, MeasureError, ParseError
from .measure import Measure

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2

_COMPLEX_RE = re.compile(r"""^\s*
    (?:(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
       (?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]
    |(?P<only_im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]
    |(?P<only_re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    )\s*$""", re.VERBOSE)


def parse_complex(text: str) -> complex:
    """'a+bi', 'bi', 'a' (j is accepted for i)."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex number of the form a+bi: {text!r}")

    def num(s):
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("only_im") is not None:
        return complex(0.0, num(m.group("only_im")))
    return complex(float(m.group("re")), num(m.group("im")))


def parse_reals(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad list of reals {text!r}: {exc}") from exc


def parse_complexes(text: str) -> list:
    return [parse_complex(v) for v in text.split(",") if v.strip()]


def positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def positive_int(text):
    v = int(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--tol", type=positive_float, default=None,
                   help="tolerance (default: the operation's own default)")
    g.add_argument("--budget", type=positive_int, default=quad.DEFAULT_BUDGET,
                   help="integrand evaluations allowed per integral")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--seed", type=int, default=0,
                   help="recorded in the header; no command draws random points")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="fourint", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("transform", help="evaluate a transform at points")
    trs = tr.add_subparsers(dest="op", required=True)
    p = trs.add_parser("fourier", parents=[common], help="mu^(x)")
    p.add_argument("--measure", required=True)
    p.add_argument("--points", type=parse_reals, required=True)
    p = trs.add_parser("carleman", parents=[common], help="F(z), Im z != 0")
    p.add_argument("--measure", required=True)
    p.add_argument("--z", type=parse_complexes, required=True)
    p = trs.add_parser("hilbert", parents=[common],
                       help="H phi for an expression, or H mu^ for a measure")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr")
    src.add_argument("--measure")
    p.add_argument("--points", type=parse_reals, required=True)
    p.add_argument("--generalized", action="store_true",
                   help="use the regularised kernel 1/(x-t) + t/(1+t^2)")
    p = trs.add_parser("bochner", parents=[common], help="mu^(k, t)")
    p.add_argument("--measure", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--points", type=parse_reals, required=True)
    for name in ("sine", "cosine"):
        p = trs.add_parser(name, parents=[common], help=f"{name} transform of f on (0, inf)")
        p.add_argument("--expr", required=True)
        p.add_argument("--points", type=parse_reals, required=True)

    ve = sub.add_parser("verify", help="run a checker and print its verdict")
    ves = ve.add_subparsers(dest="op", required=True)
    for name, extra in (("s1", "m0"), ("s3", "m1")):
        p = ves.add_parser(name, parents=[common])
        p.add_argument("--expr", required=True)
        p.add_argument("--m", type=int, default=int(extra[1]))
    for name in ("s2", "t3a"):
        p = ves.add_parser(name, parents=[common])
        p.add_argument("--expr", required=True)
    for name in ("d1", "d2", "a6"):
        p = ves.add_parser(name, parents=[common])
        p.add_argument("--expr", required=True)
        p.add_argument("--b", type=float, default=0.0)
    p = ves.add_parser("c0", parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--breakpoints", required=True,
                   help="comma-separated reals, or auto:NAME for a stored partition")
    p.add_argument("--signs", default=None,
                   help="comma-separated +1/-1 per piece (inferred when omitted)")
    p = ves.add_parser("carleman", parents=[common])
    p.add_argument("--measure", required=True)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--convergence-only", action="store_true",
                   help="report only whether the principal value exists")
    p = ves.add_parser("hilbert", parents=[common])
    p.add_argument("--measure", required=True)
    p.add_argument("--x", type=float, required=True)
    p = ves.add_parser("povzner", parents=[common])
    p.add_argument("--measure", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", type=parse_complex, required=True)
    p = ves.add_parser("e1", parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--points", type=parse_reals, default=[-2.0, 0.0, 1.0, 3.0])

    ci = sub.add_parser("circle", help="Wiener algebra on the unit circle")
    cis = ci.add_subparsers(dest="op", required=True)
    for name in ("cauchy", "pv"):
        p = cis.add_parser(name, parents=[common])
        p.add_argument("--coeffs", required=True)
        p.add_argument("--z", type=parse_complex, required=True)
    for name in ("hilbert", "isometry"):
        p = cis.add_parser(name, parents=[common])
        p.add_argument("--coeffs", required=True)
    return ap


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MeasureError(f"cannot read {path}: {exc.strerror}") from exc


def load_measure(path) -> Measure:
    return Measure.from_json(_read(path))


def load_coeffs(path) -> circ.CoeffSeq:
    return circ.CoeffSeq.from_json(_read(path))


def header(args) -> dict:
    return {
        "tool": "fourint",
        "version": __version__,
        "command": f"{args.command} {args.op}",
        "tol": args.tol,
        "budget": args.budget,
        "seed": args.seed,
        "schedule": {
            "window_start": quad.N0,
            "window_growth": 2,
            "decay_factor": quad.DECAY_FACTOR,
            "confirmations": quad.CONFIRMATIONS,
            "richardson_order": quad.RICHARDSON_ORDER,
            "max_doublings": quad.MAX_DOUBLINGS,
            "pv_epsilon": "min(1, dist) * 2^-j",
            "circle_epsilon": "2^-j * pi / 64",
            "taper_order": quad.TAPER_ORDER,
        },
        "kernels": kernels.backend(),
    }


def _fmt(v):
    if isinstance(v, float):
        return report.format_float(v)
    return str(v)


def _rows_csv(rows, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_verdict(args, v: verify.Verdict, extra=None):
    if args.format == "csv":
        rows = [{"label": e.label, "value": report.plain(e.value), "threshold": e.threshold,
                 "ok": e.ok} for e in v.evidence]
        rows.append({"label": "status", "value": v.status, "threshold": None, "ok": v.passed})
        emit(args, _rows_csv(rows, ["label", "value", "threshold", "ok"]))
    else:
        doc = {"header": header(args), "verdict": v}
        if extra:
            doc.update(extra)
        emit(args, report.dumps(doc))
    return v.exit_code


def _tol(args, default):
    return args.tol if args.tol is not None else default


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def _two_level(fn, tol):
    """Value at ``tol`` with the gap to a 100x tighter run as error estimate."""
    v = complex(fn(tol))
    fine = complex(fn(tol / 100))
    return fine, abs(fine - v)


def cmd_transform(args) -> int:
    tol = _tol(args, 1e-6)
    rows = []
    op = args.op
    if op == "fourier":
        mu = load_measure(args.measure)
        for x in args.points:
            v, e = _two_level(lambda t, x=x: transforms.fourier_measure(mu, x, t), tol)
            rows.append({"x": x, "re": v.real, "im": v.imag, "err": e})
    elif op == "carleman":
        mu = load_measure(args.measure)
        for z in args.z:
            v, e = _two_level(lambda t, z=z: transforms.carleman(mu, z, t).value, tol)
            rows.append({"x": z, "re": v.real, "im": v.imag, "err": e})
    elif op == "bochner":
        mu = load_measure(args.measure)
        for x in args.points:
            v, e = _two_level(lambda t, x=x: transforms.bochner_transform(mu, args.k, x, t), tol)
            rows.append({"x": x, "re": v.real, "im": v.imag, "err": e})
    elif op == "hilbert":
        if args.measure:
            phi = transforms.fourier_callable(load_measure(args.measure))
        else:
            phi = ex.parse(args.expr)
        fn = transforms.hilbert_generalized if args.generalized else transforms.hilbert_line
        for x in args.points:
            r = fn(phi, x, tol, full=True)
            if not r.converged:
                raise ConvergenceError(f"Hilbert transform at x={x}: {r.divergence_hint}", r)
            rows.append({"x": x, "re": float(np.real(r.value)), "im": float(np.imag(r.value)),
                         "err": r.abs_error_estimate})
    else:
        f = ex.parse(args.expr)
        fn = transforms.sine_transform if op == "sine" else transforms.cosine_transform
        for x in args.points:
            r = fn(f, x, tol, full=True)
            if not r.converged:
                raise ConvergenceError(f"{op} transform at t={x}: {r.divergence_hint}", r)
            rows.append({"x": x, "re": float(np.real(r.value)), "im": 0.0,
                         "err": r.abs_error_estimate})
    if args.format == "csv":
        for r in rows:
            if isinstance(r["x"], complex):
                r["x"] = f"{_fmt(r['x'].real)}{'+' if r['x'].imag >= 0 else '-'}" \
                         f"{_fmt(abs(r['x'].imag))}i"
        emit(args, _rows_csv(rows, ["x", "re", "im", "err"]))
    else:
        emit(args, report.dumps({"header": header(args), "rows": rows}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _partition(args):
    text = args.breakpoints.strip()
    if text.startswith("auto:"):
        key = text[5:]
        if key not in verify.AUTO_PARTITIONS:
            raise ValueError(f"unknown stored partition {key!r}; choose from "
                             f"{sorted(verify.AUTO_PARTITIONS)}")
        part = verify.AUTO_PARTITIONS[key]()
        if args.signs is None:
            return part
        bps = part.breakpoints
    else:
        bps = tuple(parse_reals(text))
    signs = () if args.signs is None else tuple(int(float(s)) for s in args.signs.split(","))
    return verify.ConvexityPartition(bps, signs)


def run_verify(args) -> verify.Verdict:
    op = args.op
    if op in ("s1", "s3"):
        check = verify.check_S1 if op == "s1" else verify.check_S3
        return check(ex.parse(args.expr), args.m, _tol(args, 1e-10))
    if op == "s2":
        return verify.check_S2(ex.parse(args.expr), _tol(args, 1e-10))
    if op == "t3a":
        return verify.check_3alpha(ex.parse(args.expr), _tol(args, 1e-6))
    if op in ("d1", "d2", "a6"):
        check = {"d1": verify.check_d1, "d2": verify.check_d2, "a6": verify.check_6alpha}[op]
        return check(ex.parse(args.expr), args.b, _tol(args, 1e-5))
    if op == "c0":
        return verify.check_C0(ex.parse(args.expr), _partition(args), _tol(args, 1e-8))
    if op == "carleman":
        return verify.carleman_identity(load_measure(args.measure), args.z, _tol(args, 1e-4),
                                        convergence_only=args.convergence_only)
    if op == "hilbert":
        return verify.hilbert_identity(load_measure(args.measure), args.x, _tol(args, 1e-4))
    if op == "povzner":
        return verify.povzner(load_measure(args.measure), args.k, args.z, _tol(args, 1e-3))
    if op == "e1":
        return verify.hilbert_involution_E1(ex.parse(args.expr), args.points, _tol(args, 1e-3))
    raise ValueError(f"unknown check {op!r}")


def cmd_verify(args) -> int:
    return emit_verdict(args, run_verify(args))


# ---------------------------------------------------------------------------
# circle
# ---------------------------------------------------------------------------

def _coeff_rows(w):
    return [{"n": n, "re": c.real, "im": c.imag} for n, c in w.coeffs]


def cmd_circle(args) -> int:
    w = load_coeffs(args.coeffs)
    op = args.op
    if op == "cauchy":
        v = verify.circle_cauchy(w, args.z, _tol(args, 1e-8))
        return emit_verdict(args, v, {"value": v.rhs})
    if op == "pv":
        v = verify.circle_pv(w, args.z, _tol(args, 1e-6))
        return emit_verdict(args, v, {"value": v.rhs})
    if op == "hilbert":
        hw = circ.hilbert_circle(w)
        extra = {"coeffs": _coeff_rows(hw), "norm_in": circ.wiener_norm(w),
                 "norm_out": circ.wiener_norm(hw)}
        v = verify.circle_isometry(w)
        if args.format == "csv":
            emit(args, _rows_csv(extra["coeffs"], ["n", "re", "im"]))
            return v.exit_code
        return emit_verdict(args, v, extra)
    return emit_verdict(args, verify.circle_isometry(w))


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handler = {"transform": cmd_transform, "verify": cmd_verify, "circle": cmd_circle}
    try:
        with quad.default_budget(args.budget):
            return handler[args.command](args)
    except ConvergenceError as exc:
        print(f"fourint: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (ParseError, MeasureError, DomainError, ValueError, FourintError,
            json.JSONDecodeError, argparse.ArgumentTypeError) as exc:
        print(f"fourint: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
