import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fourint import expr as ex
from fourint.errors import DomainError, ParseError

# ---------------------------------------------------------------------------
# Round trip on generated trees
# ---------------------------------------------------------------------------

leaf = st.one_of(
    st.builds(ex.Num, st.floats(min_value=0.0, max_value=1e6, allow_nan=False)),
    st.builds(ex.Var, st.sampled_from(ex.VARIABLES)),
)


def trees(depth):
    if depth <= 1:
        return leaf
    sub = trees(depth - 1)
    return st.one_of(
        leaf,
        st.builds(ex.Neg, sub),
        st.builds(ex.BinOp, st.sampled_from("+-*/^"), sub, sub),
        st.builds(ex.Call, st.sampled_from(ex.FUNCTIONS), sub),
        st.builds(ex.Lnk, st.integers(1, 4), sub),
    )


@settings(max_examples=1000, deadline=None)
@given(trees(6))
def test_round_trip(node):
    assert ex.depth(node) <= 6
    assert ex.parse(ex.to_source(node)).ast == node


@settings(max_examples=200, deadline=None)
@given(trees(4), st.lists(st.floats(-5, 5), min_size=1, max_size=8))
def test_vectorised_matches_pointwise(node, xs):
    v, code = ex.evaluate_array(node, np.array(xs))
    for x, vi, ci in zip(xs, v, code):
        w, c = ex.evaluate_array(node, np.array([x]))
        assert ci == c[0]
        if ci == 0:
            assert vi == w[0]
        else:
            assert math.isnan(vi)


# ---------------------------------------------------------------------------
# Hand-computed values
# ---------------------------------------------------------------------------

E = math.e
HAND = [
    ("1+2*3", 0.0, 7.0),
    ("-x^2", 3.0, -9.0),
    ("2^3^2", 0.0, 512.0),
    ("x^-2", 2.0, 0.25),
    ("(1+x)/(1-x)", 0.5, 3.0),
    ("exp(x)", 1.0, E),
    ("log(x)", E * E, 2.0),
    ("sin(x)", math.pi / 6, 0.5),
    ("cos(x)", math.pi / 3, 0.5),
    ("sqrt(x)", 2.25, 1.5),
    ("abs(x)", -4.5, 4.5),
    ("sign(x)", -0.1, -1.0),
    ("sign(x)", 0.0, 0.0),
    ("sign(x)", 7.0, 1.0),
    ("lnk(1, x)", E, 1.0),
    ("lnk(2, x)", E ** E, 1.0),
    ("1/sqrt(1+log(abs(x))^2)", -E, 1 / math.sqrt(2.0)),
    ("t*exp(-t)", 1.0, 1 / E),
    ("(-2)^3", 0.0, -8.0),
    ("x - 3 - 2", 10.0, 5.0),
    ("2*x^2/4", 3.0, 4.5),
    ("1e-3*x", 5.0, 0.005),
]


@pytest.mark.parametrize("src,x,expected", HAND)
def test_hand_values(src, x, expected):
    assert abs(ex.eval(ex.parse(src), x) - expected) <= 1e-14 * max(1.0, abs(expected))


def test_precedence_unary_minus_binds_looser_than_power():
    assert ex.parse("-x^2").ast == ex.Neg(ex.BinOp("^", ex.Var("x"), ex.Num(2.0)))


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("src,pos", [("1+*2", 2), ("sin(x", 5), ("foo(x)", 0), ("2 3", 2),
                                     ("lnk(0, x)", 4), ("", 0)])
def test_parse_error_position(src, pos):
    with pytest.raises(ParseError) as info:
        ex.parse(src)
    assert info.value.position == pos
    assert f"offset {pos}" in str(info.value)


@pytest.mark.parametrize("src,x,reason", [
    ("log(x)", 0.0, "log of non-positive argument"),
    ("1/x", 0.0, "division by zero"),
    ("x^-1", 0.0, "zero raised to a negative power"),
    ("sqrt(x)", -1.0, "square root of negative argument"),
    ("x^0.5", -8.0, "negative base with non-integer exponent"),
    ("lnk(2, x)", 0.5, "iterated logarithm outside its domain"),
    ("exp(x)", 1000.0, "non-finite result"),
])
def test_domain_errors(src, x, reason):
    e = ex.parse(src)
    with pytest.raises(DomainError, match=reason):
        ex.eval(e, x)
    grid = ex.eval_grid(e, [x, 1.0])
    assert grid.values[0] is None and grid.errors[0] == reason
    assert grid.ok == (False, True) or src in ("lnk(2, x)",)


def test_reflect_and_shift():
    e = ex.parse("exp(x)*x")
    assert ex.eval(e.reflected(), 2.0) == pytest.approx(-2 * math.exp(-2))
    assert ex.eval(e.shifted(1.0), 0.0) == pytest.approx(E)
