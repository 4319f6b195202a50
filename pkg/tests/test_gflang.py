from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelcf.errors import (
    GFSyntaxError,
    NotContractive,
    UnboundVariable,
    UnknownCharacter,
    ZeroConstantTerm,
)
from hankelcf.gflang import (
    Add,
    Const,
    Div,
    Mul,
    Pow,
    SelfRef,
    Sub,
    Var,
    X,
    eval_gf,
    parse_gf,
    pretty_print,
)
from hankelcf.presets import PRESETS
from hankelcf.series import PowerSeries

CONJ2 = "1/(1 - x*(1+r*x)/(1-x) - s*x^2*G)"

leaves = st.one_of(
    st.fractions(min_value=0, max_value=20, max_denominator=7).map(Const),
    st.sampled_from(["r", "s", "v", "w", "abc", "t_1"]).map(Var),
    st.just(X()),
    st.just(SelfRef()),
)


def _extend(children):
    binary = st.sampled_from([Add, Sub, Mul, Div])
    return st.one_of(
        st.builds(lambda op, a, b: op(a, b), binary, children, children),
        st.builds(Pow, children, st.integers(min_value=0, max_value=5)),
    )


expressions = st.recursive(leaves, _extend, max_leaves=24)


def test_parse_power():
    assert parse_gf("x^2") == Pow(X(), 2)


def test_parse_conj2_structure():
    e = parse_gf(CONJ2)
    assert isinstance(e, Div)
    assert e.left == Const(Fraction(1))
    outer = e.right
    assert isinstance(outer, Sub)
    assert isinstance(outer.left, Sub)
    assert outer.left.left == Const(Fraction(1))
    assert outer.right == Mul(Mul(Var("s"), Pow(X(), 2)), SelfRef())


def test_parse_precedence_and_associativity():
    assert parse_gf("1-x-x") == Sub(Sub(Const(1), X()), X())
    assert parse_gf("x*x/r") == Div(Mul(X(), X()), Var("r"))
    assert parse_gf("1+x*r^3") == Add(Const(1), Mul(X(), Pow(Var("r"), 3)))


def test_parse_rational_literal():
    assert parse_gf("3/4") == Const(Fraction(3, 4))
    assert parse_gf("3/4*x") == Mul(Const(Fraction(3, 4)), X())
    assert parse_gf("1/(2)") == Div(Const(1), Const(2))


def test_parse_unclosed_paren():
    with pytest.raises(GFSyntaxError) as exc:
        parse_gf("1/(1 - x")
    assert exc.value.position == len("1/(1 - x")


@pytest.mark.parametrize("text", ["2x", "x G", "-x", "x^", "x^r", "()", ""])
def test_parse_rejects(text):
    with pytest.raises(GFSyntaxError):
        parse_gf(text)


@pytest.mark.parametrize("text", ["x + $", "1.5", "Q*x"])
def test_parse_unknown_character(text):
    with pytest.raises(UnknownCharacter):
        parse_gf(text)


def test_pretty_print_power():
    assert pretty_print(Pow(X(), 2)) == "(x^2)"


def test_pretty_print_integer_division_round_trip():
    e = Div(Const(Fraction(1)), Const(Fraction(2)))
    assert parse_gf(pretty_print(e)) == e


@settings(max_examples=200, deadline=None)
@given(expressions)
def test_round_trip_random(expr):
    assert parse_gf(pretty_print(expr)) == expr


@pytest.mark.parametrize("pid", ["conj2", "conj3", "conj4", "conj5"])
def test_round_trip_presets(pid):
    e = parse_gf(PRESETS[pid].expr_text)
    assert parse_gf(pretty_print(e)) == e


def test_eval_geometric():
    assert list(eval_gf(parse_gf("1/(1-x)"), {}, 4).coeffs) == [1] * 5


def test_eval_conj2_matches_canonical():
    from hankelcf.cf import CFParams, series_from_cf

    g = eval_gf(parse_gf(CONJ2), {"r": 1, "s": 1}, 12)
    assert g.coeffs == series_from_cf(CFParams(1, -1, -2, -1, -1, 1), 12).coeffs


def test_eval_bare_selfref_not_contractive():
    with pytest.raises(NotContractive):
        eval_gf(parse_gf("G"), {}, 5)


def test_eval_unbound():
    with pytest.raises(UnboundVariable):
        eval_gf(parse_gf("1 + r*x"), {}, 3)


def test_eval_zero_denominator():
    with pytest.raises(ZeroConstantTerm):
        eval_gf(parse_gf("1/x"), {}, 3)


def test_eval_catalan():
    g = eval_gf(parse_gf("1 + x*G^2"), {}, 7)
    assert list(g.coeffs) == [1, 1, 2, 5, 14, 42, 132, 429]


selfref_free = st.recursive(
    st.one_of(
        st.fractions(min_value=0, max_value=6, max_denominator=4).map(Const),
        st.sampled_from(["r", "s"]).map(Var),
        st.just(X()),
    ),
    lambda ch: st.one_of(
        st.builds(lambda op, a, b: op(a, b), st.sampled_from([Add, Sub, Mul]), ch, ch),
        st.builds(Pow, ch, st.integers(min_value=0, max_value=3)),
    ),
    max_leaves=10,
)


def _reference(expr, env, n):
    # independent structural evaluation straight onto series arithmetic
    if isinstance(expr, Const):
        return PowerSeries.constant(expr.value, n)
    if isinstance(expr, Var):
        return PowerSeries.constant(env[expr.name], n)
    if isinstance(expr, X):
        return PowerSeries([0, 1], n)
    if isinstance(expr, Pow):
        out = PowerSeries.constant(1, n)
        for _ in range(expr.exponent):
            out = out * _reference(expr.base, env, n)
        return out
    a, b = _reference(expr.left, env, n), _reference(expr.right, env, n)
    return {Add: a.__add__, Sub: a.__sub__, Mul: a.__mul__}[type(expr)](b)


@settings(max_examples=80, deadline=None)
@given(selfref_free, st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_eval_homomorphism(expr, r, s):
    env = {"r": r, "s": s}
    assert eval_gf(expr, env, 6).coeffs == _reference(expr, env, 6).coeffs


def test_eval_division_homomorphism():
    env = {"r": Fraction(2, 3)}
    a = eval_gf(parse_gf("1 + r*x^2"), env, 6)
    b = eval_gf(parse_gf("2 - x + r*x^3"), env, 6)
    assert eval_gf(parse_gf("(1 + r*x^2)/(2 - x + r*x^3)"), env, 6) == a / b
