from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ftlcalc.expr import ExprSyntaxError, parse_expr, serialize
from ftlcalc.rings import (GAMMA_INV, MUL, MUL_PLUS, QEPS, TAU, WITT, ZEPS, IllegalSymbol,
                           MulRingElem, QEps, ZEps)


def test_zeps_expression():
    assert parse_expr("2*(1-eps)", ZEPS) == ZEps(2, -2)


def test_tau_gamma_inverse():
    x = parse_expr("tau*gamma^-1", MUL)
    assert x == TAU * GAMMA_INV
    assert x.odd == {-1: 1} and not x.even


def test_eps_squared():
    assert parse_expr("eps*eps", ZEPS) == 1


def test_whitespace_is_ignored():
    assert parse_expr("  2 *( 1 -eps ) ", ZEPS) == parse_expr("2*(1-eps)", ZEPS)


def test_h_symbol():
    assert parse_expr("h", ZEPS) == ZEps(1, -1)


def test_tau_is_illegal_in_zeps():
    with pytest.raises(IllegalSymbol):
        parse_expr("1 + tau", ZEPS)


def test_unknown_symbol():
    with pytest.raises(IllegalSymbol):
        parse_expr("q", ZEPS)


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("1 + * 2", ZEPS)
    assert info.value.offset == 4


def test_syntax_error_at_end():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("(1 + eps", ZEPS)
    assert info.value.offset == 8


def test_bad_character():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("1 $ 2", ZEPS)
    assert info.value.offset == 2


def test_division_only_in_rational_rings():
    assert parse_expr("(1 - eps)/24", QEPS) == QEps(Fraction(1, 24), Fraction(-1, 24))
    with pytest.raises(IllegalSymbol):
        parse_expr("1/2", ZEPS)


def test_parenthesised_power():
    assert parse_expr("(1-eps)^2", ZEPS) == ZEps(2, -2)


def test_plus_part_symbols():
    assert parse_expr("tau^2", MUL_PLUS) == parse_expr("4*gamma", MUL_PLUS)


def test_witt_fraction():
    assert parse_expr("-1/24", WITT) == Fraction(-1, 24)


canonical_inputs = ["0", "1", "-3", "eps", "2 - 2*eps", "-eps", "tau", "gamma^-1",
                    "tau*gamma^-1", "3*gamma^2", "(1 - eps)*gamma^-1", "2 + tau - 3*tau*gamma"]


@pytest.mark.parametrize("text", canonical_inputs)
def test_canonical_round_trip(text):
    ring = MUL if ("tau" in text or "gamma" in text) else ZEPS
    assert serialize(parse_expr(text, ring), ring) == text


small = st.integers(-9, 9)


@st.composite
def mul_elems(draw):
    even = {k: ZEps(draw(small), draw(small)) for k in draw(st.lists(st.integers(-2, 2), max_size=3))}
    odd = {k: draw(small) for k in draw(st.lists(st.integers(-2, 2), max_size=3))}
    return MulRingElem(even, odd)


@given(mul_elems())
def test_serialize_parse_round_trip(x):
    text = serialize(x, MUL)
    assert parse_expr(text, MUL) == x
    assert serialize(parse_expr(text, MUL), MUL) == text
