from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ftlcalc.hrr import (DegreeOverflow, SurfaceModel, hrr_surface, k3_model, k3_todd_class,
                         quadratic_euler_char, quadratic_euler_char_k3)
from ftlcalc.rings import EPS, H, QEPS, QEps, ZEps

small = st.integers(-12, 12)
zeps = st.builds(ZEps, small, small)


def k3_todd_literal(model):
    return model.element({(): 1, "c2": H * Fraction(1, 24)})


# -- quadratic Euler characteristic -------------------------------------------------

def test_k3_formula_examples():
    assert quadratic_euler_char_k3(0, 0) == 0
    assert quadratic_euler_char_k3(1, H) == H * 3
    assert quadratic_euler_char_k3(1, ZEps(3, -1)) == ZEps(5, -3)


def test_k3_formula_rejects_negative_rank():
    with pytest.raises(ValueError):
        quadratic_euler_char_k3(-1, 0)


@given(st.lists(st.integers(0, 40), max_size=6), zeps, st.integers(0, 3))
def test_hyperbolic_tail_is_h_multiple(dims, form, m):
    tail = quadratic_euler_char(form, dims, m) - form
    # a multiple of h = 1 - eps has the shape k - k eps
    assert tail.a == -tail.b


def test_definition_on_small_data():
    # the i-th dimension enters with sign (-1)^(m+i)
    assert quadratic_euler_char(EPS, [2], m=0) == EPS + H * 2
    assert quadratic_euler_char(1, [1, 3], m=1) == 1 - H + H * 3


# -- Todd class and HRR ---------------------------------------------------------------

def test_k3_todd_class_from_borel_character():
    model = k3_model()
    assert k3_todd_class(model) == k3_todd_literal(model)


@pytest.mark.parametrize("r", range(0, 11))
def test_hrr_k3_ranks(r):
    for deg_e in (ZEps(0, 0), ZEps(1, 0), ZEps(0, 1), ZEps(3, -1), ZEps(-7, 4)):
        model = k3_model(24, deg_e)
        e = model.element({"e": 1})
        got = hrr_surface(model, r, e, k3_todd_class(model))
        assert got == quadratic_euler_char_k3(r, deg_e) == H * (2 * r) + deg_e


def test_hrr_is_affine_in_the_euler_degree():
    # f(a + b eps) = f(0) + a (f(1) - f(0)) + b (f(eps) - f(0)) pins down the symbolic form
    def f(r, d):
        model = k3_model(24, d)
        return hrr_surface(model, r, model.element({"e": 1}), k3_todd_class(model))

    for r in range(4):
        base = f(r, 0)
        assert base == H * (2 * r)
        assert f(r, 1) - base == 1
        assert f(r, EPS) - base == EPS


def test_trivial_inputs():
    model = k3_model()
    one = model.element({(): 1})
    zero = model.element({})
    assert hrr_surface(model, 0, zero, one) == 0


def test_todd_scaling_of_c2_degree():
    # the c2 term contributes deg(c2) * 2r / 24 * h
    model = k3_model(48, 0)
    got = hrr_surface(model, 3, model.element({}), k3_todd_class(model))
    assert got == H * 12


# -- surface model ------------------------------------------------------------------

def test_degree_overflow():
    model = k3_model()
    with pytest.raises(DegreeOverflow):
        model.element({("c2", "e"): 1})


def test_codimension_one_products():
    model = SurfaceModel({"a": 1, "c2": 2}, {("a", "a"): 2, "c2": 24})
    a = model.element({"a": 1})
    sq = model.mul(a, a)
    assert model.tdeg(sq) == H
    assert model.mul(sq, a).is_zero()


def test_motivic_degree_ignores_eps_sign():
    model = k3_model(24, 0)
    c2 = model.element({"c2": 1})
    assert model.tdeg(c2) == H * 12
    assert model.tdeg(model.element({"c2": EPS})) == -model.tdeg(c2)


def test_top_monomial_validation():
    with pytest.raises(ValueError):
        SurfaceModel({"a": 1}, {"a": 3})
    with pytest.raises(ValueError):
        SurfaceModel({"a": 3}, {})


@given(zeps, zeps, zeps, zeps)
def test_tdeg_is_linear(a, b, x, y):
    model = k3_model(24, ZEps(2, 1))
    u = model.element({"c2": x, "e": y})
    v = model.element({"c2": y, "e": x})
    lhs = model.tdeg(u.scale(QEPS.coerce(a)) + v.scale(QEPS.coerce(b)))
    rhs = QEps(a.a, a.b) * model.tdeg(u) + QEps(b.a, b.b) * model.tdeg(v)
    assert QEPS.coerce(lhs) == rhs
