from fractions import Fraction

import pytest
import sympy as sp

from ftlcalc.adams import (Mismatch, omega, omega_closed, omega_recursive, p_poly, psi_tau,
                           psi_x_oracle, q_poly)
from ftlcalc.rings import (EPS, GAMMA, GAMMA_INV, MUL, MUL_MINUS, MUL_PLUS, TAU, NotInvertible,
                           ZEps)

X = sp.symbols("x")


def coeff(p, k):
    return p.terms.get((k,), p.ring.zero)


def test_psi_tau_examples():
    assert psi_tau(0) == MUL.coerce(2)
    assert psi_tau(1) == TAU
    assert psi_tau(2) == GAMMA * -EPS * 2


def test_p_examples():
    assert p_poly(1).terms == {(0,): MUL.one}
    assert p_poly(2).terms == {(0,): TAU * 2, (1,): MUL.one}
    p3 = p_poly(3)
    assert coeff(p3, 1) == TAU * 3
    assert coeff(p3, 0) == omega(3)


def test_omega_examples():
    assert omega(0) == MUL.zero
    assert omega(1) == MUL.one
    assert omega(2) == TAU * 2
    assert omega(3) == MUL.coerce(ZEps(3, -6)) * GAMMA
    assert omega(5) == MUL.coerce(ZEps(15, -10)) * GAMMA ** 2


@pytest.mark.parametrize("n", range(1, 16))
def test_p_shape(n):
    p = p_poly(n)
    assert p.degree() == n - 1
    assert coeff(p, n - 1) == MUL.one
    if n >= 2:
        assert coeff(p, n - 2) == TAU * n
    assert coeff(p, 0) == omega(n)


@pytest.mark.parametrize("n", range(1, 16))
def test_p_matches_polynomial_recursion(n):
    assert p_poly(n) == psi_x_oracle(n)


def chebyshev_oracle(n, tau):
    # gamma = 1: psi^n(y) = 2 T_n(y / 2)
    y = X + tau
    full = 2 * sp.chebyshevt(n, y / 2) - 2 * sp.chebyshevt(n, sp.Rational(tau, 2))
    return sp.Poly(sp.expand(sp.cancel(full / X)), X)


@pytest.mark.parametrize("n", range(1, 16))
def test_p_matches_chebyshev_images(n):
    p = p_poly(n)
    (plus_ring, plus), (minus_ring, minus) = MUL.homogeneous_images()
    for hom, tau in ((plus, 2), (minus, 0)):
        want = chebyshev_oracle(n, tau)
        for k in range(n):
            assert hom(coeff(p, k)) == want.coeff_monomial(X ** k)


@pytest.mark.parametrize("n", range(0, 21))
def test_omega_recursion_equals_closed_form(n):
    assert omega_recursive(n) == omega_closed(n)


def test_omega_grading():
    for n in range(1, 21):
        w = omega(n)
        assert MUL.degree(w) == 2 * (n - 1)


def test_mismatch_carries_both_values():
    err = Mismatch("omega(4)", "a", "b")
    assert isinstance(err, AssertionError)
    assert (err.first, err.second) == ("a", "b")


def test_q_examples():
    assert q_poly(1, "plus").terms == {(0,): MUL_PLUS.one}
    q2 = q_poly(2, "plus")
    # (x + 2 tau) / (2 tau) with tau^2 = 4 gamma
    assert coeff(q2, 0) == MUL_PLUS.one
    assert coeff(q2, 1) == MUL_PLUS.coerce(TAU * GAMMA_INV) * Fraction(1, 8)


def test_q2_plus_reciprocal():
    q2 = q_poly(2, "plus")
    two_tau = MUL_PLUS.coerce(TAU) * 2
    assert coeff(q2, 1) * two_tau == MUL_PLUS.one


@pytest.mark.parametrize("part", ["plus", "minus"])
def test_q_constant_term_is_one(part):
    for n in range(1, 16):
        try:
            q = q_poly(n, part)
        except NotInvertible:
            assert part == "minus" and n % 2 == 0
            continue
        assert coeff(q, 0) == q.ring.one


def test_q_times_omega_is_p():
    for n in (3, 5, 7):
        q = q_poly(n, "minus")
        w = MUL_MINUS.coerce(omega(n))
        assert q.scale(w) == p_poly(n).specialize("minus")


def test_q_rejects_unknown_part():
    with pytest.raises(ValueError):
        q_poly(3, "both")
