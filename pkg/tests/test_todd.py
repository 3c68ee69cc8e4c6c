import random
from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.polyfuncs import symmetrize

from ftlcalc.rings import QQ, ZEPS, ZEps
from ftlcalc.series import PrecisionError, TruncSeries
from ftlcalc.todd import BorelData, OrientationSeries, todd_of_bundle, todd_series


def t_series(ring, coeffs, bound=None):
    return TruncSeries(ring, ("t",), {(k,): c for k, c in enumerate(coeffs) if c}, bound)


# -- Todd series --------------------------------------------------------------------

def test_identity_orientation():
    assert todd_series(OrientationSeries.identity(QQ), 6) == t_series(QQ, [1], 6)


def test_cubic_expansion():
    a2, a3, a4 = 2, 3, 5
    theta = OrientationSeries(QQ, [a2, a3, a4])
    expected = [1, -a2, a2 ** 2 - a3, -a4 + 2 * a2 * a3 - a2 ** 3]
    assert todd_series(theta, 3) == t_series(QQ, expected, 3)


def test_symbolic_cubic_expansion():
    a2, a3, a4 = sp.symbols("a2 a3 a4")
    t = sp.symbols("t")
    quotient = sp.series(t / (t + a2 * t ** 2 + a3 * t ** 3 + a4 * t ** 4), t, 0, 4).removeO()
    assert sp.expand(quotient.coeff(t, 3)) == sp.expand(-a4 + 2 * a2 * a3 - a2 ** 3)


def test_geometric_orientation():
    # theta = t / (1 - c t) = t + c t^2 + c^2 t^3 + ...
    c = Fraction(3, 2)
    theta = OrientationSeries(QQ, [c ** k for k in range(1, 9)], bound=9)
    assert todd_series(theta, 8) == t_series(QQ, [1, -c], 8)


def test_todd_series_over_zeps():
    theta = OrientationSeries(ZEPS, [ZEps(1, -1)])
    tt = todd_series(theta, 3)
    assert tt.coefficient((1,)) == ZEps(-1, 1)
    assert tt.coefficient((2,)) == ZEps(2, -2)


def test_todd_series_precision():
    theta = OrientationSeries(QQ, [1, 2], bound=3)
    with pytest.raises(PrecisionError):
        todd_series(theta, 3)
    with pytest.raises(PrecisionError):
        theta.coefficient(4)


def test_orientation_from_series():
    s = TruncSeries(QQ, ("t",), {(1,): 1, (3,): 4}, 5)
    theta = OrientationSeries.from_series(s)
    assert theta.coefficient(3) == 4 and theta.coefficient(2) == 0
    with pytest.raises(ValueError):
        OrientationSeries.from_series(TruncSeries(QQ, ("t",), {(1,): 2}))


# -- Todd classes -------------------------------------------------------------------

def test_trivial_todd_series():
    one = t_series(QQ, [1])
    T = todd_of_bundle(one, BorelData(8, 10))
    assert T.terms == {(0, 0, 0, 0): 1}


def test_rank_two_is_literal_substitution():
    tt = t_series(QQ, [1, Fraction(-1, 2), Fraction(1, 12), 0, Fraction(-1, 720)], 4)
    T = todd_of_bundle(tt, BorelData(2, 8))
    assert T.vars == ("b1",)
    assert T.terms == {(k,): c for (k,), c in tt.terms.items()}


def test_rank_four_quadratic():
    c = 3
    tt = t_series(QQ, [1, 0, c])
    T = todd_of_bundle(tt, BorelData(4, 8))
    # 1 + c(b1^2 - 2 b2) + c^2 b2^2
    assert T.terms == {(0, 0): 1, (2, 0): c, (0, 1): -2 * c, (0, 2): c * c}


def test_constant_term_must_be_one():
    with pytest.raises(ValueError):
        todd_of_bundle(t_series(QQ, [2, 1]), BorelData(2, 4))


def test_odd_rank_rejected():
    with pytest.raises(ValueError):
        BorelData(3, 4)


def sympy_todd(tt, n, bound):
    xs = sp.symbols(f"x1:{n + 1}")
    t = sp.symbols("t")
    one = sum(sp.Rational(str(c)) * t ** k for (k,), c in tt.terms.items())
    P = sp.Poly(sp.expand(sp.prod([one.subs(t, x) for x in xs])), *xs)
    kept = sum(c * sp.prod([x ** e for x, e in zip(xs, m)])
               for m, c in P.terms() if 2 * sum(m) <= bound)
    sym, rem, defs = symmetrize(kept, *xs, formal=True)
    assert rem == 0
    return sp.expand(sym.subs({s: sp.Symbol(f"b{i}") for i, (s, _) in enumerate(defs, 1)}))


def as_sympy(T):
    bs = sp.symbols(T.vars)
    return sp.expand(sum(sp.Rational(str(c)) * sp.prod([b ** e for b, e in zip(bs, m)])
                         for m, c in T.terms.items()))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_direct_roots(n):
    rng = random.Random(n)
    for _ in range(3):
        coeffs = [1] + [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
        tt = t_series(QQ, coeffs, 4)
        T = todd_of_bundle(tt, BorelData(2 * n, 8))
        assert as_sympy(T) == sympy_todd(tt, n, 8)


def test_whitney_sum():
    rng = random.Random(5)
    tt = t_series(QQ, [1] + [Fraction(rng.randint(-4, 4), 3) for _ in range(5)], 5)
    bound = 10
    T = todd_of_bundle(tt, BorelData(6, bound))
    T1 = todd_of_bundle(tt, BorelData(4, bound, names=("c1", "c2")))
    T2 = todd_of_bundle(tt, BorelData(2, bound, names=("d1",)))
    vs, ws = ("c1", "c2", "d1"), (2, 4, 2)

    def v(name):
        return TruncSeries.variable(QQ, vs, name, bound, ws)

    c1, c2, d1 = v("c1"), v("c2"), v("d1")
    # b(E + F) = b(E) b(F)
    total = T.compose({"b1": c1 + d1, "b2": c2 + c1 * d1, "b3": c2 * d1}, vs, ws)
    assert total.truncate(bound) == (T1.embed(vs, ws) * T2.embed(vs, ws)).truncate(bound)


def test_degree_bookkeeping():
    rng = random.Random(2)
    tt = t_series(QQ, [1] + [rng.randint(-3, 3) for _ in range(6)], 6)
    B = BorelData(8, 12)
    T = todd_of_bundle(tt, B)
    assert T.weights == B.weights == (2, 4, 6, 8)
    for m in T.terms:
        assert sum(w * e for w, e in zip(B.weights, m)) <= B.bound


def test_truncated_series_limits_the_bound():
    tt = t_series(QQ, [1, 1, 1], 2)
    T = todd_of_bundle(tt, BorelData(2, 10))
    assert T.bound == 5
