"""Quadratic Euler characteristics and Riemann-Roch on a surface model.

Classes on the surface are polynomials over Q[eps] in named generators of
codimension 1 or 2, truncated above codimension 2.  Each top-codimension
monomial has a degree and a kind:

* ``"motivic"`` classes come from ordinary Chow groups, where eps acts as -1.
  Their quadratic degree is hyperbolic: ``tdeg(a*m) = a(eps=-1)/2 * deg(m) * h``.
* ``"quadratic"`` classes carry a Grothendieck-Witt valued degree and
  ``tdeg(a*m) = a * deg(m)``.

Both rules are Z[eps]-linear.
"""

from __future__ import annotations

from fractions import Fraction

from .borel import borel_todd_M, borel_todd_W
from .rings import EPS, H, QEPS, QEps, ZEps
from .series import TruncSeries

TOP = 2


class DegreeOverflow(ValueError):
    pass


def _qeps(x) -> QEps:
    return QEPS.coerce(x)


def _gw(x: QEps):
    """Return a ZEps when the value is integral."""
    if Fraction(x.a).denominator == 1 and Fraction(x.b).denominator == 1:
        return ZEps(int(x.a), int(x.b))
    return x


class SurfaceModel:
    def __init__(self, generators: dict, degrees: dict, kinds: dict | None = None):
        """generators: name -> codimension (1 or 2).
        degrees: top monomial (a generator name, or a tuple of names) -> degree.
        kinds: same keys -> "motivic" (default) or "quadratic".
        """
        for g, c in generators.items():
            if c not in (1, 2):
                raise ValueError(f"generator {g!r} must have codimension 1 or 2")
        self.generators = dict(generators)
        self.vars = tuple(generators)
        self.weights = tuple(generators[v] for v in self.vars)
        self.degrees = {}
        self.kinds = {}
        kinds = kinds or {}
        for key, d in degrees.items():
            exps = self._exps(key)
            kind = kinds.get(key, "motivic")
            if kind not in ("motivic", "quadratic"):
                raise ValueError(f"unknown kind {kind!r}")
            self.degrees[exps] = _qeps(d)
            self.kinds[exps] = kind

    def _exps(self, key) -> tuple:
        names = (key,) if isinstance(key, str) else tuple(key)
        e = [0] * len(self.vars)
        for n in names:
            if n not in self.generators:
                raise ValueError(f"unknown generator {n!r}")
            e[self.vars.index(n)] += 1
        if sum(e[i] * self.weights[i] for i in range(len(e))) != TOP:
            raise ValueError(f"{key!r} is not a top-codimension monomial")
        return tuple(e)

    def element(self, terms: dict) -> TruncSeries:
        """Build a class from {monomial: coefficient}; monomial is (), a name or a tuple of names."""
        out = {}
        for key, c in terms.items():
            names = () if key in ((), 1, "1") else ((key,) if isinstance(key, str) else tuple(key))
            e = [0] * len(self.vars)
            for n in names:
                e[self.vars.index(n)] += 1
            e = tuple(e)
            if sum(a * w for a, w in zip(e, self.weights)) > TOP:
                raise DegreeOverflow(f"{key!r} exceeds codimension {TOP}")
            out[e] = out.get(e, QEPS.zero) + _qeps(c)
        return TruncSeries(QEPS, self.vars, out, None, self.weights)

    def check(self, x: TruncSeries) -> TruncSeries:
        if x.vars != self.vars or x.weights != self.weights:
            raise ValueError("class does not belong to this model")
        if x.bound is None and x.degree() > TOP:
            raise DegreeOverflow(f"class has codimension {x.degree()} > {TOP}")
        return x

    def mul(self, x: TruncSeries, y: TruncSeries) -> TruncSeries:
        return (self.check(x) * self.check(y)).truncate(TOP)

    def tdeg(self, x: TruncSeries):
        """Quadratic degree of the top-codimension part of x."""
        total = QEPS.zero
        for e, c in self.check(x).homogeneous(TOP).terms.items():
            if e not in self.degrees:
                raise ValueError(f"no degree given for top monomial {e}")
            d = self.degrees[e]
            if self.kinds[e] == "motivic":
                total = total + H * (c.specialize("plus") / 2 * d.specialize("plus"))
            else:
                total = total + c * d
        return _gw(total)


def quadratic_euler_char_k3(r, deg_e):
    """2r(1 - eps) + tdeg(e) for a rank-2r symplectic bundle on a K3 surface."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return _gw(H * (2 * r) + _qeps(deg_e))


def quadratic_euler_char(form, dims, m: int = 1):
    """[H^n, phi_n] + sum_{i<n} (-1)^{m+i} dim H^i * (1 - eps)."""
    total = _qeps(form)
    for i, d in enumerate(dims):
        total = total + H * ((-1) ** (m + i) * d)
    return _gw(total)


def k3_model(deg_c2=24, deg_e=0) -> SurfaceModel:
    """Surface model with motivic c2 and a quadratic Euler class e."""
    return SurfaceModel({"c2": 2, "e": 2}, {"c2": deg_c2, "e": deg_e},
                        {"c2": "motivic", "e": "quadratic"})


def k3_todd_class(model: SurfaceModel | None = None, c2: str = "c2") -> TruncSeries:
    """Todd class of a K3 tangent bundle, assembled from its motivic and Witt halves.

    The motivic half inverts the series in c2; the Witt half is a series in
    the Euler class, whose square already vanishes on a surface.  The two
    halves are glued with the idempotents (1 - eps)/2 and (1 + eps)/2.
    """
    model = model or k3_model()
    motivic = borel_todd_M(1).reciprocal()  # through c2^1 = codimension 2
    witt = borel_todd_W(1).reciprocal()  # x has codimension 2, x^2 = 0
    minus_idem = (1 - EPS) * Fraction(1, 2)
    plus_idem = (1 + EPS) * Fraction(1, 2)
    terms = {(): minus_idem * motivic.coefficient((0,)) + plus_idem * witt.coefficient((0,))}
    terms[c2] = minus_idem * motivic.coefficient((1,))
    if witt.coefficient((1,)):
        raise AssertionError("the Witt Todd series has no linear term")
    return model.element(terms)


def hrr_surface(model: SurfaceModel, r, e_class: TruncSeries, todd_class: TruncSeries):
    """tdeg(todd_class * (2r + e_class))."""
    bo = model.element({(): 2 * r}) + model.check(e_class)
    return model.tdeg(model.mul(model.check(todd_class), bo))


__all__ = ["DegreeOverflow", "SurfaceModel", "quadratic_euler_char_k3", "quadratic_euler_char",
           "k3_model", "k3_todd_class", "hrr_surface"]
