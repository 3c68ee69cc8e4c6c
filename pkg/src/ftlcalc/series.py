"""Truncated multivariate series, (n,d)-series and root substitution.

Monomials are stored as packed integers: exponent ``e_i`` of variable ``i``
sits in a 16-bit field at bit ``16*i`` and the weighted degree occupies the
bits above all exponent fields.  Adding two packed keys multiplies the
monomials and adds their degrees, and sorting keys sorts by degree first.
The public interface only ever shows exponent tuples.

A ``bound`` of ``None`` means the series is exact (a polynomial).  Otherwise
every term of weighted degree ``<= bound`` is known and nothing above it is.
Products are valuation aware: if ``P`` is known to degree ``bP`` and ``Q`` to
``bQ``, then ``PQ`` is known to ``min(bP + val Q, bQ + val P)``.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left
from fractions import Fraction
from functools import lru_cache

from .rings import NotInvertible, Ring

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1
_MAX_DEG = (1 << (_SHIFT - 1)) - 1


class SeriesError(ArithmeticError):
    pass


class VariableMismatch(SeriesError, ValueError):
    pass


class NotComposable(SeriesError):
    pass


class NotSymmetric(SeriesError):
    pass


class PrecisionError(SeriesError):
    pass


class BeyondPrecision(PrecisionError, LookupError):
    """Raised when a coefficient above the truncation bound is requested."""


class _Codec:
    __slots__ = ("n", "w", "dshift", "fmask", "unit")

    def __init__(self, n: int, weights: tuple):
        self.n = n
        self.w = weights
        self.dshift = _SHIFT * n
        self.fmask = (1 << self.dshift) - 1
        self.unit = tuple((1 << (_SHIFT * i)) | (weights[i] << self.dshift) for i in range(n))

    def pack(self, exps) -> int:
        if len(exps) != self.n:
            raise VariableMismatch(f"monomial {tuple(exps)} has {len(exps)} exponents, expected {self.n}")
        key = 0
        deg = 0
        for i, e in enumerate(exps):
            if e < 0:
                raise ValueError(f"negative exponent in {tuple(exps)}")
            key |= e << (_SHIFT * i)
            deg += self.w[i] * e
        if deg > _MAX_DEG:
            raise OverflowError("monomial degree too large")
        return key | (deg << self.dshift)

    def unpack(self, key: int) -> tuple:
        return tuple((key >> (_SHIFT * i)) & _MASK for i in range(self.n))

    def degree(self, key: int) -> int:
        return key >> self.dshift

    def exponent(self, key: int, i: int) -> int:
        return (key >> (_SHIFT * i)) & _MASK


@lru_cache(maxsize=None)
def _codec(n: int, weights: tuple) -> _Codec:
    return _Codec(n, weights)


def _min_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _mul_dicts(ta: dict, tb: dict, bound, dshift: int) -> dict:
    if len(ta) > len(tb):
        ta, tb = tb, ta
    out = {}
    get = out.get
    if bound is None:
        items_b = list(tb.items())
        for ka, ca in ta.items():
            for kb, cb in items_b:
                k = ka + kb
                p = ca * cb
                s = get(k)
                out[k] = p if s is None else s + p
    else:
        keys_b = sorted(tb)
        vals_b = [tb[k] for k in keys_b]
        for ka, ca in ta.items():
            room = bound - (ka >> dshift)
            if room < 0:
                continue
            stop = bisect_left(keys_b, (room + 1) << dshift)
            for idx in range(stop):
                k = ka + keys_b[idx]
                p = ca * vals_b[idx]
                s = get(k)
                out[k] = p if s is None else s + p
    return {k: v for k, v in out.items() if v}


class TruncSeries:
    """Multivariate series with exact coefficients, optionally truncated.

    ``terms`` maps exponent tuples to ring elements.  ``weights`` gives each
    variable's degree (default 1); ``bound`` limits the weighted degree.
    """

    __slots__ = ("ring", "vars", "weights", "bound", "_t", "_c")

    def __init__(self, ring: Ring, vars, terms=None, bound=None, weights=None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise VariableMismatch(f"repeated variable names in {vars}")
        weights = tuple(weights) if weights is not None else (1,) * len(vars)
        if len(weights) != len(vars) or any(w < 1 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        self.ring = ring
        self.vars = vars
        self.weights = weights
        self.bound = bound
        self._c = _codec(len(vars), weights)
        t = {}
        for exps, c in (terms or {}).items():
            c = ring.coerce(c)
            if not c:
                continue
            key = self._c.pack(exps)
            if bound is not None and (key >> self._c.dshift) > bound:
                continue
            if key in t:
                raise ValueError(f"duplicate monomial {exps}")
            t[key] = c
        self._t = t

    @classmethod
    def _raw(cls, ring, vars, weights, bound, t, codec=None):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.vars = vars
        obj.weights = weights
        obj.bound = bound
        obj._c = codec or _codec(len(vars), weights)
        obj._t = t
        return obj

    def _like(self, t, bound="same"):
        return TruncSeries._raw(self.ring, self.vars, self.weights,
                                self.bound if bound == "same" else bound, t, self._c)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring, vars, bound=None, weights=None):
        return cls(ring, vars, {}, bound, weights)

    @classmethod
    def constant(cls, ring, vars, c, bound=None, weights=None):
        return cls(ring, vars, {(0,) * len(tuple(vars)): c}, bound, weights)

    @classmethod
    def variable(cls, ring, vars, name, bound=None, weights=None):
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatch(f"{name!r} is not one of {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(ring, vars, {exps: 1}, bound, weights)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        unpack = self._c.unpack
        return {unpack(k): v for k, v in self._t.items()}

    def items(self):
        """Terms sorted by degree, then exponent tuples in descending order."""
        unpack = self._c.unpack
        ds = self._c.dshift
        rows = [(k >> ds, unpack(k), v) for k, v in self._t.items()]
        rows.sort(key=lambda r: (r[0], tuple(-e for e in r[1])))
        return [(e, v) for _, e, v in rows]

    def __len__(self):
        return len(self._t)

    @property
    def is_exact(self) -> bool:
        return self.bound is None

    def is_zero(self) -> bool:
        return not self._t

    def degree(self):
        """Largest weighted degree of a stored term (-1 for the zero series)."""
        return max(self._t) >> self._c.dshift if self._t else -1

    def valuation(self):
        """Smallest weighted degree of a stored term.

        For a series with no known nonzero terms this is ``bound + 1`` (or
        ``None`` when the series is exactly zero).
        """
        if self._t:
            return min(self._t) >> self._c.dshift
        return None if self.bound is None else self.bound + 1

    def coefficient(self, exps):
        key = self._c.pack(exps)
        if self.bound is not None and (key >> self._c.dshift) > self.bound:
            raise BeyondPrecision(f"monomial {tuple(exps)} lies beyond the truncation bound {self.bound}")
        return self._t.get(key, self.ring.zero)

    def constant_term(self):
        return self._t.get(0, self.ring.zero) if self.bound is None or self.bound >= 0 else None

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.vars != self.vars or other.weights != self.weights:
            raise VariableMismatch(f"variables {self.vars} and {other.vars} differ")

    # -- arithmetic ----------------------------------------------------------

    def _scalar(self, c):
        return TruncSeries.constant(self.ring, self.vars, c, self.bound, self.weights)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._scalar(other)
        self._check(other)
        bound = _min_bound(self.bound, other.bound)
        t = dict(self._t)
        for k, v in other._t.items():
            s = t.get(k)
            s = v if s is None else s + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return self._like(t, bound).truncate(bound)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        va, vb = self.valuation(), other.valuation()
        bound = None
        if self.bound is not None and vb is not None:
            bound = self.bound + vb
        if other.bound is not None and va is not None:
            b2 = other.bound + va
            bound = b2 if bound is None else min(bound, b2)
        if va is None or vb is None:
            # an exactly zero factor
            return self._like({}, bound)
        if bound is None and self.degree() + other.degree() > _MAX_DEG:
            raise OverflowError("product degree too large")
        return self._like(_mul_dicts(self._t, other._t, bound, self._c.dshift), bound)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.ring.coerce(c) if not isinstance(c, int) else c
        if not c:
            return self._like({})
        return self._like({k: v * c for k, v in self._t.items() if v * c})

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        out = self._scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def truncate(self, bound):
        if bound is None:
            return self
        if self.bound is not None and bound > self.bound:
            raise PrecisionError(f"cannot raise the truncation bound from {self.bound} to {bound}")
        ds = self._c.dshift
        return self._like({k: v for k, v in self._t.items() if (k >> ds) <= bound}, bound)

    def homogeneous(self, d: int):
        ds = self._c.dshift
        return self._like({k: v for k, v in self._t.items() if (k >> ds) == d}, None)

    def map_coeffs(self, f, ring: Ring):
        t = {}
        for k, v in self._t.items():
            w = ring.coerce(f(v))
            if w:
                t[k] = w
        return TruncSeries._raw(ring, self.vars, self.weights, self.bound, t, self._c)

    def specialize(self, sign: str):
        ring = self.ring.specialized_ring(sign)
        return self.map_coeffs(lambda c: self.ring.specialize(c, sign), ring)

    def reciprocal(self):
        """1/f for f with a unit constant term."""
        c0 = self._t.get(0)
        if c0 is None:
            raise NotInvertible("series with zero constant term is not invertible")
        inv0 = self.ring.inverse(c0)
        if self.bound is None and len(self._t) > 1:
            raise PrecisionError("the inverse of a non-constant polynomial needs a truncation bound")
        bound = self.bound
        if len(self._t) == 1:
            return self._like({0: inv0})
        # g = inv0 * sum (1 - inv0*f)^k
        u = self._scalar(1) - self.scale(inv0)
        out = self._scalar(1)
        power = self._scalar(1)
        for _ in range(bound):
            power = power * u
            if power.is_zero():
                break
            out = out + power
        return out.scale(inv0).truncate(bound)

    # -- variables -----------------------------------------------------------

    def embed(self, vars, weights=None):
        """Re-express in a larger (or reordered) variable list, by name."""
        vars = tuple(vars)
        weights = tuple(weights) if weights is not None else (1,) * len(vars)
        pos = []
        for i, v in enumerate(self.vars):
            if v not in vars:
                raise VariableMismatch(f"variable {v!r} is missing from {vars}")
            j = vars.index(v)
            if weights[j] != self.weights[i]:
                raise VariableMismatch(f"variable {v!r} changes weight")
            pos.append(j)
        codec = _codec(len(vars), weights)
        if pos == list(range(len(pos))) and len(vars) == len(self.vars):
            return TruncSeries._raw(self.ring, vars, weights, self.bound, dict(self._t), codec)
        src = self._c
        t = {}
        for k, v in self._t.items():
            nk = (k >> src.dshift) << codec.dshift
            for i, j in enumerate(pos):
                nk |= ((k >> (_SHIFT * i)) & _MASK) << (_SHIFT * j)
            t[nk] = v
        return TruncSeries._raw(self.ring, vars, weights, self.bound, t, codec)

    def rename(self, mapping: dict):
        vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(vars)) != len(vars):
            raise VariableMismatch(f"renaming produces repeated names {vars}")
        return TruncSeries._raw(self.ring, vars, self.weights, self.bound, dict(self._t), self._c)

    def scale_var(self, name: str, c):
        """Substitute ``name -> c*name`` for a ring scalar c."""
        i = self.vars.index(name)
        powers = [self.ring.one]
        t = {}
        for k, v in self._t.items():
            e = (k >> (_SHIFT * i)) & _MASK
            while len(powers) <= e:
                powers.append(powers[-1] * c)
            w = v * powers[e]
            if w:
                t[k] = w
        return self._like(t)

    def set_zero(self, name: str):
        """Substitute ``name -> 0`` (the variable stays in the variable list)."""
        i = self.vars.index(name)
        return self._like({k: v for k, v in self._t.items() if not (k >> (_SHIFT * i)) & _MASK})

    def exponent_split(self, name: str):
        """Map e -> coefficient of name^e (with name set to 0)."""
        i = self.vars.index(name)
        out = {}
        sh = _SHIFT * i
        w = self.weights[i]
        ds = self._c.dshift
        for k, v in self._t.items():
            e = (k >> sh) & _MASK
            nk = k - (e << sh) - ((e * w) << ds)
            out.setdefault(e, {})[nk] = v
        return out

    def compose(self, mapping: dict, vars=None, weights=None):
        """Substitute variables by series.

        ``mapping`` sends some variable names to TruncSeries over the target
        variables ``vars`` (default: the own variables); unmapped variables
        must exist in the target and are kept.
        """
        vars = tuple(vars) if vars is not None else self.vars
        if weights is None:
            g0 = next(iter(mapping.values()), None)
            weights = g0.weights if g0 is not None and g0.vars == vars else (1,) * len(vars)
        weights = tuple(weights)
        images = []
        ratio = None
        for i, v in enumerate(self.vars):
            if v in mapping:
                g = mapping[v]
                if g.vars != vars or g.weights != weights:
                    g = g.embed(vars, weights)
                val = g.valuation()
            else:
                g = TruncSeries.variable(self.ring, vars, v, None, weights)
                val = weights[vars.index(v)]
            if val is not None:
                r = Fraction(val, self.weights[i])
                ratio = r if ratio is None else min(ratio, r)
            images.append(g)
        out_bound = None
        if self.bound is not None:
            # unknown terms have degree > bound and land in degree >= (bound+1)*ratio
            out_bound = _MAX_DEG if ratio is None else -(-((self.bound + 1) * ratio) // 1) - 1
        cache = {}

        def power(i, e):
            key = (i, e)
            p = cache.get(key)
            if p is None:
                p = images[i] if e == 1 else power(i, e - 1) * images[i]
                cache[key] = p
            return p

        acc = TruncSeries._raw(self.ring, vars, weights, None, {})
        one = TruncSeries.constant(self.ring, vars, 1, None, weights)
        for exps, c in self.terms.items():
            term = one
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            acc = acc + term.scale(c)
        if out_bound is not None:
            acc = acc.truncate(out_bound if acc.bound is None else min(out_bound, acc.bound))
        return acc

    def is_symmetric(self, names) -> bool:
        idx = [self.vars.index(n) for n in names]
        if len(idx) < 2:
            return True
        swap = {idx[0]: idx[1], idx[1]: idx[0]}
        cycle = {a: b for a, b in zip(idx, idx[1:] + idx[:1])}
        terms = self.terms
        for exps, c in terms.items():
            for perm in (swap, cycle):
                e = list(exps)
                for a, b in perm.items():
                    e[b] = exps[a]
                if terms.get(tuple(e)) != c:
                    return False
        return True

    # -- comparison and display --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            if isinstance(other, (int, Fraction)):
                other = self._scalar(other)
            else:
                return NotImplemented
        if other.vars != self.vars or other.weights != self.weights:
            return False
        b = _min_bound(self.bound, other.bound)
        if b is None:
            return self._t == other._t
        return self.truncate(b)._t == other.truncate(b)._t

    def __hash__(self):
        return hash((self.vars, frozenset(self._t.items())))

    def __repr__(self):
        return f"TruncSeries({self.ring.tag}, {self.vars}, {self}, bound={self.bound})"

    def __str__(self):
        return render(self)

    def differences(self, other, limit=None):
        """Monomials (as tuples) where two series differ, up to the common bound."""
        self._check(other)
        b = _min_bound(self.bound, other.bound)
        a, c = self.truncate(b)._t, other.truncate(b)._t
        diff = [k for k in set(a) | set(c) if a.get(k) != c.get(k)]
        diff.sort()
        if limit is not None:
            diff = diff[:limit]
        return [self._c.unpack(k) for k in diff]


def format_monomial(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _format_term(ring, c, mono: str) -> str:
    s = ring.fmt(c)
    compound = any(op in s[1:] for op in (" + ", " - "))
    if not mono:
        return s
    if compound:
        return f"({s})*{mono}"
    if s == "1":
        return mono
    if s == "-1":
        return "-" + mono
    return f"{s}*{mono}"


def render(f: TruncSeries) -> str:
    items = [_format_term(f.ring, c, format_monomial(f.vars, e)) for e, c in f.items()]
    if not items:
        out = "0"
    else:
        out = items[0]
        for s in items[1:]:
            out += (" - " + s[1:]) if s.startswith("-") else (" + " + s)
    if f.bound is not None:
        out += f" + O({f.bound + 1})"
    return out


# ---------------------------------------------------------------------------
# elementary symmetric rewriting


@lru_cache(maxsize=None)
def _elementary(m: int, s: int) -> dict:
    out = {}
    for combo in itertools.combinations(range(m), s):
        e = [0] * m
        for i in combo:
            e[i] = 1
        out[tuple(e)] = 1
    return out


def _mul_tuple_dicts(a: dict, b: dict) -> dict:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _e_power(m: int, alpha: tuple) -> dict:
    """prod e_s^alpha_s expanded in m roots (integer coefficients)."""
    if not any(alpha):
        return {(0,) * m: 1}
    s = max(i for i, a in enumerate(alpha) if a)
    rest = list(alpha)
    rest[s] -= 1
    return _mul_tuple_dicts(_e_power(m, tuple(rest)), _elementary(m, s + 1))


def _grlex(e):
    return (sum(e), e)


def _reduce_symmetric(poly: dict, m: int, zero) -> dict:
    """Rewrite a symmetric polynomial (dict root-exponents -> coeff) in e_1..e_m.

    Returns a dict alpha -> coefficient.
    """
    poly = {k: v for k, v in poly.items() if v}
    out = {}
    while poly:
        lead = max(poly, key=_grlex)
        c = poly[lead]
        if any(lead[i] < lead[i + 1] for i in range(m - 1)):
            raise NotSymmetric(f"leading root exponent {lead} is not a partition")
        alpha = tuple(lead[i] - (lead[i + 1] if i + 1 < m else 0) for i in range(m))
        out[alpha] = c
        for k, n in _e_power(m, alpha).items():
            s = poly.get(k, zero) - c * n
            if s:
                poly[k] = s
            else:
                poly.pop(k, None)
    return out


@lru_cache(maxsize=None)
def monomial_symmetric_in_elementary(m: int, lam: tuple) -> tuple:
    """m_lambda in m roots as integer polynomial in e_1..e_m: tuple of (alpha, coeff)."""
    lam = tuple(lam) + (0,) * (m - len(lam))
    poly = {p: 1 for p in set(itertools.permutations(lam))}
    red = _reduce_symmetric(poly, m, 0)
    return tuple(sorted(red.items()))


def sym_to_elementary(p: TruncSeries, roots, names=None) -> TruncSeries:
    """Rewrite ``p``, symmetric in the ``roots`` variables, in elementary symmetric functions.

    The result lives in variables ``names`` (default ``e1..em``, of weights
    ``w*1..w*m`` where w is the common root weight) followed by the spectator
    variables of ``p`` in their original order.
    """
    roots = tuple(roots)
    m = len(roots)
    if m == 0:
        return p
    for r in roots:
        if r not in p.vars:
            raise VariableMismatch(f"root {r!r} is not a variable of the series")
    ridx = [p.vars.index(r) for r in roots]
    rw = {p.weights[i] for i in ridx}
    if len(rw) != 1:
        raise VariableMismatch("root variables must share a weight")
    w = rw.pop()
    if not p.is_symmetric(roots):
        raise NotSymmetric(f"series is not symmetric in {roots}")
    names = tuple(names) if names is not None else tuple(f"e{s}" for s in range(1, m + 1))
    if len(names) != m:
        raise ValueError("need one name per root")
    sidx = [i for i in range(len(p.vars)) if i not in ridx]
    spect = tuple(p.vars[i] for i in sidx)
    out_vars = names + spect
    out_w = tuple(w * s for s in range(1, m + 1)) + tuple(p.weights[i] for i in sidx)
    if set(names) & set(spect):
        raise VariableMismatch(f"names {names} clash with spectator variables")
    groups = {}
    for exps, c in p.terms.items():
        key = tuple(exps[i] for i in sidx)
        groups.setdefault(key, {})[tuple(exps[i] for i in ridx)] = c
    terms = {}
    zero = p.ring.zero
    for skey, poly in groups.items():
        for alpha, c in _reduce_symmetric(poly, m, zero).items():
            terms[alpha + skey] = c
    return TruncSeries(p.ring, out_vars, terms, p.bound, out_w)


def elementary_expand(q: TruncSeries, roots, names=None) -> TruncSeries:
    """Inverse of sym_to_elementary: substitute e_s by the elementary polynomials in ``roots``."""
    roots = tuple(roots)
    m = len(roots)
    names = tuple(names) if names is not None else tuple(f"e{s}" for s in range(1, m + 1))
    spect = tuple(v for v in q.vars if v not in names)
    out_vars = roots + spect
    w = q.weights[q.vars.index(names[0])]
    out_w = (w,) * m + tuple(q.weights[q.vars.index(v)] for v in spect)
    eidx = [q.vars.index(n) for n in names]
    sidx = [q.vars.index(v) for v in spect]
    terms = {}
    for exps, c in q.terms.items():
        alpha = tuple(exps[i] for i in eidx)
        tail = tuple(exps[i] for i in sidx)
        for r, n in _e_power(m, alpha).items():
            k = r + tail
            s = terms.get(k, q.ring.zero) + c * n
            terms[k] = s
    return TruncSeries(q.ring, out_vars, terms, q.bound, out_w)


# ---------------------------------------------------------------------------
# one-variable series


def _check_univariate(f: TruncSeries):
    if len(f.vars) != 1:
        raise VariableMismatch(f"expected a one-variable series, got variables {f.vars}")


def compose1(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """g(f(x)) for one-variable series; f must have zero constant term."""
    _check_univariate(f)
    _check_univariate(g)
    if f._t.get(0):
        raise NotComposable("inner series has a nonzero constant term")
    return g.compose({g.vars[0]: f}, f.vars)


def revert(f: TruncSeries, bound=None) -> TruncSeries:
    """Compositional inverse of f = u x + ..., u a unit, to the given bound."""
    _check_univariate(f)
    if bound is None:
        bound = f.bound
    if bound is None and f.degree() > 1:
        raise PrecisionError("reverting a nonlinear polynomial needs a bound")
    if f.bound is not None and bound > f.bound:
        raise PrecisionError(f"cannot revert to bound {bound} from a series known to {f.bound}")
    if f._t.get(0):
        raise NotComposable("series has a nonzero constant term")
    ring = f.ring
    u = f.coefficient((1,))
    try:
        uinv = ring.inverse(u)
    except NotInvertible:
        raise NotInvertible(f"linear coefficient {ring.fmt(u)} is not a unit") from None
    x = f.vars[0]
    if bound is None:
        return TruncSeries(ring, (x,), {(1,): uinv})
    f = f.truncate(bound) if f.bound is not None else TruncSeries(ring, f.vars, f.terms, bound)
    g = TruncSeries(ring, (x,), {(1,): uinv}, bound)
    # fixed point g <- g - u^{-1} (f(g) - x), one new degree per step
    ident = TruncSeries.variable(ring, (x,), x, bound)
    for _ in range(bound):
        err = compose1(g, f) - ident
        if err.is_zero():
            break
        g = g - err.scale(uinv)
    return g


def series_from_coeffs(ring, var, coeffs, bound=None) -> TruncSeries:
    """Build sum coeffs[i] * var^i."""
    return TruncSeries(ring, (var,), {(i,): c for i, c in enumerate(coeffs) if c}, bound)


# ---------------------------------------------------------------------------
# (n,d)-series


class NDSeries:
    """Series ``F_0 + F_1 t + ... + F_n t^n`` with TruncSeries coefficients.

    ``coeffs`` includes ``F_0``.  Variables are unweighted.  When truncated,
    the ``t^l`` coefficient is normally known to variable degree ``N + l``,
    which is filtration degree ``N`` (t counts as degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("an (n,d)-series needs at least F_0")
        v0 = coeffs[0].vars
        for c in coeffs:
            if c.vars != v0 or c.ring is not coeffs[0].ring or any(w != 1 for w in c.weights):
                raise VariableMismatch("all coefficients need the same unweighted variables and ring")
        while len(coeffs) > 1 and coeffs[-1].is_zero() and coeffs[-1].bound is None:
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def ring(self):
        return self.coeffs[0].ring

    @property
    def vars(self):
        return self.coeffs[0].vars

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def d(self) -> int:
        return len(self.vars)

    def __getitem__(self, l: int) -> TruncSeries:
        if 0 <= l < len(self.coeffs):
            return self.coeffs[l]
        return TruncSeries.zero(self.ring, self.vars)

    @property
    def is_exact(self) -> bool:
        return all(c.bound is None for c in self.coeffs)

    @property
    def composable(self) -> bool:
        f0 = self.coeffs[0]
        if f0 != TruncSeries.constant(self.ring, self.vars, 1):
            return False
        return all(not c._t.get(0) for c in self.coeffs[1:])

    def filtration_precision(self):
        bs = [c.bound - l for l, c in enumerate(self.coeffs) if c.bound is not None]
        return min(bs) if bs else None

    def filtration_valuation(self):
        vals = [c.valuation() - l for l, c in enumerate(self.coeffs)
                if c.valuation() is not None]
        return min(vals) if vals else None

    def truncate(self, N):
        """Truncate to filtration degree N."""
        if N is None:
            return self
        return NDSeries([c.truncate(N + l) for l, c in enumerate(self.coeffs)])

    def coefficient_of(self, exps, l: int):
        if l < 0:
            raise ValueError("negative t-power")
        if l > self.n:
            return self.ring.zero
        return self.coeffs[l].coefficient(exps)

    def __add__(self, other):
        n = max(self.n, other.n)
        return NDSeries([self[l] + other[l] for l in range(n + 1)])

    def __neg__(self):
        return NDSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NDSeries):
            return NDSeries([c.scale(other) for c in self.coeffs])
        if other.vars != self.vars:
            raise VariableMismatch(f"variables {self.vars} and {other.vars} differ")
        out = []
        for L in range(self.n + other.n + 1):
            acc = None
            for l in range(max(0, L - other.n), min(L, self.n) + 1):
                p = self.coeffs[l] * other.coeffs[L - l]
                acc = p if acc is None else acc + p
            out.append(acc)
        return NDSeries(out)

    def scale_t(self, c):
        """F_{c t}."""
        out = []
        power = self.ring.one
        for f in self.coeffs:
            out.append(f.scale(power))
            power = power * c
        return NDSeries(out)

    def scale_var(self, name, c):
        return NDSeries([f.scale_var(name, c) for f in self.coeffs])

    def set_zero(self, name):
        return NDSeries([f.set_zero(name) for f in self.coeffs])

    def map(self, fn):
        return NDSeries([fn(f) for f in self.coeffs])

    def specialize(self, sign):
        return NDSeries([f.specialize(sign) for f in self.coeffs])

    def embed(self, vars):
        return NDSeries([f.embed(vars) for f in self.coeffs])

    def rename(self, mapping):
        return NDSeries([f.rename(mapping) for f in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, NDSeries):
            return NotImplemented
        if other.vars != self.vars:
            return False
        n = max(self.n, other.n)
        return all(self[l] == other[l] for l in range(n + 1))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def differences(self, other, limit=None):
        out = []
        for l in range(max(self.n, other.n) + 1):
            out.extend((l, e) for e in self[l].differences(other[l]))
        out.sort()
        return out[:limit] if limit is not None else out

    def __repr__(self):
        return f"NDSeries(n={self.n}, vars={self.vars})"

    def render_lines(self):
        return [f"F{l} = {render(c)}" for l, c in enumerate(self.coeffs)]

    def __str__(self):
        return "\n".join(self.render_lines())


def coefficient_of(F, exps, l: int = 0):
    """Coefficient of a monomial (and t-power for (n,d)-series).

    Raises BeyondPrecision past the truncation bound.
    """
    if isinstance(F, NDSeries):
        return F.coefficient_of(tuple(exps), l)
    if l:
        raise ValueError("a plain series has no t-powers")
    return F.coefficient(tuple(exps))


def split_roots_product(F: NDSeries, slot: int, roots) -> NDSeries:
    """prod over the given root series r of F(..., r, ...), by direct multiplication.

    ``roots`` are TruncSeries in the output variables of the substitution.
    Used as an independent check of ``substitute``.
    """
    out_vars = roots[0].vars
    name = F.vars[slot]
    others = [v for v in F.vars if v != name]
    for v in others:
        if v not in out_vars:
            raise VariableMismatch(f"variable {v!r} missing from {out_vars}")
    acc = None
    for r in roots:
        fac = NDSeries([c.compose({name: r}, out_vars) for c in F.coeffs])
        acc = fac if acc is None else acc * fac
    return acc


def substitute(F: NDSeries, slot: int, G: NDSeries, bound=None) -> NDSeries:
    """Substitute the composable (m,r)-series G into variable ``slot`` of F.

    The result is the (n*m, d+r-1)-series prod_l F(..., G^[l], ...) over the
    roots of G, in variables ``F.vars[:slot] + G.vars + F.vars[slot+1:]``.
    Exact when both inputs are exact; otherwise it is computed to filtration
    degree ``min(bound, precision of F, precision of G)``, which requires both
    inputs to have non-negative filtration.
    """
    if not isinstance(slot, int) or not 0 <= slot < F.d:
        raise VariableMismatch(f"slot {slot} out of range for {F.d} variables")
    if not G.composable:
        raise NotComposable("substituted series must have constant term 1 and F_i(0) = 0")
    if F.ring is not G.ring:
        raise VariableMismatch(f"rings {F.ring.tag} and {G.ring.tag} differ")
    name = F.vars[slot]
    others = F.vars[:slot] + F.vars[slot + 1:]
    out_vars = F.vars[:slot] + G.vars + F.vars[slot + 1:]
    if len(set(out_vars)) != len(out_vars):
        raise VariableMismatch(f"variables of G {G.vars} clash with {others}")
    ring = F.ring
    m = G.n
    exact = F.is_exact and G.is_exact and bound is None
    N = None
    if not exact:
        for S in (F, G):
            v = S.filtration_valuation()
            if v is not None and v < 0:
                raise PrecisionError("truncated substitution needs series of non-negative filtration")
        precs = [p for p in (F.filtration_precision(), G.filtration_precision(), bound) if p is not None]
        N = min(precs)
        F = F.truncate(N)
        G = G.truncate(N)
    if m == 0:
        return NDSeries([TruncSeries.constant(ring, out_vars, 1, None if exact else N)])
    codec = _codec(len(out_vars), (1,) * len(out_vars))
    ds = codec.dshift

    # F = sum_i X^i A_i with A_i an NDSeries in the other variables
    A = {}
    nF = F.n
    for l, f in enumerate(F.coeffs):
        for i, t in f.exponent_split(name).items():
            A.setdefault(i, [None] * (nF + 1))[l] = t
    if 0 not in A:
        A[0] = [None] * (nF + 1)
    if N is None:
        maxi = max(A)
    else:
        maxi = N + nF
    a_series = {}
    a_filt = {}
    for i in range(maxi + 1):
        rows = A.get(i, [None] * (nF + 1))
        ser = []
        filt = None
        for l in range(nF + 1):
            t = rows[l]
            b = None if exact else F.coeffs[l].bound - i
            ts = TruncSeries._raw(ring, F.vars, F.coeffs[0].weights, b, t or {})
            ts = _drop_var(ts, slot, others)
            ts = ts.embed(out_vars)
            ser.append(ts)
            if t:
                fv = ts.valuation() + i - l
                filt = fv if filt is None else min(filt, fv)
            if b is not None:
                fv = b + 1 + i - l
                filt = fv if filt is None else min(filt, fv)
        if exact and all(s.is_zero() for s in ser):
            continue
        if filt is None:
            continue
        a_series[i] = ser
        a_filt[i] = filt
    parts = sorted(a_series)
    if 0 not in a_series:
        # F(0 in slot) vanishes identically; still need A_0 for padding
        a_series[0] = [TruncSeries._raw(ring, out_vars, (1,) * len(out_vars),
                                        None if exact else F.coeffs[l].bound, {}) for l in range(nF + 1)]
        a_filt[0] = 0 if exact else N + 1
        parts = sorted(a_series)

    Gs = [g.embed(out_vars) for g in G.coeffs]
    gpow = {(0,) * m: TruncSeries.constant(ring, out_vars, 1)}

    def g_power(alpha):
        p = gpow.get(alpha)
        if p is None:
            s = max(i for i, a in enumerate(alpha) if a)
            rest = list(alpha)
            rest[s] -= 1
            p = g_power(tuple(rest)) * Gs[s + 1]
            gpow[alpha] = p
        return p

    def nd_mul(P, Q):
        out = []
        for L in range(len(P) + len(Q) - 1):
            acc = None
            for l in range(max(0, L - len(Q) + 1), min(L, len(P) - 1) + 1):
                if P[l].is_zero() and P[l].bound is None or Q[L - l].is_zero() and Q[L - l].bound is None:
                    continue
                pr = P[l] * Q[L - l]
                acc = pr if acc is None else acc + pr
            if acc is None:
                acc = TruncSeries._raw(ring, out_vars, (1,) * len(out_vars), None, {})
            out.append(acc)
        return out

    a_prod = {(): [TruncSeries.constant(ring, out_vars, 1)]}

    def a_product(lam):
        p = a_prod.get(lam)
        if p is None:
            p = nd_mul(a_product(lam[:-1]), a_series[lam[-1]])
            a_prod[lam] = p
        return p

    total_n = nF * m
    result = [dict() for _ in range(total_n + 1)]
    for lam in _partitions(parts, m, a_filt, N):
        lam_desc = tuple(sorted(lam, reverse=True))
        P = None
        for alpha, c in monomial_symmetric_in_elementary(m, tuple(x for x in lam_desc if x)):
            term = g_power(alpha).scale(c)
            P = term if P is None else P + term
        if P is None or (P.is_zero() and P.bound is None):
            continue
        Al = a_product(tuple(sorted(lam)))
        for L, a in enumerate(Al):
            if a.is_zero():
                continue
            cap = None if exact else N + L
            pr = _mul_dicts(P._t, a._t, cap, ds)
            acc = result[L]
            for k, v in pr.items():
                s = acc.get(k)
                s = v if s is None else s + v
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
    coeffs = []
    for L in range(total_n + 1):
        b = None if exact else N + L
        coeffs.append(TruncSeries._raw(ring, out_vars, (1,) * len(out_vars), b,
                                       {k: v for k, v in result[L].items() if v}, codec))
    return NDSeries(coeffs)


def _drop_var(ts: TruncSeries, slot: int, others) -> TruncSeries:
    # the slot exponent is already 0 in every key
    vars = ts.vars
    src = _codec(len(vars), (1,) * len(vars))
    dst = _codec(len(others), (1,) * len(others))
    t = {}
    for k, v in ts._t.items():
        nk = (k >> src.dshift) << dst.dshift
        j = 0
        for i in range(len(vars)):
            if i == slot:
                continue
            nk |= ((k >> (_SHIFT * i)) & _MASK) << (_SHIFT * j)
            j += 1
        t[nk] = v
    return TruncSeries._raw(ts.ring, tuple(others), (1,) * len(others), ts.bound, t, dst)


def _partitions(parts, m, filt, N):
    """Multisets of size m drawn from ``parts`` (0 allowed), filtration sum <= N."""
    parts = sorted(parts)

    def rec(start, k, acc, fsum):
        if k == 0:
            yield tuple(acc)
            return
        for idx in range(start, len(parts)):
            p = parts[idx]
            f = fsum + filt[p]
            if N is not None and f + (k - 1) * min(filt[q] for q in parts[idx:]) > N:
                continue
            acc.append(p)
            yield from rec(idx, k - 1, acc, f)
            acc.pop()

    yield from rec(0, m, [], 0)
