"""Exact coefficient rings built around Z_eps = Z[eps]/(eps^2 - 1).

Elements are immutable value objects supporting ``+ - *`` and ``bool``.
Each ring has a descriptor (``ZEPS``, ``QEPS``, ``MUL`` ...) carrying the
operations that do not fit on elements: parsing symbols, specialization,
coordinates for linear solving, rendering.
"""

from __future__ import annotations

from fractions import Fraction

_MAX_GAMMA_EXP = 2**62


class RingError(ArithmeticError):
    pass


class NotInvertible(RingError):
    pass


class IllegalSymbol(RingError):
    pass


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ZEps:
    """a + b*eps with eps^2 = 1.  Entries are ints (or Fractions, see QEps)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a
        self.b = b

    def _new(self, other, a, b):
        if type(self) is QEps or type(other) is QEps:
            return QEps(a, b)
        return ZEps(a, b)

    @staticmethod
    def _coerce(x):
        if isinstance(x, ZEps):
            return x
        if _is_scalar(x):
            return ZEps(x, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(o, o.a - self.a, o.b - self.b)

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, ZEps):
            a, b, c, d = self.a, self.b, other.a, other.b
            return self._new(other, a * c + b * d, a * d + b * c)
        if _is_scalar(other):
            return type(self)(self.a * other, self.b * other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return type(self)(self.a * other, self.b * other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = type(self)(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    def __str__(self):
        return format_eps(self.a, self.b)

    def specialize(self, sign: str):
        """plus: eps -> -1, minus: eps -> +1."""
        if sign == "plus":
            return self.a - self.b
        if sign == "minus":
            return self.a + self.b
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")

    def conjugate(self):
        return type(self)(self.a, -self.b)

    def norm(self):
        return self.a * self.a - self.b * self.b

    def inverse(self):
        n = self.norm()
        if not n:
            raise NotInvertible(f"{self} is a zero divisor")
        if type(self) is ZEps:
            if n not in (1, -1):
                raise NotInvertible(f"{self} is not a unit of Z_eps")
            return ZEps(self.a * n, -self.b * n)
        return QEps(Fraction(self.a) / n, Fraction(-self.b) / n)

    def rationalize(self):
        return QEps(self.a, self.b)

    @property
    def degree(self):
        return 0 if self else None


class QEps(ZEps):
    """a + b*eps with rational entries."""

    __slots__ = ()

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)


EPS = ZEps(0, 1)
H = ZEps(1, -1)


def format_eps(a, b) -> str:
    if not b:
        return _fmt_num(a)
    if not a:
        return _fmt_coef(b, "eps")
    tail = _fmt_coef(abs(b), "eps")
    return f"{_fmt_num(a)} {'-' if b < 0 else '+'} {tail}"


def _fmt_num(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _fmt_coef(c, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{_fmt_num(c)}*{sym}"


def _gamma_pow(k: int) -> str:
    return "gamma" if k == 1 else f"gamma^{k}"


def _check_exp(k: int) -> int:
    if not -_MAX_GAMMA_EXP <= k <= _MAX_GAMMA_EXP:
        raise OverflowError(f"gamma exponent {k} out of range")
    return k


class MulRingElem:
    """Element of Z_eps[tau, gamma^{+-1}] / (tau^2 - 2(1-eps)gamma, (1+eps)tau).

    ``even`` maps k to the ZEps coefficient of gamma^k; ``odd`` maps k to the
    integer coefficient c of c*tau*gamma^k (eps acts as -1 there).
    """

    __slots__ = ("even", "odd")

    def __init__(self, even=None, odd=None):
        self.even = {k: v for k, v in (even or {}).items() if v}
        self.odd = {k: v for k, v in (odd or {}).items() if v}

    @classmethod
    def _raw(cls, even, odd):
        obj = cls.__new__(cls)
        obj.even = even
        obj.odd = odd
        return obj

    @classmethod
    def scalar(cls, x):
        if isinstance(x, ZEps):
            return cls._raw({0: x} if x else {}, {})
        return cls._raw({0: ZEps(x, 0)} if x else {}, {})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, MulRingElem):
            return x
        if isinstance(x, ZEps) or _is_scalar(x):
            return cls.scalar(x)
        return None

    def __add__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        even = dict(self.even)
        for k, v in o.even.items():
            s = even.get(k)
            s = v if s is None else s + v
            if s:
                even[k] = s
            else:
                even.pop(k, None)
        odd = dict(self.odd)
        for k, v in o.odd.items():
            s = odd.get(k, 0) + v
            if s:
                odd[k] = s
            else:
                odd.pop(k, None)
        return MulRingElem._raw(even, odd)

    __radd__ = __add__

    def __neg__(self):
        return MulRingElem._raw({k: -v for k, v in self.even.items()},
                                {k: -v for k, v in self.odd.items()})

    def __sub__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if not other:
                return MulRingElem._raw({}, {})
            return MulRingElem._raw({k: v * other for k, v in self.even.items()},
                                    {k: c * other for k, c in self.odd.items()})
        if isinstance(other, ZEps):
            return self * MulRingElem.scalar(other)
        if not isinstance(other, MulRingElem):
            return NotImplemented
        even = {}
        odd = {}
        se, so, oe, oo = self.even, self.odd, other.even, other.odd
        for k1, v1 in se.items():
            for k2, v2 in oe.items():
                k = k1 + k2
                p = v1 * v2
                s = even.get(k)
                even[k] = p if s is None else s + p
            # (a + b eps) * c tau = (a - b) c tau
            w1 = v1.a - v1.b
            if w1:
                for k2, c2 in oo.items():
                    k = k1 + k2
                    odd[k] = odd.get(k, 0) + w1 * c2
        for k1, c1 in so.items():
            for k2, v2 in oe.items():
                w2 = v2.a - v2.b
                if w2:
                    k = k1 + k2
                    odd[k] = odd.get(k, 0) + w2 * c1
            # tau^2 = 2(1 - eps) gamma
            for k2, c2 in oo.items():
                k = k1 + k2 + 1
                c = 2 * c1 * c2
                p = ZEps(c, -c)
                s = even.get(k)
                even[k] = p if s is None else s + p
        for k in even:
            _check_exp(k)
        return MulRingElem._raw({k: v for k, v in even.items() if v},
                                {k: v for k, v in odd.items() if v})

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, ZEps):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = MulRingElem.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.even) or bool(self.odd)

    def __eq__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return self.even == o.even and self.odd == o.odd

    def __hash__(self):
        return hash((tuple(sorted(self.even.items())), tuple(sorted(self.odd.items()))))

    def __repr__(self):
        return f"MulRingElem({self})"

    def __str__(self):
        return format_mul(self)

    def odd_part(self) -> "MulRingElem":
        return MulRingElem._raw({}, dict(self.odd))

    def even_part(self) -> "MulRingElem":
        return MulRingElem._raw(dict(self.even), {})

    def homogeneous_parts(self) -> dict:
        parts = {}
        for k, v in self.even.items():
            parts.setdefault(4 * k, MulRingElem._raw({}, {})).even[k] = v
        for k, c in self.odd.items():
            parts.setdefault(4 * k + 2, MulRingElem._raw({}, {})).odd[k] = c
        return parts

    @property
    def degree(self):
        """Homogeneous degree (deg tau = 2, deg gamma = 4), or None."""
        degs = {4 * k for k in self.even} | {4 * k + 2 for k in self.odd}
        return degs.pop() if len(degs) == 1 else None

    def inverse(self):
        if not self.odd and len(self.even) == 1:
            (k, v), = self.even.items()
            try:
                inv = v.inverse()
            except NotInvertible:
                raise NotInvertible(f"{self} is not a unit") from None
            return MulRingElem._raw({-k: inv}, {})
        raise NotInvertible(f"{self} is not a unit")

    def rationalize(self):
        return MulRingElem._raw({k: QEps(v.a, v.b) for k, v in self.even.items()},
                                {k: Fraction(c) for k, c in self.odd.items()})

    def specialize(self, sign: str):
        """Image in the rational plus part (eps=-1, tau^2=4 gamma) or minus part (eps=1, tau=0)."""
        if sign == "plus":
            out = {}
            for k, v in self.even.items():
                c = Fraction(v.a - v.b) / Fraction(4) ** k
                if c:
                    out[2 * k] = out.get(2 * k, 0) + c
            for k, c in self.odd.items():
                out[2 * k + 1] = out.get(2 * k + 1, 0) + Fraction(c) / Fraction(4) ** k
            return TauLaurent(out)
        if sign == "minus":
            return GammaLaurent({k: Fraction(v.a + v.b) for k, v in self.even.items()})
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")


TAU = MulRingElem._raw({}, {0: 1})
GAMMA = MulRingElem._raw({1: ZEps(1, 0)}, {})
GAMMA_INV = MulRingElem._raw({-1: ZEps(1, 0)}, {})


def format_mul(x: MulRingElem) -> str:
    items = []
    for k in sorted(set(x.even) | set(x.odd)):
        v = x.even.get(k)
        if v:
            if k == 0:
                items.append(format_eps(v.a, v.b))
            elif not v.a or not v.b:
                base = format_eps(v.a, v.b)
                if base == "1":
                    items.append(_gamma_pow(k))
                elif base == "-1":
                    items.append("-" + _gamma_pow(k))
                else:
                    items.append(f"{base}*{_gamma_pow(k)}")
            else:
                items.append(f"({format_eps(v.a, v.b)})*{_gamma_pow(k)}")
        c = x.odd.get(k)
        if c:
            s = _fmt_coef(c, "tau")
            items.append(s if k == 0 else f"{s}*{_gamma_pow(k)}")
    return join_terms(items)


def join_terms(items) -> str:
    if not items:
        return "0"
    out = items[0]
    for s in items[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


class _Laurent:
    """Laurent polynomial in one symbol with rational coefficients."""

    __slots__ = ("c",)
    symbol = "?"
    step = 1  # grading degree of the symbol

    def __init__(self, coeffs=None):
        self.c = {k: Fraction(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if _is_scalar(x):
            return cls._raw({0: Fraction(x)} if x else {})
        return None

    def __add__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self.c)
        for k, v in o.c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return self._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        c = {}
        for k1, v1 in self.c.items():
            for k2, v2 in o.c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + v1 * v2
        return self._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self._raw({0: Fraction(1)})
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        o = self.coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    @property
    def degree(self):
        degs = {self.step * k for k in self.c}
        return degs.pop() if len(degs) == 1 else None

    def inverse(self):
        if len(self.c) == 1:
            (k, v), = self.c.items()
            return self._raw({-k: 1 / v})
        raise NotInvertible(f"{self} is not a unit")

    def rationalize(self):
        return self


class TauLaurent(_Laurent):
    """Plus part over Q: Q[tau, gamma^{+-1}]/(tau^2 - 4 gamma), stored as Q[tau^{+-1}]."""

    __slots__ = ()
    symbol = "tau"
    step = 2

    def __str__(self):
        items = []
        for m in sorted(self.c, key=lambda m: (m // 2, m % 2)):
            k, r = divmod(m, 2)
            coef = self.c[m] * Fraction(4) ** k
            sym = "tau" if r else ""
            if k:
                sym = f"{sym}*{_gamma_pow(k)}" if sym else _gamma_pow(k)
            items.append(_fmt_coef(coef, sym) if sym else _fmt_num(coef))
        return join_terms(items)


class GammaLaurent(_Laurent):
    """Minus part over Q: Q[gamma^{+-1}] (tau is killed)."""

    __slots__ = ()
    symbol = "gamma"
    step = 4

    def __str__(self):
        items = []
        for k in sorted(self.c):
            v = self.c[k]
            items.append(_fmt_coef(v, _gamma_pow(k)) if k else _fmt_num(v))
        return join_terms(items)


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Descriptor for a coefficient ring; elements are plain Python objects."""

    tag = ""
    rational = False
    graded = False
    symbols: dict = {}

    def __repr__(self):
        return f"<ring {self.tag}>"

    def __reduce__(self):
        return (ring_from_tag, (self.tag,))

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, x) -> bool:
        return not x

    @property
    def eps(self):
        """The image of eps in this ring, or None if the ring does not carry one."""
        e = self.symbols.get("eps")
        return None if e is None else self.coerce(e)

    def degree(self, x):
        return 0 if x else None

    def inverse(self, x):
        return x.inverse()

    def fmt(self, x) -> str:
        return str(x)

    def specialize(self, x, sign):
        raise NotImplementedError

    def specialized_ring(self, sign) -> "Ring":
        raise NotImplementedError

    def rationalize(self, x):
        return x

    def rational_ring(self) -> "Ring":
        return self

    def coordinates(self, x) -> dict:
        """Q-coordinates of x in a fixed monomial basis."""
        raise NotImplementedError

    def solve_basis(self, degree: int | None) -> list:
        """Q-basis of the elements allowed as an unknown of the given degree."""
        raise NotImplementedError

    def sample(self, rng, size=3):
        raise NotImplementedError

    def homogeneous_images(self):
        """Homomorphisms ``[(target, hom), ...]`` jointly injective on each graded piece.

        Graded computations can run in the (faster) targets and be lifted
        back with ``from_images``.  ``None`` if the ring offers no such split.
        """
        return None

    def from_images(self, values, degree):
        raise NotImplementedError


class _NumberRing(Ring):
    def degree(self, x):
        return 0 if x else None

    def inverse(self, x):
        if not x:
            raise NotInvertible("zero is not invertible")
        if self.rational:
            return 1 / Fraction(x)
        if x in (1, -1):
            return x
        raise NotInvertible(f"{x} is not a unit of Z")

    def fmt(self, x):
        return _fmt_num(x)

    def coordinates(self, x):
        return {(): Fraction(x)} if x else {}

    def solve_basis(self, degree):
        return [self.one] if degree in (0, None) else []

    def specialize(self, x, sign):
        return x

    def specialized_ring(self, sign):
        return self

    def _scalar(self, x):
        if isinstance(x, ZEps):
            e = self.symbols.get("eps")
            if e is None:
                raise RingError(f"ring {self.tag!r} has no eps to map {x} into")
            return x.a + x.b * e
        return x

    def sample(self, rng, size=3):
        return self.coerce(rng.randint(-size, size))


class IntegerRing(_NumberRing):
    def __init__(self, tag="z", eps=None):
        self.tag = tag
        self.symbols = {} if eps is None else {"eps": eps, "h": 1 - eps}

    def coerce(self, x):
        x = self._scalar(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise RingError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def rationalize(self, x):
        return Fraction(x)

    def rational_ring(self):
        return {"z+": QQ_PLUS, "z-": WITT}.get(self.tag, QQ)


class RationalRing(_NumberRing):
    rational = True

    def __init__(self, tag="q", eps=None):
        self.tag = tag
        self.symbols = {} if eps is None else {"eps": eps, "h": 1 - eps}

    def coerce(self, x):
        return Fraction(self._scalar(x))

    def sample(self, rng, size=3):
        return Fraction(rng.randint(-size, size), rng.randint(1, 2))

    def integer_ring(self):
        return {"q+": ZZ_PLUS, "witt": ZZ_MINUS}.get(self.tag, ZZ)


def _eps_plus(x):
    return x.a - x.b if isinstance(x, ZEps) else x


def _eps_minus(x):
    return x.a + x.b if isinstance(x, ZEps) else x


class EpsRing(Ring):
    symbols = {"eps": EPS, "h": H}

    def __init__(self, rational: bool):
        self.rational = rational
        self.tag = "qeps" if rational else "zeps"

    def coerce(self, x):
        if isinstance(x, ZEps):
            return QEps(x.a, x.b) if self.rational else x
        if self.rational:
            return QEps(x, 0)
        if isinstance(x, Fraction):
            return ZEps(IntegerRing().coerce(x), 0)
        return ZEps(int(x), 0)

    def specialize(self, x, sign):
        return self.specialized_ring(sign).coerce(x.specialize(sign))

    def specialized_ring(self, sign):
        if not self.rational:
            return ZZ_PLUS if sign == "plus" else ZZ_MINUS
        return QQ_PLUS if sign == "plus" else WITT

    def rationalize(self, x):
        return QEps(x.a, x.b)

    def rational_ring(self):
        return QEPS

    def homogeneous_images(self):
        # Q_eps = Q x Q via eps -> -1 and eps -> 1 (injective on all of Z_eps)
        plus = QQ_PLUS if self.rational else ZZ_PLUS
        minus = WITT if self.rational else ZZ_MINUS
        return [(plus, _eps_plus), (minus, _eps_minus)]

    def from_images(self, values, degree=None):
        vp, vm = (Fraction(v) for v in values)
        a, b = (vp + vm) / 2, (vm - vp) / 2
        if self.rational:
            return QEps(a, b)
        if a.denominator != 1 or b.denominator != 1:
            raise RingError(f"images {values} lift to a non-integral element")
        return ZEps(int(a), int(b))

    def coordinates(self, x):
        out = {}
        if x.a:
            out["1"] = Fraction(x.a)
        if x.b:
            out["eps"] = Fraction(x.b)
        return out

    def solve_basis(self, degree):
        # Z_eps is concentrated in degree 0 but is also used ungraded.
        return [self.coerce(1), self.coerce(EPS)]

    def sample(self, rng, size=3):
        return self.coerce(ZEps(rng.randint(-size, size), rng.randint(-size, size)))


class MulRing(Ring):
    """Z_eps^mul, the coefficient ring of the multiplicative law."""

    graded = True
    symbols = {"eps": MulRingElem.scalar(EPS), "h": MulRingElem.scalar(H),
               "tau": TAU, "gamma": GAMMA}

    def __init__(self, rational: bool):
        self.rational = rational
        self.tag = "qmul" if rational else "mul"

    def coerce(self, x):
        if isinstance(x, MulRingElem):
            return x.rationalize() if self.rational else x
        if isinstance(x, ZEps):
            x = QEps(x.a, x.b) if self.rational else x
        elif self.rational:
            x = Fraction(x)
        elif isinstance(x, Fraction):
            x = IntegerRing().coerce(x)
        return MulRingElem.scalar(x)

    def degree(self, x):
        return x.degree

    def specialize(self, x, sign):
        return x.specialize(sign)

    def specialized_ring(self, sign):
        return MUL_PLUS if sign == "plus" else MUL_MINUS

    def rationalize(self, x):
        return x.rationalize()

    def rational_ring(self):
        return QMUL

    def coordinates(self, x):
        out = {}
        for k, v in x.even.items():
            if v.a:
                out[("g", k)] = Fraction(v.a)
            if v.b:
                out[("eg", k)] = Fraction(v.b)
        for k, c in x.odd.items():
            out[("tg", k)] = Fraction(c)
        return out

    def homogeneous_images(self):
        # gamma -> 1 with (eps, tau) -> (-1, 2) or (1, 0); on a piece of degree
        # 4k these read a - b and a + b, on degree 4k + 2 they read 2c and 0.
        target = QQ if self.rational else ZZ
        return [(target, _mul_image_plus), (target, _mul_image_minus)]

    def from_images(self, values, degree):
        vp, vm = (Fraction(v) for v in values)
        k, r = divmod(degree, 4)
        if r == 0:
            a, b = (vp + vm) / 2, (vm - vp) / 2
            out = MulRingElem._raw({k: QEps(a, b)} if (a or b) else {}, {})
        elif r == 2 and not vm:
            out = MulRingElem._raw({}, {k: vp / 2} if vp else {})
        elif not vp and not vm:
            out = MulRingElem._raw({}, {})
        else:
            raise RingError(f"images {values} do not come from an element of degree {degree}")
        if self.rational:
            return out
        for v in list(out.even.values()):
            if v.a.denominator != 1 or v.b.denominator != 1:
                raise RingError(f"images {values} lift to a non-integral element")
        if any(c.denominator != 1 for c in out.odd.values()):
            raise RingError(f"images {values} lift to a non-integral element")
        return MulRingElem._raw({k: ZEps(int(v.a), int(v.b)) for k, v in out.even.items()},
                                {k: int(c) for k, c in out.odd.items()})

    def solve_basis(self, degree):
        if degree is None:
            raise ValueError("the multiplicative ring needs a degree to bound unknowns")
        k, r = divmod(degree, 4)
        one = self.coerce(1)
        if r == 0:
            g = GAMMA ** k
            return [one * g, self.coerce(EPS) * g]
        if r == 2:
            return [one * TAU * GAMMA ** k]
        return []


def _mul_image_plus(x):
    if not isinstance(x, MulRingElem):
        x = MulRingElem.coerce(x)
    return (sum((v.a - v.b for v in x.even.values()), 0)
            + sum((2 * c for c in x.odd.values()), 0))


def _mul_image_minus(x):
    if not isinstance(x, MulRingElem):
        x = MulRingElem.coerce(x)
    return sum((v.a + v.b for v in x.even.values()), 0)


class LaurentRing(Ring):
    graded = True
    rational = True

    def __init__(self, tag, cls):
        self.tag = tag
        self.cls = cls
        if cls is TauLaurent:
            self.symbols = {"tau": cls({1: 1}), "gamma": cls({2: Fraction(1, 4)}),
                            "eps": cls({0: -1}), "h": cls({0: 2})}
        else:
            self.symbols = {"gamma": cls({1: 1}), "tau": cls({}),
                            "eps": cls({0: 1}), "h": cls({})}

    def coerce(self, x):
        if isinstance(x, self.cls):
            return x
        if isinstance(x, MulRingElem):
            return x.specialize("plus" if self.cls is TauLaurent else "minus")
        if isinstance(x, ZEps):
            x = x.specialize("plus" if self.cls is TauLaurent else "minus")
        return self.cls({0: Fraction(x)})

    def degree(self, x):
        return x.degree

    def coordinates(self, x):
        return {k: v for k, v in x.c.items()}

    def homogeneous_images(self):
        # tau -> 2 (so gamma -> 1), resp. gamma -> 1; injective on each graded piece
        target = QQ_PLUS if self.cls is TauLaurent else WITT
        base = 2 if self.cls is TauLaurent else 1

        def hom(x):
            x = self.coerce(x)
            return sum((v * Fraction(base) ** k for k, v in x.c.items()), Fraction(0))
        return [(target, hom)]

    def from_images(self, values, degree):
        (v,) = values
        if degree % self.cls.step:
            if v:
                raise RingError(f"image {v} does not come from degree {degree}")
            return self.cls({})
        k = degree // self.cls.step
        base = 2 if self.cls is TauLaurent else 1
        return self.cls({k: Fraction(v) / Fraction(base) ** k})

    def solve_basis(self, degree):
        if degree is None:
            raise ValueError("a Laurent ring needs a degree to bound unknowns")
        if degree % self.cls.step:
            return []
        return [self.cls({degree // self.cls.step: 1})]

    def sample(self, rng, size=3):
        return self.cls({0: rng.randint(-size, size)})


ZZ = IntegerRing("z")
ZZ_PLUS = IntegerRing("z+", -1)
ZZ_MINUS = IntegerRing("z-", 1)
QQ = RationalRing("q")
QQ_PLUS = RationalRing("q+", -1)
WITT = RationalRing("witt", 1)
ZEPS = EpsRing(False)
QEPS = EpsRing(True)
MUL = MulRing(False)
QMUL = MulRing(True)
MUL_PLUS = LaurentRing("mul+", TauLaurent)
MUL_MINUS = LaurentRing("mul-", GammaLaurent)

RINGS = {r.tag: r for r in (ZZ, ZZ_PLUS, ZZ_MINUS, QQ, QQ_PLUS, WITT,
                           ZEPS, QEPS, MUL, QMUL, MUL_PLUS, MUL_MINUS)}


def ring_from_tag(tag: str) -> Ring:
    try:
        return RINGS[tag]
    except KeyError:
        raise ValueError(f"unknown ring tag {tag!r}; expected one of {sorted(RINGS)}") from None


def specialize(x, sign: str):
    """Plus part (eps -> -1) or minus part (eps -> +1) of a ring element."""
    if isinstance(x, (ZEps, MulRingElem)):
        return x.specialize(sign)
    if _is_scalar(x):
        return x
    raise TypeError(f"cannot specialize {type(x).__name__}")
