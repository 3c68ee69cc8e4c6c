"""Orientation changes, Todd series and Todd classes of symplectic bundles.

A change of orientation is a series ``theta(t) = t + a_2 t^2 + ...``.  Its
Todd series is ``t / theta(t)``, and the Todd class of a symplectic bundle
with Borel classes ``b_1..b_n`` is the product of the Todd series over the
Borel roots, rewritten in the ``b_i``.

Grading: a Borel root has degree 2 and ``b_i`` has degree ``2i``.  The
``bound`` of a :class:`BorelData` caps this degree.
"""

from __future__ import annotations

from .rings import Ring, QQ
from .series import (PrecisionError, TruncSeries, VariableMismatch,
                     sym_to_elementary)


class OrientationSeries:
    """theta(t) = t + sum_{i>=2} a_i t^i, known through t^bound (exact if bound is None)."""

    def __init__(self, ring: Ring, a=(), bound=None, var: str = "t"):
        self.ring = ring
        self.a = tuple(ring.coerce(c) for c in a)  # a_2, a_3, ...
        self.var = var
        if bound is not None:
            if bound < 1:
                raise ValueError("an orientation series needs bound >= 1")
            if len(self.a) > bound - 1:
                self.a = self.a[:bound - 1]
        self.bound = bound

    @classmethod
    def from_series(cls, theta: TruncSeries):
        if len(theta.vars) != 1:
            raise VariableMismatch("an orientation series has one variable")
        ring = theta.ring
        if theta.coefficient((0,)) or theta.coefficient((1,)) != ring.one:
            raise ValueError("an orientation series must be t + (higher terms)")
        top = theta.bound if theta.bound is not None else max(theta.degree(), 1)
        a = [theta.coefficient((i,)) for i in range(2, top + 1)]
        return cls(ring, a, theta.bound, theta.vars[0])

    @classmethod
    def identity(cls, ring: Ring, var: str = "t"):
        return cls(ring, (), None, var)

    def coefficient(self, i: int):
        if i == 1:
            return self.ring.one
        if self.bound is not None and i > self.bound:
            raise PrecisionError(f"a_{i} is beyond the known precision {self.bound}")
        if i < 1 or i - 2 >= len(self.a):
            return self.ring.zero
        return self.a[i - 2]

    def series(self) -> TruncSeries:
        terms = {(1,): self.ring.one}
        for i, c in enumerate(self.a, start=2):
            terms[(i,)] = c
        return TruncSeries(self.ring, (self.var,), terms, self.bound)

    def __repr__(self):
        return f"OrientationSeries({self.series()})"


def todd_series(theta: OrientationSeries, N: int) -> TruncSeries:
    """t / theta(t) through t^N."""
    if theta.bound is not None and N > theta.bound - 1:
        raise PrecisionError(f"theta known through t^{theta.bound} gives t/theta through t^{theta.bound - 1} only")
    ring = theta.ring
    terms = {(0,): ring.one}
    for i in range(1, N + 1):
        c = theta.coefficient(i + 1)
        if c:
            terms[(i,)] = c
    quotient = TruncSeries(ring, (theta.var,), terms, N)
    return quotient.reciprocal()


class BorelData:
    """Formal Borel classes b_1..b_n of a symplectic bundle of rank 2n."""

    def __init__(self, rank2n: int, bound: int, names=None):
        if rank2n < 0 or rank2n % 2:
            raise ValueError(f"a symplectic rank must be even and nonnegative, got {rank2n}")
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        self.rank2n = rank2n
        self.n = rank2n // 2
        self.bound = bound
        self.names = tuple(names) if names is not None else tuple(f"b{i}" for i in range(1, self.n + 1))
        if len(self.names) != self.n:
            raise ValueError("need one name per Borel class")

    @property
    def weights(self):
        return tuple(2 * i for i in range(1, self.n + 1))

    def zero(self, ring: Ring = QQ) -> TruncSeries:
        return TruncSeries.zero(ring, self.names, self.bound, self.weights)

    def __repr__(self):
        return f"BorelData(rank2n={self.rank2n}, bound={self.bound})"


def _root_names(n):
    return tuple(f"_r{i}" for i in range(1, n + 1))


def root_product(ttilde: TruncSeries, n: int, bound: int) -> TruncSeries:
    """prod_i ttilde(r_i) over n roots of degree 2, truncated at ``bound``."""
    if len(ttilde.vars) != 1:
        raise VariableMismatch("the Todd series has one variable")
    ring = ttilde.ring
    if ttilde.bound is not None:
        # odd degrees never occur, so the t^N truncation is exact through degree 2N+1
        bound = min(bound, 2 * ttilde.bound + 1)
    roots = _root_names(n)
    weights = (2,) * n
    out = TruncSeries.constant(ring, roots, 1, bound, weights)
    coeffs = [(k, c) for (k,), c in ttilde.terms.items() if 2 * k <= bound]
    for i in range(n):
        factor = {}
        for k, c in coeffs:
            e = [0] * n
            e[i] = k
            factor[tuple(e)] = c
        out = out * TruncSeries(ring, roots, factor, bound, weights)
    return out


def todd_of_bundle(ttilde: TruncSeries, B: BorelData) -> TruncSeries:
    """The Todd class prod ttilde(root_i), as a polynomial in B's Borel classes."""
    if ttilde.coefficient((0,)) != ttilde.ring.one:
        raise ValueError("a Todd series must have constant term 1")
    if B.n == 0:
        return TruncSeries.constant(ttilde.ring, (), 1, B.bound)
    p = root_product(ttilde, B.n, B.bound)
    return sym_to_elementary(p, _root_names(B.n), B.names)


__all__ = ["OrientationSeries", "todd_series", "BorelData", "root_product", "todd_of_bundle"]
