"""Adams-operation polynomials over the multiplicative coefficient ring.

``psi_tau(n)`` follows the two-term recursion ``psi^n = tau psi^{n-1} -
gamma psi^{n-2}``.  The unstable operation on a symplectic class x satisfies
``psi^n(x) = x p_n(x)`` and ``p_n(0) = omega(n)``; dividing by omega(n) in
the plus or minus part over Q gives ``q_n`` with ``q_n(0) = 1``.
"""

from __future__ import annotations

from functools import lru_cache

from .rings import (EPS, GAMMA, MUL, MUL_MINUS, MUL_PLUS, TAU, MulRingElem,
                    NotInvertible, ZEps)
from .series import TruncSeries

X = ("x",)


class Mismatch(AssertionError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, what, first, second):
        super().__init__(f"{what}: {first} != {second}")
        self.what = what
        self.first = first
        self.second = second


def omega_sign() -> ZEps:
    """The class <-1>, which equals -eps."""
    return -EPS


def _poly(coeffs, ring=MUL) -> TruncSeries:
    return TruncSeries(ring, X, {(i,): c for i, c in enumerate(coeffs)})


@lru_cache(maxsize=None)
def psi_tau(n: int) -> MulRingElem:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return MUL.coerce(2)
    if n == 1:
        return TAU
    return TAU * psi_tau(n - 1) - GAMMA * psi_tau(n - 2)


@lru_cache(maxsize=None)
def p_poly(n: int) -> TruncSeries:
    if n < 1:
        raise ValueError("p_n is defined for n >= 1")
    if n == 1:
        return _poly([1])
    if n == 2:
        return _poly([2 * TAU, 1])
    x_plus_tau = _poly([TAU, 1])
    return x_plus_tau * p_poly(n - 1) - p_poly(n - 2).scale(GAMMA) + psi_tau(n - 1)


@lru_cache(maxsize=None)
def omega_recursive(n: int) -> MulRingElem:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < 2:
        return MUL.coerce(n)
    return TAU * omega_recursive(n - 1) - GAMMA * omega_recursive(n - 2) + psi_tau(n - 1)


def omega_closed(n: int) -> MulRingElem:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2:
        k = (n - 1) // 2
        return MUL.coerce(n * (k * (1 - EPS) + omega_sign() ** k)) * GAMMA ** k
    if n == 0:
        return MUL.zero
    return TAU * GAMMA ** ((n - 2) // 2) * (n * n // 2)


def omega(n: int) -> MulRingElem:
    """omega(n), computed by the recursion and checked against the closed form."""
    a = omega_recursive(n)
    b = omega_closed(n)
    if a != b:
        raise Mismatch(f"omega({n})", MUL.fmt(a), MUL.fmt(b))
    return a


def psi_x_oracle(n: int) -> TruncSeries:
    """psi^n(x+tau) - psi^n(tau) by the polynomial recursion, divided by x."""
    u = _poly([TAU, 1])
    prev, cur = _poly([2]), u
    if n == 0:
        cur = prev
    for _ in range(n - 1):
        prev, cur = cur, u * cur - prev.scale(GAMMA)
    diff = cur - psi_tau(n)
    terms = {}
    for (e,), c in diff.terms.items():
        if e == 0:
            raise Mismatch(f"psi^{n}(x) at x = 0", MUL.fmt(c), "0")
        terms[(e - 1,)] = c
    return TruncSeries(MUL, X, terms)


_PARTS = {"plus": MUL_PLUS, "minus": MUL_MINUS}


def q_poly(n: int, part: str) -> TruncSeries:
    """p_n / omega(n) in the plus or minus part over Q."""
    try:
        ring = _PARTS[part]
    except KeyError:
        raise ValueError(f"part must be 'plus' or 'minus', got {part!r}") from None
    w = ring.coerce(omega(n))
    try:
        winv = ring.inverse(w)
    except NotInvertible:
        raise NotInvertible(f"omega({n}) = {ring.fmt(w)} is not invertible in the {part} part") from None
    return p_poly(n).specialize(part).scale(winv)


__all__ = ["Mismatch", "omega_sign", "psi_tau", "p_poly", "omega", "omega_recursive",
           "omega_closed", "psi_x_oracle", "q_poly"]
