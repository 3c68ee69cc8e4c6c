"""Additive pieces of the Borel character and the rank-2 Todd series.

chi_tilde(n) is the n-th power sum of the Borel roots, written in the Borel
classes through the Newton recursion.  psi_form(2n) is the symmetric
bilinear form psi_{2n} in Z[eps] (with h = 1 - eps) and psi_factorial(2n)
the product psi_2 psi_6 ... psi_{2n}.

The motivic half of the rank-2 character is a series in c2 (where the Borel
class maps to -c2); the Witt half is a series in the Euler class x.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .adams import Mismatch
from .rings import EPS, H, QEPS, QQ_PLUS, WITT, ZZ, QEps, ZEps
from .series import TruncSeries
from .todd import BorelData


def chi_tilde(n: int, B: BorelData) -> TruncSeries:
    """Solve chi_n - b_1 chi_{n-1} + ... + (-1)^{n-1} b_{n-1} chi_1 + (-1)^n n b_n = 0."""
    if n < 1:
        raise ValueError("chi_tilde is indexed from 1")
    vars, w = B.names, B.weights
    k = len(vars)

    def b(i):
        if i > k:
            return TruncSeries.zero(ZZ, vars, None, w)
        return TruncSeries.variable(ZZ, vars, vars[i - 1], None, w)

    chis = []
    for m in range(1, n + 1):
        acc = b(m).scale((-1) ** (m + 1) * m)
        for i in range(1, m):
            acc = acc + (b(i) * chis[m - i - 1]).scale((-1) ** (i + 1))
        chis.append(acc)
    return chis[-1]


def power_sum_oracle(n: int, roots) -> int:
    return sum(r ** n for r in roots)


def psi_form(index: int) -> ZEps:
    """psi_{2n} for index = 2n."""
    if index < 0 or index % 2:
        raise ValueError(f"psi is indexed by even numbers, got {index}")
    n = index // 2
    if n <= 1:
        return ZEps(1, 0)
    if n % 2 == 0:
        return H * (n * (2 * n - 1) * (2 * n - 2) * (2 * n - 3))
    return ((2 * n * n - 4 * n + 1) * H - EPS) * (2 * n * (2 * n - 2))


def _factorial_chain(index: int):
    if index < 2 or index % 4 != 2:
        raise ValueError(f"the factorial chain runs over indices 2, 6, 10, ...; got {index}")
    return range(2, index + 1, 4)


def psi_factorial(index: int) -> ZEps:
    out = ZEps(1, 0)
    for m in _factorial_chain(index):
        out = out * psi_form(m)
    return out


def witt_psi_factorial(index: int) -> Fraction:
    """Witt image (eps = 1) of psi_factorial, checked against (-1)^n 2^{2n} (2n+1)!."""
    direct = psi_factorial(index).specialize("minus")
    n = (index - 2) // 4
    closed = (-1) ** n * 2 ** (2 * n) * factorial(2 * n + 1)
    if direct != closed:
        raise Mismatch(f"Witt image of psi_{index}!", direct, closed)
    return Fraction(direct)


def _series(ring, var, coeffs: dict, bound) -> TruncSeries:
    return TruncSeries(ring, (var,), {(k,): c for k, c in coeffs.items()}, bound)


def borel_todd_W(N: int) -> TruncSeries:
    """Inverse Todd series of the Witt half: 1 + sum (-1)^n/(2n+1)! (x/2)^{2n}, through x^N."""
    coeffs = {2 * n: Fraction((-1) ** n, factorial(2 * n + 1) * 4 ** n) for n in range(N // 2 + 1)}
    out = _series(WITT, "x", coeffs, N)
    check = divide_by_var(witt_part(N + 1))
    if check != out:
        raise Mismatch("Witt Todd series", out, check)
    return out


def borel_todd_M(N: int) -> TruncSeries:
    """Inverse Todd series of the motivic half: 2 sum_{i>=1} (-c2)^{i-1}/(2i)!, through c2^N."""
    coeffs = {i - 1: Fraction(2 * (-1) ** (i - 1), factorial(2 * i)) for i in range(1, N + 2)}
    return _series(QQ_PLUS, "c2", coeffs, N)


def witt_part(N: int) -> TruncSeries:
    """x + sum_{n>=1} x^{2n+1} / (Witt image of psi_{4n+2}!), through x^N."""
    coeffs = {2 * n + 1: 1 / witt_psi_factorial(4 * n + 2) for n in range((N - 1) // 2 + 1)}
    return _series(WITT, "x", coeffs, N)


def tilde_part(N: int) -> TruncSeries:
    """x + sum_{n>=1} x^{2n+1} / psi_{4n+2}! over Q[eps], through x^N."""
    coeffs = {}
    for n in range((N - 1) // 2 + 1):
        f = psi_factorial(4 * n + 2)
        coeffs[2 * n + 1] = QEPS.inverse(QEps(f.a, f.b))
    return _series(QEPS, "x", coeffs, N)


def chi_part(N: int) -> TruncSeries:
    """sum_{n>=1} 2 c2^{2n} / (4n)!, through c2^N."""
    coeffs = {2 * n: Fraction(2, factorial(4 * n)) for n in range(1, N // 2 + 1)}
    return _series(QQ_PLUS, "c2", coeffs, N)


def divide_by_var(f: TruncSeries) -> TruncSeries:
    terms = {}
    for (e,), c in f.terms.items():
        if e == 0:
            raise ValueError("series has a nonzero constant term")
        terms[(e - 1,)] = c
    return TruncSeries(f.ring, f.vars, terms, None if f.bound is None else f.bound - 1)


class BorelCharacter(NamedTuple):
    motivic: TruncSeries  # in c2, over Q with eps = -1
    witt: TruncSeries  # in x, over Q with eps = 1


def borel_character_rank2(N: int) -> BorelCharacter:
    """bo_t(u - tau) for the universal rank-2 bundle, split into its two halves.

    Both halves are known through degree N in their variable.  The
    factorization through the Todd series is checked: dividing the motivic
    half by -c2 gives borel_todd_M and the Witt half by x gives borel_todd_W.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    tilde = tilde_part(N)
    # p: eps -> -1, x -> -c2
    p_tilde = tilde.specialize("plus").rename({"x": "c2"}).scale_var("c2", -1)
    motivic = chi_part(N) + p_tilde
    witt = tilde.specialize("minus")
    if witt != witt_part(N):
        raise Mismatch("Witt half", witt, witt_part(N))
    td_m = divide_by_var(motivic.scale(-1))
    if td_m != borel_todd_M(N - 1):
        raise Mismatch("motivic Todd factorization", td_m, borel_todd_M(N - 1))
    td_w = divide_by_var(witt)
    if td_w != borel_todd_W(N - 1):
        raise Mismatch("Witt Todd factorization", td_w, borel_todd_W(N - 1))
    return BorelCharacter(motivic, witt)


__all__ = ["chi_tilde", "power_sum_oracle", "psi_form", "psi_factorial", "witt_psi_factorial",
           "borel_todd_W", "borel_todd_M", "witt_part", "tilde_part", "chi_part",
           "divide_by_var", "BorelCharacter", "borel_character_rank2"]
