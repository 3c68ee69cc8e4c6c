"""
Adams polynomials and the Borel character
==========================================

The unstable Adams operations on a symplectic class are polynomials over the
multiplicative ring.  The Borel character splits into a motivic half and a
Witt half, each with its own Todd series.
"""

from ftlcalc import MUL, omega, p_poly, q_poly
from ftlcalc.borel import borel_character_rank2, borel_todd_M, borel_todd_W, chi_tilde
from ftlcalc.rings import NotInvertible
from ftlcalc.series import render
from ftlcalc.todd import BorelData

# psi^n(x) = x p_n(x) with p_n monic of degree n - 1.
for n in range(1, 6):
    print(f"p_{n} =", render(p_poly(n)))

# The constant term omega(n) has a closed form; omega() checks both.
for n in range(1, 8):
    print(f"omega({n}) =", MUL.fmt(omega(n)))

# Normalizing by omega(n) needs omega(n) to be a unit.  In the minus part
# tau = 0, so omega(n) vanishes for even n.
for part in ("plus", "minus"):
    for n in (2, 3):
        try:
            print(f"q_{n} ({part}) =", render(q_poly(n, part)))
        except NotInvertible as exc:
            print(f"q_{n} ({part}): {exc}")

# Power sums of Borel roots through Newton's recursion, rank 6.
print("chi~_8 =", render(chi_tilde(4, BorelData(6, 0))))

# Inverse Todd series of the two halves: sin(x/2)/(x/2) and (2 cosh - 2)/c2.
print("W:", render(borel_todd_W(8)))
print("M:", render(borel_todd_M(4)))

# The rank-2 character and its factorization through the Todd series
# (borel_character_rank2 asserts both factorizations).
bo = borel_character_rank2(7)
print("motivic:", render(bo.motivic))
print("Witt:   ", render(bo.witt))
