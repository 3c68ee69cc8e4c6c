"""
Logarithms of the multiplicative law
=====================================

Over the rationals every law we have met is strictly isomorphic to the
additive one.  Solve for the isomorphism degree by degree in both parts of
the multiplicative law and compare with closed-form series.
"""

import sympy as sp

from ftlcalc import additive_ftl, logarithm, multiplicative_ftl, specialize_ftl, transform
from ftlcalc.series import render

M = multiplicative_ftl()

# Minus part (eps = 1, tau = 0).  The logarithm is odd.
F = specialize_ftl(M, "minus")
theta = logarithm(F, 6)
print("minus:", render(theta.theta))

# Setting gamma = 1 it is the series of 2 arcsin(x/2).
x = sp.symbols("x")
print("      2 asin(x/2) =", sp.series(2 * sp.asin(x / 2), x, 0, 8))

# Transporting the law along theta gives the additive law through degree 6.
G = transform(F, theta, 6)
print("      transform is additive:", G == additive_ftl(theta.ring).truncate(6))

# Plus part (eps = -1, tau^2 = 4 gamma).  This one takes a few seconds.
F = specialize_ftl(M, "plus")
theta = logarithm(F, 6)
print("plus: ", render(theta.theta))

# With tau = 2 and gamma = 1 the coefficients are those of 4 arcsinh(sqrt(x)/2)^2.
s = sp.symbols("s")
print("      4 asinh(s/2)^2 =", sp.series(4 * sp.asinh(s / 2) ** 2, s, 0, 15))
