"""
Checking the axioms of a ternary law
=====================================

Build the two degree-0 laws and the multiplicative law, run the five axiom
checks exactly, then break one coefficient and look at the witnesses.
"""

import time

from ftlcalc import ZEps, additive_ftl, alternative_additive_ftl, check_axioms, multiplicative_ftl

# The additive law has ten coefficient orbits over Z[eps].
F = additive_ftl()
print(F)
for line in F.render_lines():
    print("  ", line)

# Every check is exact: the law is a polynomial, so associativity is an
# identity of polynomials in five variables and no truncation is involved.
start = time.perf_counter()
report = check_axioms(F)
print("additive:", "pass" if report.passed else report.failures(),
      f"({time.perf_counter() - start:.2f}s)")

# The second degree-0 law differs only in the xyz t^3 coefficient.
G = alternative_additive_ftl()
print("a^3_111:", F.coeff(3, 1, 1, 1), "vs", G.coeff(3, 1, 1, 1))
print("alternative:", "pass" if check_axioms(G).passed else "fail")

# The multiplicative law lives over Z_eps[tau, gamma^+-1].  Associativity is
# checked in the plus and minus images of the ring, which together detect
# every homogeneous coefficient.
M = multiplicative_ftl()
start = time.perf_counter()
print("multiplicative:", "pass" if check_axioms(M).passed else "fail",
      f"({time.perf_counter() - start:.1f}s)")

# Doubling the t^4 x^4 coefficient breaks three axioms at once.  Each failing
# check reports the first coefficient where the two sides differ.
bad = F.perturb((4, 4, 0, 0), ZEps(2, 0))
for name, result in check_axioms(bad).results.items():
    print(f"  {name:<14}", "pass" if result.passed else f"FAIL {result.witness}")
