"""
Quadratic Riemann-Roch on a K3 surface
=======================================

Assemble the Todd class of a K3 surface from the two halves of the Borel
character, then evaluate the quadratic Euler characteristic of symplectic
bundles of growing rank.
"""

from ftlcalc import EPS, ZEps
from ftlcalc.hrr import hrr_surface, k3_model, k3_todd_class, quadratic_euler_char_k3
from ftlcalc.series import render

# deg c2 = 24; the Euler class e of the bundle has a quadratic degree.
deg_e = ZEps(3, -1)
model = k3_model(deg_c2=24, deg_e=deg_e)

# Motivic half 1 + c2/12, Witt half 1, glued by the idempotents (1 -+ eps)/2.
td = k3_todd_class(model)
print("td =", render(td))

# The c2 term only sees motivic degrees, so it contributes a hyperbolic form.
e = model.element({"e": 1})
print(" 2r   via HRR          closed form")
for r in range(0, 6):
    value = hrr_surface(model, r, e, td)
    print(f"{2 * r:>3}   {str(value):<16} {quadratic_euler_char_k3(r, deg_e)}")

# A hyperbolic Euler degree keeps everything hyperbolic.
model = k3_model(deg_e=1 - EPS)
print("deg e = h, r = 1:", hrr_surface(model, 1, model.element({"e": 1}), k3_todd_class(model)))
