#!/usr/bin/env python3
"""One modification, counted three independent ways.

Take the trivial rank-2 bundle E = O + O over F_2 and the degree-2 point
cut out by t^2 + t + 1.  A weight-1 modification at x lowers the degree
by 2 and produces either O(-1)^2 or O(-2) + O.  We count how many
subsheaves realize each outcome:

  * by enumerating lines in the fiber kappa(x)^2 = F_4^2 and computing
    the splitting type of the kernel sheaf section-by-section,
  * by expanding the skyscraper product K_x * [E'] in the Hall algebra,
  * by the closed rank-2 formula.

All three must agree: 2 subsheaves give the balanced type, 3 give the
unbalanced one, and 2 + 3 = 5 = #P^1(F_4) lines in the fiber.
"""

from heckelab.bundles import BundleType, ClosedPoint
from heckelab.hall import hall_multiplicity
from heckelab.hecke import ModificationQuery, multiplicity_detail
from heckelab.oracle import brute_multiplicity

E = BundleType((0, 0))
x = ClosedPoint(2, 2, (1, 1, 1))  # t^2 + t + 1, irreducible over F_2

print(f"E = {E.pretty()}, x of degree {x.d} over F_{x.q} ({x.poly_pretty()})\n")

print("fiber enumeration (the oracle):")
census = brute_multiplicity(E, x, 1)
for E_prime, count in census.items():
    print(f"  {E_prime.pretty():<12} {count} subsheaves")
print(f"  total {sum(census.values())} = #P^1(F_4)\n")

print("hall-algebra coefficients and the closed formula:")
for E_prime in census:
    h = hall_multiplicity(E_prime, E, x.d, 1)
    poly, method = multiplicity_detail(ModificationQuery(E, E_prime, x, 1))
    print(
        f"  {E_prime.pretty():<12} hall {h.pretty():<8} closed {poly.pretty():<8}"
        f" at q=2: {poly.evaluate(2)}   [{method}]"
    )
