#!/usr/bin/env python3
"""Degree-one points: complete multiplicative classification.

At a rational point every weight-r modification drops r of the n degrees
by exactly one.  The multiplicity factors over groups of equal degrees:
each group of size l losing theta components contributes a Gaussian
binomial [theta choose l]_q, times a q-power measuring how far the
drops sit from the top of the degree profile.  Summing over all outcome
types recovers #Gr(n-r, n)(F_q), since subsheaf choices are exactly
(n-r)-dimensional subspaces of the fiber.

Existence at higher-degree points is governed by a chain condition on
the interleaving of old and new degrees; we check it against the Hall
number being nonzero, and watch the factorization over a wide degree gap.
"""

from itertools import combinations_with_replacement, product

from heckelab.bundles import BundleType, ClosedPoint
from heckelab.hall import hall_multiplicity
from heckelab.hecke import ModificationQuery, exists_modification, multiplicity_detail, neighbors
from heckelab.qcalc import QPoly, gaussian_binomial

print("censuses at a rational point, E = O + O + O(2):")
E = BundleType((0, 0, 2))
for r in (1, 2, 3):
    census = neighbors(E, 1, r)
    total = QPoly(())
    rows = []
    for E_prime, poly in census.items():
        rows.append(f"{E_prime.pretty()}: {poly.pretty()}")
        total = total + poly
    assert total == gaussian_binomial(3 - r, 3)
    print(f"  r={r}:  " + ",  ".join(rows))
    print(f"        sum {total.pretty()} = #Gr({3 - r},3)")
print()

print("weight-one existence = chain condition = nonzero hall number:")
x = ClosedPoint(2, 2)
checked = agree = 0
for degrees in combinations_with_replacement(range(4), 3):
    E = BundleType(degrees)
    for eps in product(range(3), repeat=3):
        if sum(eps) != 2:
            continue
        E_prime = BundleType([a - e for a, e in zip(E.degrees, eps)])
        chain = exists_modification(ModificationQuery(E, E_prime, x, 1))
        hall = not hall_multiplicity(E_prime, E, 2, 1).is_zero()
        checked += 1
        agree += chain == hall
print(f"  {agree}/{checked} candidate drops agree at a degree-2 point\n")

print("a gap wider than d splits the count:")
E = BundleType((0, 0, 5))
x = ClosedPoint(2, 2)
for E_prime, poly in neighbors(E, 2, 1).items():
    _, method = multiplicity_detail(ModificationQuery(E, E_prime, x, 1))
    print(f"  {E_prime.pretty():<16} {poly.pretty():<8} [{method}]")
