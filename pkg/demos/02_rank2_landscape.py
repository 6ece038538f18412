#!/usr/bin/env python3
"""The complete rank-2 landscape at a point of any degree.

For E = O(d1) + O(d2) and a point of degree d, the census of weight-1
modifications has at most a handful of outcome types, with multiplicities
given by exact polynomials in q that depend only on the gap d2 - d1
relative to d.  The multiplicities always sum to q^d + 1, the number of
kappa(x)-lines in the fiber: a telescoping identity worth seeing happen.

The interesting regime is 0 < gap < d, where an interior ladder of types
O(d2-d+i) + O(d1-i) appears, each with multiplicity q^(gap+2i+1) -
q^(gap+2i-1).
"""

from heckelab.bundles import BundleType, ClosedPoint
from heckelab.hecke import ModificationQuery, multiplicity_detail, neighbors
from heckelab.qcalc import QPoly

for d1, d2, d in [(0, 0, 1), (0, 3, 1), (0, 1, 3), (0, 2, 5), (0, 0, 4)]:
    E = BundleType((d1, d2))
    x = ClosedPoint(2, d)
    census = neighbors(E, d, 1)
    print(f"E = {E.pretty()}, point degree {d} (gap {d2 - d1}):")
    total = QPoly(())
    for E_prime, poly in census.items():
        _, method = multiplicity_detail(ModificationQuery(E, E_prime, x, 1))
        print(f"  {E_prime.pretty():<14} {poly.pretty():<12} [{method}]")
        total = total + poly
    mass = QPoly.monomial(d) + 1
    assert total == mass
    print(f"  mass {total.pretty()} = q^{d}+1\n")
