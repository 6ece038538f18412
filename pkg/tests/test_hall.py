"""Hall-product engine: worked examples, algebra laws, oracle agreement."""

import random
from itertools import product

import pytest

from heckelab.bundles import BundleType, ClosedPoint
from heckelab.deltas import DeltaVec
from heckelab.hall import (
    HallElement,
    HallTerm,
    bundle_product,
    hall_multiplicity,
    kx_times,
    realizing_deltas,
    vec_part,
    word_product,
)
from heckelab.oracle import brute_multiplicity
from heckelab.qcalc import QPoly, QRat, gaussian_binomial

Q = QPoly((0, 1))
ONE = QPoly((1,))


def B(*degrees):
    return BundleType(degrees)


def elem(pairs):
    return HallElement({HallTerm(b, s): QRat.of(c) for b, s, c in pairs})


def test_word_product_ascending_pair():
    assert word_product([0, 1]) == elem([(B(0, 1), 0, 1)])


def test_word_product_single_inversion():
    assert word_product([1, 0]) == elem([(B(0, 1), 0, Q**2)])


def test_word_product_gap_two():
    assert word_product([2, 0]) == elem(
        [(B(0, 2), 0, Q**3), (B(1, 1), 0, (Q**2 - ONE) * Q)]
    )


def test_word_product_equal_letters():
    assert word_product([0, 0]) == elem([(B(0, 0), 0, Q + ONE)])
    assert word_product([5, 5, 5]) == elem(
        [(B(5, 5, 5), 0, (Q + ONE) * (Q**2 + Q + ONE))]
    )


def test_bundle_product_examples():
    assert bundle_product(B(0), B(0)) == elem([(B(0, 0), 0, Q + ONE)])
    assert bundle_product(B(2), B(0)) == elem(
        [(B(0, 2), 0, Q**3), (B(1, 1), 0, Q**3 - Q)]
    )
    assert bundle_product(B(0), B(2)) == elem([(B(0, 2), 0, 1)])


def test_bundle_product_with_multiplicity_normalization():
    # [O+O] * [O]: every coefficient stays polynomial after dividing by [2]_q!
    h = bundle_product(B(0, 0), B(0))
    assert h == elem([(B(0, 0, 0), 0, Q**2 + Q + ONE)])


def test_kx_times_single_line():
    assert kx_times(1, B(0), 2) == elem([(B(2), 0, 1), (B(0), 1, Q**2)])
    assert kx_times(2, B(0), 1) == elem([(B(1), 1, 1), (B(0), 2, Q**2)])


def test_kx_times_rank_two_full():
    got = kx_times(1, B(0, 0), 1)
    assert got == elem([(B(0, 1), 0, Q), (B(0, 0), 1, Q**2)])


def test_vec_part():
    assert vec_part(kx_times(1, B(0), 2)) == elem([(B(2), 0, 1)])
    assert vec_part(kx_times(1, B(0, 0), 1)) == elem([(B(0, 1), 0, Q)])
    bundles_only = word_product([0, 3])
    assert vec_part(bundles_only) == bundles_only


def test_kx_times_validation():
    with pytest.raises(ValueError):
        kx_times(0, B(0), 1)
    with pytest.raises(ValueError):
        kx_times(1, B(0), 0)
    with pytest.raises(ValueError):
        kx_times(1, B(0), 1, method="magic")


def test_hall_multiplicity_degree_two_point_values():
    m1 = hall_multiplicity(B(-1, -1), B(0, 0), 2, 1)
    assert m1 == Q**2 - Q
    assert m1.evaluate(2) == 2
    m2 = hall_multiplicity(B(-2, 0), B(0, 0), 2, 1)
    assert m2 == Q + ONE
    assert m2.evaluate(2) == 3


def test_hall_multiplicity_degenerate():
    assert hall_multiplicity(B(0, 0), B(0, 0), 2, 1) == QPoly(())
    assert hall_multiplicity(B(0, 0), B(0, 0), 2, 0) == ONE
    assert hall_multiplicity(B(-1, 0), B(0, 0), 2, 0) == QPoly(())
    with pytest.raises(ValueError):
        hall_multiplicity(B(0), B(0, 0), 1, 1)


def test_hall_multiplicity_matches_oracle_census():
    x = ClosedPoint(2, 2, (1, 1, 1))
    census = brute_multiplicity(B(0, 0), x, 1)
    for E_prime, count in census.items():
        assert hall_multiplicity(E_prime, B(0, 0), 2, 1).evaluate(2) == count


def shifted_candidates(E, d, r):
    """All possible splitting types of a weight-r modification of E."""
    n = E.rank
    seen = set()
    for eps in product(range(d + 1), repeat=n):
        if sum(eps) == r * d:
            seen.add(BundleType([a - e for a, e in zip(E.degrees, eps)]))
    return sorted(seen)


@pytest.mark.parametrize("degrees", [(0,), (0, 0), (0, 3), (-1, 1), (0, 1, 2), (0, 0, 2)])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_mass_identity(degrees, d):
    E = BundleType(degrees)
    n = E.rank
    for r in range(n + 1):
        total = 0
        for E_prime in shifted_candidates(E, d, r):
            poly = hall_multiplicity(E_prime, E, d, r)
            for q0 in (2, 3, 4, 5):
                assert poly.evaluate(q0) >= 0
            total += poly.evaluate(2)
        assert total == gaussian_binomial(n - r, n).evaluate(2**d), (E, d, r)


def element_mul(h1: HallElement, h2: HallElement) -> HallElement:
    out = HallElement({})
    for t1, c1 in h1.terms.items():
        assert t1.torsion_weight == 0
        for t2, c2 in h2.terms.items():
            assert t2.torsion_weight == 0
            out = out + bundle_product(t1.bundle, t2.bundle).scale(c1 * c2)
    return out


def test_associativity_of_random_words():
    rng = random.Random(20240820)
    for _ in range(200):
        k = rng.randint(2, 4)
        word = tuple(rng.randint(-2, 3) for _ in range(k))
        full = word_product(word)
        for cut in range(1, k):
            left = word_product(word[:cut])
            right = word_product(word[cut:])
            assert element_mul(left, right) == full, (word, cut)


def test_kx_closed_equals_recursive():
    degree_sets = [(0,), (0, 1), (0, 0), (-1, 2), (0, 1, 1), (0, 2, 3), (-1, 0, 1)]
    for degrees in degree_sets:
        E = BundleType(degrees)
        for r in range(1, E.rank + 1):
            for d in (1, 2, 3):
                a = kx_times(r, E, d, method="recursive")
                b = kx_times(r, E, d, method="closed")
                assert a == b, (E, r, d)


def test_kx_weight_can_exceed_rank():
    """More skyscraper copies than components: excess stays torsion."""
    for degrees, r in [((0,), 2), ((0,), 3), ((0, 1), 3)]:
        E = BundleType(degrees)
        a = kx_times(r, E, 1, method="recursive")
        b = kx_times(r, E, 1, method="closed")
        assert a == b, (E, r)
        assert all(term.torsion_weight >= r - E.rank for term, _ in a.items())


def test_kx_conservation():
    for degrees in [(0, 1), (0, 0, 2)]:
        E = BundleType(degrees)
        for r in range(1, E.rank + 1):
            for d in (1, 2):
                h = kx_times(r, E, d)
                for term, _ in h.items():
                    assert term.bundle.rank == E.rank
                    assert (
                        term.bundle.degree + term.torsion_weight * d
                        == E.degree + r * d
                    )


def test_realizing_deltas_examples():
    got = realizing_deltas(B(-1, 0), B(0, 0), 1, 1)
    assert got == [(DeltaVec((1, 0)), True)]
    got = realizing_deltas(B(0, 0), B(0, 1), 1, 1)
    assert got == [(DeltaVec((1, 0)), False), (DeltaVec((0, 1)), True)]
    assert realizing_deltas(B(0, 0), B(0, 0), 1, 0) == [(DeltaVec((0, 0)), True)]
    assert realizing_deltas(B(-1, 0), B(0, 0), 1, 0) == []
    with pytest.raises(ValueError):
        realizing_deltas(B(0), B(0, 0), 1, 1)


def test_hall_element_json():
    h = word_product([2, 0])
    data = h.to_json()
    assert data == [
        {
            "degrees": [0, 2],
            "torsion": 0,
            "coeff_num": [0, 0, 0, 1],
            "coeff_den": [1],
        },
        {
            "degrees": [1, 1],
            "torsion": 0,
            "coeff_num": [0, -1, 0, 1],
            "coeff_den": [1],
        },
    ]


def test_pretty_output():
    assert "q^2" in word_product([1, 0]).pretty()
    assert "K^1" in kx_times(1, B(0), 2).pretty()
