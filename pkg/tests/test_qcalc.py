"""Exact q-arithmetic: canonical forms, Gaussian binomials, evaluation."""

import random
from fractions import Fraction
from itertools import product

import pytest

from heckelab.qcalc import (
    ONE,
    Q,
    ZERO,
    QPoly,
    QRat,
    eval_at,
    gaussian_binomial,
    poly_gcd,
    q_factorial,
    q_int,
)


def brute_subspace_count(k, n, q):
    """Count k-dim subspaces of F_q^n by enumerating spans; prime q only."""

    def vsub(u, v, c):
        return tuple((a - c * b) % q for a, b in zip(u, v))

    def rref(rows):
        rows = [r for r in rows]
        out = []
        col = 0
        while rows and col < n:
            pivot = next((r for r in rows if r[col] % q != 0), None)
            if pivot is None:
                col += 1
                continue
            rows.remove(pivot)
            inv = pow(pivot[col], -1, q)
            pivot = tuple(c * inv % q for c in pivot)
            rows = [vsub(r, pivot, r[col]) for r in rows]
            out = [vsub(r, pivot, r[col]) for r in out]
            out.append(pivot)
            col += 1
        return tuple(out)

    vectors = list(product(range(q), repeat=n))
    seen = set()
    for combo in product(vectors, repeat=k):
        basis = rref(combo)
        if len(basis) == k:
            seen.add(basis)
    return len(seen)


def test_qpoly_basics():
    p = QPoly((1, 0, 1))
    assert p.degree == 2
    assert p.pretty() == "q^2+1"
    assert (Q + 1) * (Q - 1) == QPoly((-1, 0, 1))
    assert QPoly((0, 0, 0)) == ZERO
    assert Q**3 == QPoly.monomial(3)
    assert (-Q).pretty() == "-q"
    assert (2 * Q**3 - Q + 5).pretty() == "2q^3-q+5"


def test_qpoly_divmod_exact_and_errors():
    num = Q**2 - 1
    quo, rem = num.divmod(Q - 1)
    assert quo == Q + 1 and rem.is_zero()
    with pytest.raises(ZeroDivisionError):
        num.divmod(ZERO)
    # 1 step of non-exact integer division must refuse, not truncate
    with pytest.raises(ValueError):
        Q.divmod(QPoly(2) * Q)


def test_qrat_examples():
    inv = QRat(ONE, Q + 1)
    assert inv * QRat(Q + 1) == QRat(1)
    assert QRat(Q**2 - 1) / QRat(Q - 1) == QRat(Q + 1)
    a = QRat(Q - 1, Q**2 - 1)
    b = QRat(Q - 1, Q - 1)
    assert a * b == QRat(ONE, Q + 1)


def test_qrat_canonical_form():
    r = QRat(QPoly((2, 2)), QPoly((0, 2)))  # (2q+2)/(2q)
    assert r.num == Q + 1 and r.den == Q
    s = QRat(-(Q + 1), -(Q**2))
    assert s.den.leading() > 0 and s == r / QRat(Q)
    with pytest.raises(ZeroDivisionError):
        QRat(ONE, ZERO)
    with pytest.raises(ZeroDivisionError):
        QRat(Q) / QRat(0)


def test_qrat_field_laws_randomized():
    rng = random.Random(20240817)

    def rand_poly():
        return QPoly([rng.randint(-4, 4) for _ in range(rng.randint(1, 4))])

    def rand_rat():
        den = ZERO
        while den.is_zero():
            den = rand_poly()
        return QRat(rand_poly(), den)

    for _ in range(60):
        a, b, c = rand_rat(), rand_rat(), rand_rat()
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == QRat(0)
        if not a.is_zero():
            assert b / a * a == b


def test_poly_gcd_content_and_primitive():
    g = poly_gcd(QPoly((2, 2)), QPoly((0, 4)))
    assert g == QPoly(2)
    g = poly_gcd((Q + 1) * (Q - 1), (Q + 1) * Q)
    assert g == Q + 1
    assert poly_gcd(ZERO, -(Q + 2)) == Q + 2


def test_gaussian_binomial_examples():
    assert gaussian_binomial(1, 2) == Q + 1
    for n in range(7):
        assert gaussian_binomial(0, n) == ONE
    assert gaussian_binomial(2, 4).evaluate(2) == 35
    with pytest.raises(ValueError):
        gaussian_binomial(3, 2)


def test_gaussian_binomial_vs_brute_subspace_count():
    # independent enumeration over small prime fields (q^(n*k) span tuples)
    for q, n_max in ((2, 4), (3, 3)):
        for n in range(n_max + 1):
            for k in range(n + 1):
                assert gaussian_binomial(k, n).evaluate(q) == brute_subspace_count(
                    k, n, q
                )
    assert gaussian_binomial(2, 4).evaluate(2) == brute_subspace_count(2, 4, 2) == 35


def test_gaussian_binomial_symmetry_and_pascal():
    for n in range(9):
        for k in range(n + 1):
            assert gaussian_binomial(k, n) == gaussian_binomial(n - k, n)
            if 1 <= k <= n - 1:
                rec = QPoly.monomial(k) * gaussian_binomial(k, n - 1) + gaussian_binomial(
                    k - 1, n - 1
                )
                assert gaussian_binomial(k, n) == rec


def test_q_int_and_factorial():
    assert q_int(3) == QPoly((1, 1, 1))
    assert q_factorial(0) == ONE
    assert q_factorial(2) == Q + 1
    assert q_factorial(3) == (Q + 1) * QPoly((1, 1, 1))


def test_eval_at():
    assert eval_at(Q + 1, 4) == 5
    assert eval_at(ZERO, 17) == 0
    assert eval_at(gaussian_binomial(1, 3), 2) == 7
    assert eval_at(QRat(ONE, Q + 1), 2) == Fraction(1, 3)
    with pytest.raises(ZeroDivisionError):
        eval_at(QRat(ONE, Q - 2), 2)
    with pytest.raises(TypeError):
        eval_at(3, 2)
