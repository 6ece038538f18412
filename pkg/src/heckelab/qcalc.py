"""Exact arithmetic in Z[q] and its fraction field, plus q-combinatorial counts.

A QPoly is an integer-coefficient polynomial in the formal variable q, stored
little-endian: coeffs[i] is the coefficient of q^i.  A QRat is a reduced ratio
num/den of two QPolys; every structure constant of the Hall algebra of
Coh(P^1) lives here, and the ones with enumerative meaning reduce to honest
polynomials (denominator 1).

Canonical form for QRat: gcd(num, den) = 1 in Z[q] (including integer
content) and the leading coefficient of den is positive, so equality of
values is equality of representations.  gcd in Z[q] is computed by the
content / primitive-part splitting with a pseudo-remainder Euclidean loop.

The Grassmannian point count #Gr(k,n)(F_q) is the Gaussian binomial
    [n choose k]_q = prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{k-i} - 1),
an exact polynomial division since the denominator product is monic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd

__all__ = [
    "QPoly",
    "QRat",
    "ZERO",
    "ONE",
    "Q",
    "gaussian_binomial",
    "q_int",
    "q_factorial",
    "eval_at",
]


class QPoly:
    """Integer-coefficient polynomial in q; immutable, little-endian coeffs."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @staticmethod
    def monomial(k: int, c: int = 1) -> "QPoly":
        """c * q^k."""
        assert k >= 0
        return QPoly((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("QPoly", self.coeffs))

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QPoly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        assert k >= 0
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Long division over Z; every quotient step must divide exactly."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.leading()
        quo = [0] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < db:
                break
            c, r = divmod(rem[-1], lb)
            if r:
                raise ValueError(f"non-exact division: {self} by {other}")
            shift = len(rem) - 1 - db
            quo[shift] = c
            for i, cb in enumerate(other.coeffs):
                rem[shift + i] -= c * cb
            rem.pop()
        return QPoly(quo), QPoly(rem)

    def __floordiv__(self, other):
        if isinstance(other, int):
            other = QPoly(other)
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"non-exact division: {self} by {other}")
        return q

    def content(self) -> int:
        """gcd of the coefficients, nonnegative; 0 for the zero polynomial."""
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, abs(c))
        return g

    def primitive(self) -> "QPoly":
        g = self.content()
        if g <= 1:
            return self
        return QPoly(tuple(c // g for c in self.coeffs))

    def evaluate(self, q0):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def pretty(self) -> str:
        """Human form like 'q^2+q+1', highest power first."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self):
        return f"QPoly({self.pretty()})"


ZERO = QPoly()
ONE = QPoly(1)
Q = QPoly((0, 1))


def _pseudo_rem(a: QPoly, b: QPoly) -> QPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    d = a.degree - b.degree + 1
    scaled = a * QPoly(b.leading() ** max(d, 0))
    _, r = scaled.divmod(b)
    return r


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """gcd in Z[q], positive leading coefficient (content included)."""
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    else:
        cont = int_gcd(a.content(), b.content())
        a, b = a.primitive(), b.primitive()
        while not b.is_zero():
            r = _pseudo_rem(a, b).primitive()
            a, b = b, r
        g = a * QPoly(cont)
    if g.leading() < 0:
        g = -g
    return g


class QRat:
    """Reduced ratio of QPolys; canonical form, decidable equality."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        if isinstance(num, int):
            num = QPoly(num)
        if isinstance(den, int):
            den = QPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if g != ONE:
                num = num // g
                den = den // g
            if den.leading() < 0:
                num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QRat is immutable")

    @staticmethod
    def of(p) -> "QRat":
        if isinstance(p, QRat):
            return p
        return QRat(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> QPoly:
        """The numerator, after asserting the denominator reduced to 1."""
        if self.den != ONE:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, QPoly)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("QRat", self.num.coeffs, self.den.coeffs))

    def __neg__(self):
        return QRat(-self.num, self.den)

    def __add__(self, other):
        other = QRat.of(other)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QRat.of(other))

    def __rsub__(self, other):
        return QRat.of(other) + (-self)

    def __mul__(self, other):
        other = QRat.of(other)
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QRat.of(other)
        if other.is_zero():
            raise ZeroDivisionError("QRat division by zero")
        return QRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return QRat.of(other) / self

    def evaluate(self, q0) -> Fraction:
        d = self.den.evaluate(q0)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at q={q0}")
        return Fraction(self.num.evaluate(q0), d)

    def pretty(self) -> str:
        if self.den == ONE:
            return self.num.pretty()
        return f"({self.num.pretty()})/({self.den.pretty()})"

    def __repr__(self):
        return f"QRat({self.pretty()})"


RAT_ZERO = QRat(0)
RAT_ONE = QRat(1)


@lru_cache(maxsize=None)
def gaussian_binomial(k: int, n: int) -> QPoly:
    """#Gr(k,n)(F_q) as a polynomial in q.

    Exact product-formula division; symmetric in k <-> n-k.
    """
    if not 0 <= k <= n:
        raise ValueError(f"gaussian_binomial needs 0 <= k <= n, got ({k}, {n})")
    num, den = ONE, ONE
    for i in range(k):
        num = num * (QPoly.monomial(n - i) - 1)
        den = den * (QPoly.monomial(k - i) - 1)
    quo, rem = num.divmod(den)
    assert rem.is_zero()
    return quo


@lru_cache(maxsize=None)
def q_int(a: int) -> QPoly:
    """[a]_q = 1 + q + ... + q^{a-1} = (q^a - 1)/(q - 1)."""
    assert a >= 0
    return QPoly((1,) * a)


@lru_cache(maxsize=None)
def q_factorial(a: int) -> QPoly:
    """[a]_q! = prod_{i=1}^{a} [i]_q."""
    assert a >= 0
    out = ONE
    for i in range(1, a + 1):
        out = out * q_int(i)
    return out


def eval_at(p, q0):
    """Evaluate a QPoly (-> int) or QRat (-> Fraction) at an integer q0."""
    if isinstance(p, QPoly):
        return p.evaluate(q0)
    if isinstance(p, QRat):
        return p.evaluate(q0)
    raise TypeError(f"eval_at expects QPoly or QRat, got {type(p).__name__}")
