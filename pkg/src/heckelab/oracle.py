"""Brute-force ground truth over finite fields.

Weight-r Hecke modifications of E at x correspond to (n-r)-dimensional
kappa(x)-subspaces W of the fiber kappa(x)^n: the subsheaf is
E'(U) = {s in E(U) : s(x) in W}.  This module enumerates the subspaces
cell-by-cell (Schubert decomposition of the Grassmannian), recovers the
splitting type of each kernel subsheaf from twisted section counts, and
cross-validates the closed formulas: multiplicity censuses, automorphism
orders, constrained monomorphism counts, and Smith normal forms over
F_q[t].

Field elements of F_{q^d} = F_q[t]/(poly) are plain int tuples of length d
(coefficients of the reduced representative, little-endian); q must be
prime.  All linear algebra over the extension is expanded to F_q when a
dimension over the base field is needed.
"""

from __future__ import annotations

import os
from itertools import combinations, product

from .bundles import BundleType, ClosedPoint
from .qcalc import gaussian_binomial

__all__ = [
    "BudgetExceeded",
    "Field",
    "FieldElem",
    "FiberSubspace",
    "enumerate_subspaces",
    "splitting_type",
    "brute_multiplicity",
    "smith_normal_form",
    "brute_aut_order",
    "count_monomorphisms",
    "subspace_count",
    "default_budget",
    "fp_poly_det",
    "matrix_rank",
]

#: an element of F_{q^d}: reduced residue as little-endian int tuple
FieldElem = tuple

SUBSPACE_BUDGET = 10**6
MATRIX_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Enumeration would exceed the configured budget; never truncated."""


def default_budget(kind: str) -> int:
    env = os.environ.get("HECKELAB_BUDGET")
    if env:
        return int(env)
    return SUBSPACE_BUDGET if kind == "subspaces" else MATRIX_BUDGET


# --- F_p[t] arithmetic on little-endian int tuples -------------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ca = a[i] if i < len(a) else 0
        cb = b[i] if i < len(b) else 0
        out[i] = (ca + cb) % p
    return _trim(out)


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ca = a[i] if i < len(a) else 0
        cb = b[i] if i < len(b) else 0
        out[i] = (ca - cb) % p
    return _trim(out)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _fp_scale(a, c, p):
    c %= p
    return _trim(x * c % p for x in a)


def _fp_divmod(a, b, p):
    """Division in F_p[t]; b nonzero."""
    assert b, "division by zero polynomial"
    inv = pow(b[-1], -1, p)
    rem = list(a)
    quo = [0] * max(0, len(rem) - len(b) + 1)
    while len(rem) >= len(b):
        if rem[-1] == 0:
            rem.pop()
            continue
        c = rem[-1] * inv % p
        shift = len(rem) - len(b)
        quo[shift] = c
        for i, cb in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * cb) % p
        rem.pop()
    return _trim(quo), _trim(rem)


def _fp_monic(a, p):
    if not a:
        return a
    return _fp_scale(a, pow(a[-1], -1, p), p)


def fp_poly_det(M, p):
    """Determinant of a square matrix of F_p[t] polynomials (cofactors)."""
    n = len(M)
    if n == 1:
        return _trim(M[0][0])
    out = ()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = _fp_mul(M[0][j], fp_poly_det(minor, p), p)
        out = _fp_add(out, term, p) if j % 2 == 0 else _fp_sub(out, term, p)
    return out


# --- the residue field F_{q^d} --------------------------------------------


def _find_irreducible(q: int, d: int):
    """First monic irreducible of degree d over F_q in lexicographic order."""
    from .bundles import _is_irreducible

    if d == 1:
        return (0, 1)
    for tail in product(range(q), repeat=d):
        poly = tuple(tail) + (1,)
        if poly[0] != 0 or d == 1:
            if _is_irreducible(poly, q):
                return poly
    raise RuntimeError(f"no irreducible of degree {d} over F_{q}")


class Field:
    """F_{q^d} = F_q[t]/(poly) with prime q; elements are int tuples."""

    def __init__(self, q: int, d: int, poly=None):
        from .bundles import _is_prime

        if not _is_prime(q):
            raise ValueError(f"oracle fields need prime q, got {q}")
        if poly is None:
            poly = _find_irreducible(q, d)
        poly = tuple(int(c) % q for c in poly)
        if len(poly) - 1 != d or poly[-1] != 1:
            raise ValueError("field poly must be monic of degree d")
        self.q = q
        self.d = d
        self.poly = poly
        self.size = q**d
        self.zero = ()
        self.one = (1,)

    @staticmethod
    def of_point(x: ClosedPoint) -> "Field":
        if x.poly is None:
            raise ValueError("point has no explicit polynomial")
        return Field(x.q, x.d, x.poly)

    def elements(self):
        """All q^d elements in counting order: 0, 1, ..., t, t+1, ..."""
        for digits in product(range(self.q), repeat=self.d):
            yield _trim(reversed(digits))

    def add(self, a, b):
        return _fp_add(a, b, self.q)

    def sub(self, a, b):
        return _fp_sub(a, b, self.q)

    def neg(self, a):
        return _trim(-c % self.q for c in a)

    def mul(self, a, b):
        _, r = _fp_divmod(_fp_mul(a, b, self.q), self.poly, self.q)
        return r

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("field inverse of zero")
        # a^(q^d - 2) by square-and-multiply
        out, base, e = self.one, a, self.size - 2
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def reduce(self, coeffs):
        """Reduce an arbitrary F_q[t] polynomial into the field."""
        _, r = _fp_divmod(_trim(c % self.q for c in coeffs), self.poly, self.q)
        return r

    def expand(self, a) -> tuple:
        """d base-field coordinates of an element."""
        return tuple(a[i] if i < len(a) else 0 for i in range(self.d))


def matrix_rank(field: Field, rows) -> int:
    """Rank of a matrix with Field entries, by Gaussian elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, c) for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [
                    field.sub(a, field.mul(c, b)) for a, b in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _fq_matrix_rank(rows, p) -> int:
    """Rank over the prime field; rows are int lists."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [c * inv % p for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# --- subspace enumeration (Schubert cells) ---------------------------------


class FiberSubspace:
    """(n-r)-dim subspace of kappa(x)^n as a reduced row-echelon basis."""

    __slots__ = ("field", "basis", "pivots")

    def __init__(self, field: Field, basis, pivots):
        self.field = field
        self.basis = basis  # tuple of rows; row = tuple of field elems
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_residual(self, v):
        """Reduce v by the basis; zero residual iff v in the subspace.

        Returns the residual restricted to non-pivot columns (kappa-linear
        in v), the quotient-map coordinates used for section counting.
        """
        f = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        n = len(v)
        nonpivots = [j for j in range(n) if j not in self.pivots]
        return tuple(v[j] for j in nonpivots)

    def __repr__(self):
        return f"FiberSubspace(dim={self.dim}, pivots={self.pivots})"


def enumerate_subspaces(n: int, r: int, field: Field, budget: int | None = None):
    """Yield every codim-r subspace of kappa^n exactly once, cell by cell.

    Cells are indexed by pivot-column sets; free entries sit right of their
    pivot in non-pivot columns.  The total count, checked against the budget
    before any work, is #Gr(n-r, n)(F_{q^d}).
    """
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    k = n - r
    total = gaussian_binomial(k, n).evaluate(field.size)
    limit = budget if budget is not None else default_budget("subspaces")
    if total > limit:
        raise BudgetExceeded(f"{total} subspaces exceed budget {limit}")
    zero, one = field.zero, field.one
    for pivots in combinations(range(n), k):
        free = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        template = []
        for i in range(k):
            row = [zero] * n
            row[pivots[i]] = one
            template.append(row)
        for values in product(field.elements(), repeat=len(free)):
            rows = [row[:] for row in template]
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield FiberSubspace(field, tuple(tuple(r_) for r_ in rows), pivots)


def subspace_count(k: int, n: int, q0: int, budget: int | None = None) -> int:
    """#Gr(k,n)(F_{q0}) by honest enumeration; q0 a prime power p^e."""
    p = next(c for c in (2, 3, 5, 7, 11, 13) if q0 % c == 0)
    e, m = 0, q0
    while m > 1:
        if m % p:
            raise ValueError(f"{q0} is not a prime power")
        m //= p
        e += 1
    field = Field(p, e)
    return sum(1 for _ in enumerate_subspaces(n, n - k, field, budget=budget))


# --- splitting type from section counts ------------------------------------


def _h0_constrained(E: BundleType, W: FiberSubspace, field: Field, k: int) -> int:
    """dim_{F_q} of {s in H^0(E(k)) : ev_x(s) in W}.

    H^0(E(k)) has basis t^j in component i for 0 <= j <= d_i + k; the value
    at x is the reduction mod the point polynomial, a kappa(x)^n vector.
    Twisting scales every coordinate by the same unit, so W is the same
    condition for every k.
    """
    n = E.rank
    dims = [max(0, di + k + 1) for di in E.degrees]
    nsec = sum(dims)
    if nsec == 0:
        return 0
    # t^j mod poly, as far as needed
    maxpow = max(dims)
    tpow = [field.one]
    for _ in range(maxpow - 1):
        tpow.append(field.mul(tpow[-1], (0, 1)))
    rows = []
    for i in range(n):
        for j in range(dims[i]):
            v = [field.zero] * n
            v[i] = tpow[j]
            res = W.contains_residual(v)
            rows.append([c for elem in res for c in field.expand(elem)])
    rank = _fq_matrix_rank(rows, field.q)
    return nsec - rank


def splitting_type(E: BundleType, W: FiberSubspace, x: ClosedPoint) -> BundleType:
    """Splitting type of the kernel subsheaf E' = {s : s(x) in W}.

    h^0(E'(k)) - h^0(E'(k-1)) = #{i : d_i' >= -k}; scanning k recovers the
    degree multiset.  The scan must reach k = d - min(d_i) at the top so the
    lowest possible component degree min(d_i) - d is visible.
    """
    if x.poly is None:
        raise ValueError("splitting_type needs a point with explicit poly")
    field = Field.of_point(x)
    n = E.rank
    r = n - W.dim
    lo = -(max(E.degrees) + x.d + 1)
    hi = max(max(E.degrees), x.d - min(E.degrees))
    h0 = {lo: _h0_constrained(E, W, field, lo)}
    assert h0[lo] == 0
    counts = {}
    prev = 0
    prev_c = 0
    for k in range(lo + 1, hi + 1):
        cur = _h0_constrained(E, W, field, k)
        c = cur - prev
        if c - prev_c:
            counts[-k] = c - prev_c
        prev, prev_c = cur, c
    degrees = []
    for deg, mult in counts.items():
        degrees.extend([deg] * mult)
    out = BundleType(degrees)
    assert out.rank == n and out.degree == E.degree - r * x.d
    assert all(0 <= a - b <= x.d for a, b in zip(E.degrees, out.degrees))
    return out


def brute_multiplicity(E: BundleType, x: ClosedPoint, r: int, budget=None):
    """Census of splitting types over all codim-r subspaces of the fiber."""
    field = Field.of_point(x)
    census: dict[BundleType, int] = {}
    for W in enumerate_subspaces(E.rank, r, field, budget=budget):
        t = splitting_type(E, W, x)
        census[t] = census.get(t, 0) + 1
    assert sum(census.values()) == gaussian_binomial(E.rank - r, E.rank).evaluate(
        field.size
    )
    return dict(sorted(census.items()))


# --- Smith normal form over F_q[t] -----------------------------------------


def _mat_id(n):
    return [[((1,) if i == j else ()) for j in range(n)] for i in range(n)]


def _poly_mat_mul(A, B, p):
    n, m, k = len(A), len(B[0]), len(B)
    out = [[() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = ()
            for l in range(k):
                acc = _fp_add(acc, _fp_mul(A[i][l], B[l][j], p), p)
            out[i][j] = acc
    return out


def smith_normal_form(M, q: int):
    """SNF over F_q[t]: returns (diag, L, R) with M = L*diag*R.

    diag entries are monic with alpha_i | alpha_{i+1}; L and R are products
    of elementary matrices, hence invertible over F_q[t].  Euclidean
    reduction: repeatedly move a minimal-degree entry to the pivot and
    reduce its row and column by division with remainder.
    """
    A = [[_trim(int(c) % q for c in entry) for entry in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    L = _mat_id(n)
    R = _mat_id(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in L:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        R[i], R[j] = R[j], R[i]

    def row_sub(i, j, f):
        # row_i -= f * row_j ; compensate L by col_j += f * col_i
        for col in range(n):
            A[i][col] = _fp_sub(A[i][col], _fp_mul(f, A[j][col], q), q)
        for row in L:
            row[j] = _fp_add(row[j], _fp_mul(f, row[i], q), q)

    def col_sub(i, j, f):
        # col_i -= f * col_j ; compensate R by row_j += f * row_i
        for row in A:
            row[i] = _fp_sub(row[i], _fp_mul(f, row[j], q), q)
        R[j] = [_fp_add(a, _fp_mul(f, b, q), q) for a, b in zip(R[j], R[i])]

    for k in range(n):
        while True:
            # minimal-degree nonzero entry of the trailing submatrix
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if A[i][j] and (best is None or len(A[i][j]) < len(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ValueError("singular matrix has no Smith normal form here")
            if best != (k, k):
                if best[0] != k:
                    swap_rows(k, best[0])
                if best[1] != k:
                    swap_cols(k, best[1])
            dirty = False
            for i in range(k + 1, n):
                if A[i][k]:
                    f, rem = _fp_divmod(A[i][k], A[k][k], q)
                    row_sub(i, k, f)
                    if rem:
                        dirty = True
            for j in range(k + 1, n):
                if A[k][j]:
                    f, rem = _fp_divmod(A[k][j], A[k][k], q)
                    col_sub(j, k, f)
                    if rem:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing submatrix
            stray = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if A[i][j] and _fp_divmod(A[i][j], A[k][k], q)[1]:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            row_sub(k, stray, _fp_scale((1,), q - 1, q))  # row_k += row_stray

    diag = []
    for k in range(n):
        lead = A[k][k][-1]
        if lead != 1:
            inv = pow(lead, -1, q)
            A[k][k] = _fp_scale(A[k][k], inv, q)
            for row in L:
                row[k] = _fp_scale(row[k], lead, q)
        diag.append(A[k][k])
    for i in range(n - 1):
        assert not _fp_divmod(diag[i + 1], diag[i], q)[1], "divisibility chain broken"
    D = [[diag[i] if i == j else () for j in range(n)] for i in range(n)]
    check = _poly_mat_mul(_poly_mat_mul(L, D, q), R, q)
    orig = [[_trim(int(c) % q for c in entry) for entry in row] for row in M]
    assert check == orig, "SNF verification L*D*R == M failed"
    return diag, L, R


# --- automorphisms and monomorphisms ---------------------------------------


def _all_polys_up_to(deg_bound: int, q: int):
    """All polynomials of degree <= deg_bound (dimension deg_bound+1)."""
    if deg_bound < 0:
        return [()]
    return [_trim(c) for c in product(range(q), repeat=deg_bound + 1)]


def brute_aut_order(E: BundleType, q: int, budget=None) -> int:
    """Count invertible endomorphism matrices of E over F_q.

    Entry (i,j) maps O(d_j) -> O(d_i): a polynomial of degree <= d_i - d_j.
    Invertibility is the block-triangular criterion: each equal-degree
    diagonal block (constant entries) lies in GL over F_q.
    """
    ds = E.degrees
    n = len(ds)
    dims = [[max(0, ds[i] - ds[j] + 1) for j in range(n)] for i in range(n)]
    total = 1
    for row in dims:
        for dim in row:
            total *= q**dim
    limit = budget if budget is not None else default_budget("matrices")
    if total > limit:
        raise BudgetExceeded(f"{total} endomorphisms exceed budget {limit}")
    spaces = [[_all_polys_up_to(dims[i][j] - 1, q) for j in range(n)] for i in range(n)]
    groups = []
    start = 0
    for _, l in E.grouped():
        groups.append(range(start, start + l))
        start += l
    count = 0
    for flat in product(*(spaces[i][j] for i in range(n) for j in range(n))):
        mat = [flat[i * n : (i + 1) * n] for i in range(n)]
        ok = True
        for g in groups:
            block = [[(mat[i][j][0] if mat[i][j] else 0) for j in g] for i in g]
            if _fq_matrix_rank([row[:] for row in block], q) != len(block):
                ok = False
                break
        if ok:
            count += 1
    return count


def count_monomorphisms(
    E_prime: BundleType, E: BundleType, x: ClosedPoint, budget=None
) -> int:
    """Count matrices phi: E' -> E with det(phi) a unit times the point poly.

    Entry (i,j) maps the j-th component O(a_j) of E' into the i-th component
    O(d_i) of E: a polynomial of degree <= d_i - a_j.  Each weight-one
    modification class contributes #Aut(E') matrices.
    """
    if x.poly is None:
        raise ValueError("count_monomorphisms needs a point with explicit poly")
    if E.degree - E_prime.degree != x.d:
        raise ValueError("weight-one count needs deg E - deg E' = d")
    q = x.q
    n = E.rank
    ds, as_ = E.degrees, E_prime.degrees
    dims = [[max(0, ds[i] - as_[j] + 1) for j in range(n)] for i in range(n)]
    total = 1
    for row in dims:
        for dim in row:
            total *= q**dim
    limit = budget if budget is not None else default_budget("matrices")
    if total > limit:
        raise BudgetExceeded(f"{total} matrices exceed budget {limit}")
    spaces = [[_all_polys_up_to(dims[i][j] - 1, q) for j in range(n)] for i in range(n)]
    target = _trim(x.poly)
    count = 0
    for flat in product(*(spaces[i][j] for i in range(n) for j in range(n))):
        mat = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
        det = fp_poly_det(mat, q)
        if det and len(det) == len(target) and _fp_monic(det, q) == target:
            count += 1
    return count
