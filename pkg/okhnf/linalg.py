"""
Exact linear algebra over Z and Q.

Matrices are plain lists of rows. Integer matrices hold Python ints,
rational ones hold fractions.Fraction; nothing here ever rounds.

Row conventions throughout: vectors are row vectors and systems are solved
from the left (x·a = b), which matches how lattice and ideal bases are stored
(one basis vector per row).
"""

import logging
from fractions import Fraction

from sympy import QQ, ZZ

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex
from sympy.polys.matrices import DomainMatrix

from .exceptions import InvalidConfig, NoSolution, NotPositiveDefinite, Singular

L = logging.getLogger("okhnf.linalg")

# size-reduction parameter for LLL
ETA = Fraction(1, 2)

DEFAULT_LLL_DELTA = Fraction(3, 4)


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v, m):
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(x * row[j] for x, row in zip(v, m)) for j in range(len(m[0]))]


def _combine_rows(m, r, i, x, y, p, q):
    # (row_r, row_i) <- (x*row_r + y*row_i, p*row_r + q*row_i)
    row_r, row_i = m[r], m[i]
    m[r] = [x * a + y * b for a, b in zip(row_r, row_i)]
    m[i] = [p * a + q * b for a, b in zip(row_r, row_i)]


def _echelon(m, with_transform):
    h = [[int(e) for e in row] for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity(rows) if with_transform else None

    r = 0
    for c in range(cols):
        if r == rows:
            break
        # smallest row index with a nonzero entry
        pivot = next((i for i in range(r, rows) if h[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            h[r], h[pivot] = h[pivot], h[r]
            if u is not None:
                u[r], u[pivot] = u[pivot], u[r]

        for i in range(r + 1, rows):
            b = h[i][c]
            if not b:
                continue
            a = h[r][c]
            x, y, g = (int(v) for v in igcdex(a, b))
            # [[x, y], [-b/g, a/g]] has determinant 1
            p, q = -b // g, a // g
            _combine_rows(h, r, i, x, y, p, q)
            if u is not None:
                _combine_rows(u, r, i, x, y, p, q)

        if h[r][c] < 0:
            h[r] = [-e for e in h[r]]
            if u is not None:
                u[r] = [-e for e in u[r]]

        pivot_value = h[r][c]
        for i in range(r):
            q = h[i][c] // pivot_value
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                if u is not None:
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1

    return h, u


def hnf_int(m):
    """
    Row Hermite normal form of an integer matrix.

    Returns (h, u) with h = u·m and u unimodular. Pivots are positive, the
    entries above a pivot are reduced into [0, pivot) and zero rows come last.
    Pivot rows are picked as the smallest row index holding a nonzero entry.
    """
    return _echelon(m, with_transform=True)


def hnf_lower(m):
    """
    Lower-triangular HNF of a full-rank row lattice.

    Row i has its pivot in column i and nothing to the right of it; the entries
    below each pivot are reduced into [0, pivot). This is the form ideal bases
    are stored in: row 0 is then (min(I ∩ Z), 0, ..., 0).

    Computed as the ordinary HNF of the column-reversed matrix.
    """
    h, _ = _echelon([row[::-1] for row in m], with_transform=False)
    h = [row[::-1] for row in h if any(row)]
    return h[::-1]


def lattice_contains(h, v):
    """Whether the integer vector v lies in the row lattice of the lower-triangular HNF h."""
    v = list(v)
    for i in reversed(range(len(h))):
        pivot = h[i][i]
        if v[i] % pivot:
            return False
        q = v[i] // pivot
        if q:
            v = [a - q * b for a, b in zip(v, h[i])]
    return not any(v)


def _qq(e):
    e = Fraction(e)
    return QQ(e.numerator, e.denominator)


def _qq_matrix(rows, ncols):
    return DomainMatrix([[_qq(e) for e in row] for row in rows], (len(rows), ncols), QQ)


def _to_fraction(e):
    return Fraction(int(e.numerator), int(e.denominator))


def rank_rational(m):
    if not m:
        return 0
    return _qq_matrix(m, len(m[0])).rank()


def solve_rational(a, b):
    """
    Returns one rational x with x·a = b, free variables set to zero.
    Raises NoSolution when b is outside the row space of a.
    """
    m = len(a)
    n = len(b)
    if m and len(a[0]) != n:
        raise ValueError(f"Shape mismatch: {m}x{len(a[0])} matrix, vector of {n}")

    # aᵀ·xᵀ = bᵀ, as the augmented matrix [aᵀ | bᵀ]
    aug = _qq_matrix([[a[i][j] for i in range(m)] + [b[j]] for j in range(n)], m + 1)
    reduced, pivots = aug.rref()
    if m in pivots:
        raise NoSolution("Vector is not in the row space of the matrix")

    rows = reduced.to_list()
    x = [Fraction(0)] * m
    for row, c in zip(rows, pivots):
        x[c] = _to_fraction(row[m])
    return x


def inverse_rational(m):
    n = len(m)
    matrix = _qq_matrix(m, n)
    if not matrix.det():
        raise Singular("Matrix is not invertible")
    return [[_to_fraction(e) for e in row] for row in matrix.inv().to_list()]


def nullspace_int(a):
    """
    Saturated integer basis of the left nullspace {x : x·a = 0}, as rows in HNF.
    Empty when the rows of a are independent.
    """
    h, u = hnf_int(a)
    kernel = [u[i] for i, row in enumerate(h) if not any(row)]
    if not kernel:
        return []
    hk, _ = _echelon(kernel, with_transform=False)
    return [row for row in hk if any(row)]


def det_int(m):
    """Determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    return int(DomainMatrix([[ZZ(int(e)) for e in row] for row in m], (n, n), ZZ).det())


def _inner_products(basis, gram):
    images = [vec_mat(row, gram) for row in basis]
    return [[sum(x * y for x, y in zip(img, row)) for row in basis] for img in images]


def gram_schmidt(basis, gram):
    """
    Exact Gram-Schmidt data of the rows of basis under <x, y> = x·gram·yᵀ.

    Returns (mu, bstar) where mu[i][j] are the projection coefficients (mu[i][i] = 1)
    and bstar[i] the squared lengths of the orthogonalized vectors.
    """
    n = len(basis)
    products = _inner_products(basis, gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = products[i][j] - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
            mu[i][j] = Fraction(s) / bstar[j]
        bstar[i] = Fraction(products[i][i]) - sum(
            mu[i][j] ** 2 * bstar[j] for j in range(i)
        )
        if bstar[i] <= 0:
            raise NotPositiveDefinite(
                "Non-positive squared length during Gram-Schmidt: "
                "the basis is dependent or the Gram matrix is not positive definite"
            )
        mu[i][i] = Fraction(1)
    return mu, bstar


def is_lll_reduced(basis, gram, delta=DEFAULT_LLL_DELTA):
    mu, bstar = gram_schmidt(basis, gram)
    n = len(basis)
    for i in range(n):
        if any(abs(mu[i][j]) > ETA for j in range(i)):
            return False
    return all(
        bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1] for k in range(1, n)
    )


def lll_reduce(basis, gram, delta=DEFAULT_LLL_DELTA):
    """
    LLL reduction of the rows of basis with respect to an arbitrary positive
    definite rational Gram matrix, in exact arithmetic.

    Returns (reduced, transform) with reduced = transform·basis.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise InvalidConfig(f"LLL delta must satisfy 1/4 < delta <= 1, got {delta}")

    b = [list(row) for row in basis]
    n = len(b)
    t = identity(n)
    mu, bstar = gram_schmidt(b, gram)

    swaps = 0
    k = 1
    while k < n:
        for j in reversed(range(k)):
            if abs(mu[k][j]) > ETA:
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                t[k] = [x - q * y for x, y in zip(t[k], t[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q

        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            t[k - 1], t[k] = t[k], t[k - 1]
            mu, bstar = gram_schmidt(b, gram)
            swaps += 1
            k = max(k - 1, 1)

    L.debug("LLL: dimension %d, %d swaps", n, swaps)
    return b, t
