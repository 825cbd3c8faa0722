"""
The determinantal ideal 𝔤(M) = det(A)·𝔞₁⋯𝔞ₙ of a pseudo-matrix.

det(A) is computed modulo a rational prime p with a division-free
(Berkowitz) determinant over O_K/pO_K and lifted to the symmetric residue
system. p is chosen above an a-priori bound on the coordinates of det(A), so
the lift is exact.
"""

import functools
import logging
import math
import operator

from sympy import nextprime
from sympy.ntheory.modular import crt

from .exceptions import InvalidConfig, NonIntegralEntries, ZeroDeterminant
from .ideal import FracIdeal
from .number_field import FieldElement

L = logging.getLogger("okhnf.determinant")

P_STRATEGIES = ("single", "multi")

# the "multi" strategy draws primes just above this
WORD_PRIME_FLOOR = 2**62


class ResidueRing:
    """O_K/pO_K on integer coordinate tuples, reduced into [0, p)."""

    def __init__(self, field, p):
        self.field = field
        self.p = p
        d = field.degree
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)

    def reduce(self, coords):
        return tuple(c % self.p for c in coords)

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def mul(self, x, y):
        return self.reduce(self.field.mul_coords(x, y))

    def dot(self, xs, ys):
        total = self.zero
        for x, y in zip(xs, ys):
            total = self.add(total, self.mul(x, y))
        return total


def _berkowitz_vector(m, ring):
    """
    Coefficients of the characteristic polynomial det(t·I - m), leading
    coefficient first, using only ring additions and multiplications.
    """
    n = len(m)
    if n == 0:
        return [ring.one]
    if n == 1:
        return [ring.one, ring.neg(m[0][0])]

    a = m[0][0]
    row = m[0][1:]
    col = [r[0] for r in m[1:]]
    sub = [r[1:] for r in m[1:]]

    # sub^k · col for k = 0 .. n-2
    powers = [col]
    for _ in range(n - 2):
        powers.append([ring.dot(r, powers[-1]) for r in sub])

    toeplitz = [ring.one, ring.neg(a)] + [ring.neg(ring.dot(row, v)) for v in powers]
    tail = _berkowitz_vector(sub, ring)

    result = []
    for i in range(n + 1):
        total = ring.zero
        for j in range(min(i, n - 1) + 1):
            total = ring.add(total, ring.mul(toeplitz[i - j], tail[j]))
        result.append(total)
    return result


def _coordinate_matrix(a):
    rows = []
    for row in a:
        coords = []
        for x in row:
            if isinstance(x, FieldElement):
                if x.den != 1:
                    raise NonIntegralEntries("Entries must be integral")
                coords.append(x.coords)
            else:
                coords.append(tuple(int(c) for c in x))
        rows.append(coords)
    return rows


def det_mod_p(a, p, field=None):
    """
    Determinant of a square matrix over O_K modulo pO_K, as an element with
    coordinates in [0, p). Entries are FieldElements (integral) or integer
    coordinate tuples, in which case `field` is required.
    """
    if field is None:
        field = a[0][0].field
    ring = ResidueRing(field, p)
    m = [[ring.reduce(x) for x in row] for row in _coordinate_matrix(a)]
    n = len(m)
    det = _berkowitz_vector(m, ring)[n]
    if n % 2:
        det = ring.neg(det)
    return FieldElement(field, det)


def _symmetric(c, p):
    c %= p
    return c - p if c > p // 2 else c


def coordinate_bound(field, coords):
    """
    An integer B with |cᵢ| ≤ B for every ω-coordinate cᵢ of the determinant
    of the integral matrix with entry coordinates `coords`.

    The larger of two bounds: a Hadamard-type bound through the embeddings,
    and the bound n!·C^(n-1)·∏ᵢ maxⱼ|aᵢⱼ|∞ obtained by expanding over the
    multiplication table, C = maxₖ Σᵢⱼ |a⁽ᵏ⁾ᵢⱼ|.
    """
    n = len(coords)
    d = field.degree

    table_constant = max(
        1,
        max(
            sum(abs(field.mult_table[i][j][k]) for i in range(d) for j in range(d))
            for k in range(d)
        ),
    )
    row_max = [max(1, max(abs(c) for x in row for c in x)) for row in coords]
    table_bound = (
        math.factorial(n) * table_constant ** (n - 1) * math.prod(row_max)
    )

    # |σ(x)|² ≤ M^(2d)·d³·2^(d²)·|Δ_K| for every entry x
    largest = max(row_max)
    embedding_sq = largest ** (2 * d) * d**3 * 2 ** (d * d) * abs(field.discriminant)
    # ‖det‖² ≤ max(n, d)·(embedding bound)^n·n^n, coordinates ≤ 2^(3d/2)·‖det‖
    det_norm_sq = max(n, d) * embedding_sq**n * n**n
    hadamard_bound = math.isqrt(2 ** (3 * d) * det_norm_sq) + 1

    return max(table_bound, hadamard_bound)


def _det_single_prime(field, coords, bound):
    p = int(nextprime(2 * bound))
    L.info("determinant modulo a single prime of %d bits", p.bit_length())
    residue = det_mod_p(coords, p, field)
    return [_symmetric(c, p) for c in residue.coords]


def _det_multi_prime(field, coords, bound):
    primes = []
    residues = []
    product = 1
    candidate = WORD_PRIME_FLOOR
    while product <= 2 * bound:
        candidate = int(nextprime(candidate))
        primes.append(candidate)
        residues.append(det_mod_p(coords, candidate, field).coords)
        product *= candidate
    L.info("determinant modulo %d word-size primes", len(primes))
    return [
        int(crt(primes, [r[k] for r in residues], symmetric=True)[0])
        for k in range(field.degree)
    ]


def exact_det(field, entries, p_strategy="single"):
    """Exact determinant of a square matrix of integral elements."""
    if p_strategy not in P_STRATEGIES:
        raise InvalidConfig(f"Unknown prime strategy {p_strategy!r}")
    coords = _coordinate_matrix(entries)
    bound = coordinate_bound(field, coords)
    if p_strategy == "single":
        det = _det_single_prime(field, coords, bound)
    else:
        det = _det_multi_prime(field, coords, bound)
    return FieldElement(field, det)


def determinantal_ideal(pm, p_strategy="single", allow_scaling=True):
    """
    𝔤 = det(A)·𝔞₁⋯𝔞ₙ. Non-integral entries are handled as det(kA)/kⁿ with k
    their common denominator, unless allow_scaling is off.
    """
    field = pm.field
    n = pm.n
    k = functools.reduce(math.lcm, (x.den for row in pm.entries for x in row), 1)
    if k != 1 and not allow_scaling:
        raise NonIntegralEntries("Pseudo-matrix entries are not integral")
    scaled = [[x * k for x in row] for row in pm.entries]

    det = exact_det(field, scaled, p_strategy)
    if det.is_zero():
        raise ZeroDeterminant("Pseudo-matrix is singular")
    if k != 1:
        det = det / k**n

    ideals = functools.reduce(operator.mul, pm.ideals, FracIdeal.unit(field))
    result = ideals.mul_elt(det)
    L.debug("determinantal ideal: %r", result)
    return result
