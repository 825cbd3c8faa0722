"""
Pseudo-matrices over O_K: an n×n matrix A over K together with coefficient
ideals 𝔞₁..𝔞ₙ, standing for the module M = Σ 𝔞ᵢAᵢ ⊆ Kⁿ.

Besides the types this module holds the exact, non-modular tools used to
check the modular pipeline: a naive pseudo-HNF, module membership and module
equality.
"""

import functools
import logging
import operator
from fractions import Fraction

from .determinant import determinantal_ideal
from .exceptions import FieldMismatch, InvalidInput, Singular
from .ideal import FracIdeal, pivot_uv
from .linalg import rank_rational, solve_rational

L = logging.getLogger("okhnf.pseudo_matrix")


def ideal_product(field, ideals):
    return functools.reduce(operator.mul, ideals, FracIdeal.unit(field))


class PseudoMatrix:
    def __init__(self, field, entries, ideals):
        n = len(ideals)
        if n == 0:
            raise InvalidInput("Pseudo-matrix must have at least one row")
        if len(entries) != n or any(len(row) != n for row in entries):
            raise InvalidInput(f"Pseudo-matrix entries must form a {n}x{n} matrix")
        for ideal in ideals:
            if ideal.field is not field:
                raise FieldMismatch("Coefficient ideal belongs to a different field")
        self.field = field
        self.entries = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        self.ideals = tuple(ideals)

    @classmethod
    def identity(cls, field, n, ideals=None):
        entries = [
            [field.one if i == j else field.zero for j in range(n)] for i in range(n)
        ]
        if ideals is None:
            ideals = [FracIdeal.unit(field)] * n
        return cls(field, entries, ideals)

    @property
    def n(self):
        return len(self.ideals)

    def __repr__(self):
        return f"<PseudoMatrix n={self.n} over {self.field.label}>"

    def __json__(self):
        return {
            "n": self.n,
            "ideals": list(self.ideals),
            "entries": [list(row) for row in self.entries],
        }

    def pseudo_generators(self):
        return list(zip(self.ideals, self.entries))

    def is_integral_module(self):
        """Whether M ⊆ O_Kⁿ, i.e. every aᵢⱼ·𝔞ᵢ is integral."""
        return all(
            ideal.mul_elt(x).is_integral()
            for ideal, row in self.pseudo_generators()
            for x in row
            if not x.is_zero()
        )

    def scale_row(self, i, x):
        """The same module with row i written as (𝔞ᵢ·x, Aᵢ/x)."""
        x = self.field.coerce(x)
        entries = [list(row) for row in self.entries]
        ideals = list(self.ideals)
        entries[i] = [y / x for y in entries[i]]
        ideals[i] = ideals[i].mul_elt(x)
        return PseudoMatrix(self.field, entries, ideals)


class HnfResult:
    """
    A pseudo-HNF: W lower-triangular with unit diagonal, integral coefficient
    ideals 𝔠ᵢ with M = ⊕ 𝔠ᵢWᵢ, and the determinantal ideal ∏𝔠ᵢ.
    """

    def __init__(self, field, w, ideals, det_ideal, stats=None):
        self.field = field
        self.w = tuple(tuple(row) for row in w)
        self.ideals = tuple(ideals)
        self.det_ideal = det_ideal
        self.stats = stats

    @property
    def n(self):
        return len(self.ideals)

    def __repr__(self):
        return f"<HnfResult n={self.n} over {self.field.label}>"

    def as_pseudo_matrix(self):
        return PseudoMatrix(self.field, self.w, self.ideals)

    def is_hnf_shaped(self):
        for i, row in enumerate(self.w):
            if not row[i].is_one():
                return False
            if any(not x.is_zero() for x in row[i + 1 :]):
                return False
        return all(ideal.is_integral() for ideal in self.ideals)

    def __json__(self):
        result = {
            "n": self.n,
            "ideals": list(self.ideals),
            "entries": [list(row) for row in self.w],
            "det_ideal": self.det_ideal,
        }
        if self.stats is not None:
            result["stats"] = self.stats
        return result


def solve_left(entries, v):
    """
    x with x·A = v over K, solved over Q on ω-coordinates: block (i, j) of the
    rational system is the matrix of multiplication by A[i][j]. Raises Singular.
    """
    n = len(entries)
    field = v[0].field
    d = field.degree
    system = [[None] * (n * d) for _ in range(n * d)]
    for i, row in enumerate(entries):
        for j, a in enumerate(row):
            block = a.mult_matrix()
            for k in range(d):
                for c in range(d):
                    system[i * d + k][j * d + c] = Fraction(block[k][c], a.den)
    if rank_rational(system) < n * d:
        raise Singular("Pseudo-matrix is not of full rank")
    target = [c for x in v for c in field.coerce(x).rationals()]
    coords = solve_rational(system, target)
    return [field.from_rationals(coords[i * d : (i + 1) * d]) for i in range(n)]


def det_cofactor(entries):
    """Determinant over K by Laplace expansion along the first row."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = None
    for j, x in enumerate(entries[0]):
        if x.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in entries[1:]]
        term = x * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else entries[0][0].field.zero


def module_contains(pm, ideal, v):
    """Whether ideal·v ⊆ M."""
    field = pm.field
    v = [field.coerce(x) for x in v]
    if all(x.is_zero() for x in v):
        return True
    coeffs = solve_left(pm.entries, v)
    return all(
        x.is_zero() or ideal.mul_elt(x).issubset(a_i)
        for x, a_i in zip(coeffs, pm.ideals)
    )


def modules_equal(a, b):
    """
    Whether two full-rank pseudo-matrices span the same module. Equal
    determinantal ideals plus one containment is enough: a submodule with the
    same determinantal ideal is the whole module.
    """
    if a.field is not b.field:
        raise FieldMismatch("Pseudo-matrices over different fields")
    if a.n != b.n:
        return False
    if determinantal_ideal(a) != determinantal_ideal(b):
        return False
    return all(module_contains(a, ideal, row) for ideal, row in b.pseudo_generators())


def hnf_naive(pm):
    """
    Pseudo-HNF by plain elimination: no modulus, no normalization, no
    reduction of off-diagonal entries. Coefficients grow freely; this is the
    reference the modular pipeline is checked against.
    """
    field = pm.field
    n = pm.n
    rows = [list(row) for row in pm.entries]
    ideals = list(pm.ideals)

    for j in reversed(range(n)):
        if rows[j][j].is_zero():
            k = next((i for i in reversed(range(j)) if not rows[i][j].is_zero()), None)
            if k is None:
                raise Singular("Pseudo-matrix is not of full rank")
            rows[j], rows[k] = rows[k], rows[j]
            ideals[j], ideals[k] = ideals[k], ideals[j]

        pivot = rows[j][j]
        if not pivot.is_one():
            rows[j] = [x / pivot for x in rows[j]]
            ideals[j] = ideals[j].mul_elt(pivot)

        for i in reversed(range(j)):
            b_ij = rows[i][j]
            if b_ij.is_zero():
                continue
            dd = ideals[i].mul_elt(b_ij) + ideals[j]
            u, v = pivot_uv(b_ij, ideals[i], field.one, ideals[j], dd)
            row_i, row_j = rows[i], rows[j]
            rows[i] = [x - b_ij * y for x, y in zip(row_i, row_j)]
            rows[j] = [u * x + v * y for x, y in zip(row_i, row_j)]
            ideals[i] = ideals[i] * ideals[j] * dd.inverse()
            ideals[j] = dd

    L.debug("naive HNF done: n=%d", n)
    return HnfResult(field, rows, ideals, ideal_product(field, ideals))
