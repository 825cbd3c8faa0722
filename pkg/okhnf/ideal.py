"""
Fractional ideals of O_K in Hermite normal form, and the element-level
algorithms built on them: reduction modulo an ideal, normalization of
pseudo-elements, coprime splitting and the Chinese remainder combination.

A fractional ideal 𝔞 is stored as (k, H) where H is the lower-triangular HNF
(see linalg.hnf_lower) of the integral ideal k·𝔞, in ω-coordinates, and k is
as small as possible. Two ideals are equal iff their (k, H) are.
"""

import dataclasses
import functools
import logging
import math
from fractions import Fraction

import okhnf

from .exceptions import (
    InconsistentIdeal,
    InvalidInput,
    NotCoprime,
    NotIntegral,
    VerificationFailed,
    ZeroElement,
    ZeroIdeal,
    ZeroRow,
)
from .linalg import (
    hnf_int,
    hnf_lower,
    identity,
    lattice_contains,
    lll_reduce,
    nullspace_int,
    solve_rational,
    vec_mat,
)
from .number_field import FieldElement

L = logging.getLogger("okhnf.ideal")


class FracIdeal:
    """
    A nonzero fractional ideal (1/den)·I, with I an integral ideal given by its
    lower-triangular HNF `hnf` in ω-coordinates.

    Build these with the classmethods; the constructor trusts its arguments.
    """

    def __init__(self, field, den, hnf):
        self.field = field
        self.den = den
        self.hnf = tuple(tuple(row) for row in hnf)
        self._inverse = None
        self._lll_rows = None

    @classmethod
    def from_rows(cls, field, rows, den=1):
        """The ideal spanned over Z by (1/den)·rows, which must already be O_K-stable."""
        d = field.degree
        h = hnf_lower(rows) if rows else []
        if len(h) != d:
            raise ZeroIdeal(
                "Generators span a lattice of rank %d, expected %d" % (len(h), d)
            )
        den = int(den)
        content = functools.reduce(math.gcd, (v for row in h for v in row), den)
        if content != 1:
            h = [[v // content for v in row] for row in h]
            den //= content
        return cls(field, den, h)

    @classmethod
    def from_hnf(cls, field, den, hnf):
        """
        Validating constructor for externally supplied ideals: the matrix must
        already be the canonical HNF, the denominator minimal, and the lattice
        closed under multiplication by O_K.
        """
        d = field.degree
        den = int(den)
        hnf = [[int(v) for v in row] for row in hnf]
        if den <= 0:
            raise InvalidInput("Ideal denominator must be positive")
        if len(hnf) != d or any(len(row) != d for row in hnf):
            raise InvalidInput(f"Ideal HNF must be a {d}x{d} matrix")
        if any(hnf[i][i] <= 0 for i in range(d)):
            raise ZeroIdeal("Ideal HNF must have positive diagonal entries")
        if hnf_lower(hnf) != hnf:
            raise InvalidInput("Ideal basis is not in canonical HNF")
        content = functools.reduce(math.gcd, (v for row in hnf for v in row), den)
        if content != 1:
            raise InvalidInput("Ideal denominator is not minimal")
        for row in hnf:
            for i in range(d):
                image = field.mul_coords(row, [int(k == i) for k in range(d)])
                if not lattice_contains(hnf, image):
                    raise InvalidInput("Ideal basis is not closed under multiplication by O_K")
        return cls(field, den, hnf)

    @classmethod
    def unit(cls, field):
        return cls(field, 1, identity(field.degree))

    @classmethod
    def from_generators(cls, field, gens):
        """Smallest fractional ideal containing all of gens."""
        gens = [field.coerce(g) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ZeroIdeal("Need at least one nonzero generator")
        den = functools.reduce(math.lcm, (g.den for g in gens), 1)
        rows = []
        for g in gens:
            scaled = [c * (den // g.den) for c in g.coords]
            for i in range(field.degree):
                rows.append(field.mul_coords(scaled, field.basis_element(i).coords))
        return cls.from_rows(field, rows, den)

    @classmethod
    def principal(cls, x):
        return cls.from_generators(x.field, [x])

    def __repr__(self):
        rows = [list(row) for row in self.hnf]
        if self.den == 1:
            return f"<FracIdeal {rows}>"
        return f"<FracIdeal {rows}/{self.den}>"

    def __json__(self):
        return {
            "den": str(self.den),
            "hnf": [[str(v) for v in row] for row in self.hnf],
        }

    def __eq__(self, other):
        if not isinstance(other, FracIdeal):
            return NotImplemented
        return (
            self.field is other.field
            and self.den == other.den
            and self.hnf == other.hnf
        )

    def __hash__(self):
        return hash((self.den, self.hnf))

    # invariants

    @property
    def integral_norm(self):
        """Nm(k·𝔞), the index of the integral lattice."""
        return math.prod(self.hnf[i][i] for i in range(self.field.degree))

    @property
    def norm(self):
        return Fraction(self.integral_norm, self.den ** self.field.degree)

    def size(self):
        """S(𝔞) = log₂(k) + d²·log₂ Nm(k·𝔞)."""
        d = self.field.degree
        return math.log2(self.den) + d * d * math.log2(self.integral_norm)

    def is_integral(self):
        return self.den == 1

    def is_unit(self):
        return self.den == 1 and self.integral_norm == 1

    def numerator(self):
        """The integral ideal k·𝔞."""
        return FracIdeal(self.field, 1, self.hnf)

    def basis(self):
        """The HNF Z-basis of 𝔞 as field elements."""
        return [FieldElement(self.field, row, self.den) for row in self.hnf]

    def contains(self, x):
        x = self.field.coerce(x)
        if x.is_zero():
            return True
        scaled = [c * self.den for c in x.coords]
        if any(c % x.den for c in scaled):
            return False
        return lattice_contains(self.hnf, [c // x.den for c in scaled])

    __contains__ = contains

    def issubset(self, other):
        return all(other.contains(x) for x in self.basis())

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, FracIdeal):
            return NotImplemented
        den = math.lcm(self.den, other.den)
        rows = [[v * (den // self.den) for v in row] for row in self.hnf]
        rows += [[v * (den // other.den) for v in row] for row in other.hnf]
        return FracIdeal.from_rows(self.field, rows, den)

    def __mul__(self, other):
        if isinstance(other, FracIdeal):
            rows = [
                self.field.mul_coords(g, h) for g in self.hnf for h in other.hnf
            ]
            return FracIdeal.from_rows(self.field, rows, self.den * other.den)
        try:
            other = self.field.coerce(other)
        except TypeError:
            return NotImplemented
        return self.mul_elt(other)

    __rmul__ = __mul__

    def mul_elt(self, x):
        """The ideal x·𝔞."""
        x = self.field.coerce(x)
        if x.is_zero():
            raise ZeroElement("Cannot multiply an ideal by zero")
        rows = [self.field.mul_coords(x.coords, g) for g in self.hnf]
        return FracIdeal.from_rows(self.field, rows, self.den * x.den)

    def inverse(self):
        """
        𝔞⁻¹ = {y ∈ K : y·𝔞 ⊆ O_K}.

        For I = k𝔞 with HNF rows γ₁..γ_d and N = min(I ∩ Z), the vectors
        w = N·y for y ∈ I⁻¹ are exactly the integer w with w·[M(γ₁)|...|M(γ_d)]
        ≡ 0 mod N, where M(γ) is the multiplication matrix of γ. They are read
        off the left kernel of that block matrix stacked on -N·identity.
        """
        if self._inverse is not None:
            return self._inverse

        field = self.field
        d = field.degree
        n_int = self.hnf[0][0]
        mult = [FieldElement(field, g).mult_matrix() for g in self.hnf]
        system = [
            [v for m in mult for v in m[j]] for j in range(d)
        ]
        system += [
            [-n_int if c == r else 0 for c in range(d * d)] for r in range(d * d)
        ]
        kernel = nullspace_int(system)
        rows = [[self.den * v for v in row[:d]] for row in kernel]
        result = FracIdeal.from_rows(field, rows, n_int)

        if okhnf.is_debug and not (self * result).is_unit():
            raise VerificationFailed(f"Ideal inverse check failed for {self!r}")

        result._inverse = self
        self._inverse = result
        return result

    def lll_rows(self):
        """Integer rows of an LLL-reduced basis of k·𝔞 with respect to T2."""
        if self._lll_rows is None:
            reduced, _ = lll_reduce(
                [list(row) for row in self.hnf], self.field.gram, self.field.lll_delta
            )
            self._lll_rows = tuple(tuple(row) for row in reduced)
        return self._lll_rows

    def lll_basis(self):
        """LLL-reduced Z-basis of 𝔞 as field elements."""
        return [FieldElement(self.field, row, self.den) for row in self.lll_rows()]


@dataclasses.dataclass(frozen=True)
class NormalizedPseudoElement:
    """
    A pseudo-element 𝔞′·A′ equal (as a module) to the one it was computed
    from, with 𝔞′ integral and of norm at most 2^(d²/2)·√|Δ_K|.
    """

    ideal: "FracIdeal"
    row: tuple

    def __iter__(self):
        # unpacks as (ideal, row)
        yield self.ideal
        yield self.row

    def __json__(self):
        return {"ideal": self.ideal, "row": list(self.row)}


def within_reduction_bound(x, a):
    """
    Whether ‖x‖ ≤ d^(3/2)·2^(d/2)·Nm(𝔞)^(1/d)·√|Δ_K|, tested exactly as
    ‖x‖^(2d) ≤ (d³·2^d·|Δ_K|)^d·Nm(𝔞)² using the certified upper bound on ‖x‖².
    """
    field = a.field
    d = field.degree
    lhs = x.t2_sq_upper() ** d
    rhs = (d**3 * 2**d * abs(field.discriminant)) ** d * a.norm**2
    return lhs <= rhs


def within_normalization_bound(a):
    """Whether Nm(𝔞) ≤ 2^(d²/2)·√|Δ_K|, tested as Nm(𝔞)² ≤ 2^(d²)·|Δ_K|."""
    field = a.field
    return a.norm**2 <= 2 ** (field.degree**2) * abs(field.discriminant)


def reduce_mod_ideal(x, a, stats=None):
    """
    Returns x̄ with x - x̄ ∈ 𝔞 and x̄ small, by rounding the coordinates of x
    over an LLL-reduced basis of 𝔞 (half to even). x is returned unchanged
    when it is 1 or already below the reduction bound.
    """
    field = a.field
    x = field.coerce(x)
    if x.is_one() or within_reduction_bound(x, a):
        if stats is not None:
            stats.record_reduction(reduced=False)
        return x

    rows = a.lll_rows()
    target = [Fraction(c * a.den, x.den) for c in x.coords]
    coeffs = solve_rational(rows, target)
    rounded = [round(c) for c in coeffs]
    shift = vec_mat(rounded, rows)
    result = x - FieldElement(field, shift, a.den)

    if stats is not None:
        stats.record_reduction(reduced=True)
    if okhnf.is_debug and not within_reduction_bound(result, a):
        raise VerificationFailed(f"Reduction of {x!r} modulo {a!r} exceeds the bound")
    return result


def normalize(a, row):
    """
    Rewrites the pseudo-element 𝔞·A as 𝔞′·A′ with 𝔞′ integral of bounded norm:
    clear the denominator k₀ of 𝔞, let k be the denominator of (k₀𝔞)⁻¹, take
    α first in an LLL-reduced basis of 𝔟 = k·(k₀𝔞)⁻¹, and return
    ((α/k)·k₀𝔞, (k/α)·A/k₀).
    """
    field = a.field
    row = [field.coerce(x) for x in row]
    if all(x.is_zero() for x in row):
        raise ZeroRow("Cannot normalize a zero row")

    k0 = a.den
    a0 = a.numerator()
    if k0 != 1:
        row = [x * Fraction(1, k0) for x in row]

    inverse = a0.inverse()
    k = inverse.den
    b = inverse.numerator()
    alpha = b.lll_basis()[0]
    if alpha.leading_sign() < 0:
        alpha = -alpha

    ideal = a0.mul_elt(alpha * Fraction(1, k))
    factor = alpha.inverse() * k
    row = tuple(x * factor for x in row)

    if okhnf.is_debug and not (
        ideal.is_integral() and within_normalization_bound(ideal)
    ):
        raise VerificationFailed(f"Normalization of {a!r} violates its bounds")
    L.debug("normalize: %r -> %r (alpha=%r, k=%d)", a, ideal, alpha, k)
    return NormalizedPseudoElement(ideal, row)


def split_one(a, b):
    """
    For coprime integral ideals 𝔞, 𝔟 returns (u, v) with u ∈ 𝔞, v ∈ 𝔟 and
    u + v = 1, read off the transform of the HNF of the stacked bases.
    """
    field = a.field
    if not (a.is_integral() and b.is_integral()):
        raise NotIntegral("split_one needs integral ideals")
    if a.is_unit():
        return field.one, field.zero
    if b.is_unit():
        return field.zero, field.one

    d = field.degree
    stacked = [list(row) for row in a.hnf] + [list(row) for row in b.hnf]
    h, transform = hnf_int(stacked)
    if h[:d] != identity(d):
        raise NotCoprime(f"{a!r} and {b!r} are not coprime")

    u = FieldElement(field, vec_mat(transform[0][:d], [list(row) for row in a.hnf]))
    # u is only determined modulo 𝔞𝔟; keep it small
    u = reduce_mod_ideal(u, a * b)
    v = field.one - u

    if not (a.contains(u) and b.contains(v)):
        raise VerificationFailed(f"split_one postcondition failed for {a!r}, {b!r}")
    return u, v


def pivot_uv(b_ij, bi, b_jj, bj, dd):
    """
    Finds u ∈ 𝔟ᵢ𝔡⁻¹ and v ∈ 𝔟ⱼ𝔡⁻¹ with b_ij·u + b_jj·v = 1, where
    𝔡 = b_ij·𝔟ᵢ + b_jj·𝔟ⱼ, by splitting 1 over the coprime integral ideals
    b_ij·𝔟ᵢ𝔡⁻¹ and b_jj·𝔟ⱼ𝔡⁻¹.
    """
    field = dd.field
    b_ij = field.coerce(b_ij)
    b_jj = field.coerce(b_jj)
    if b_ij.is_zero() and b_jj.is_zero():
        raise ZeroElement("pivot_uv needs a nonzero entry")
    if b_ij.is_zero():
        return field.zero, b_jj.inverse()
    if b_jj.is_zero():
        return b_ij.inverse(), field.zero

    dd_inv = dd.inverse()
    left = bi.mul_elt(b_ij) * dd_inv
    right = bj.mul_elt(b_jj) * dd_inv
    if not (left.is_integral() and right.is_integral()):
        raise InconsistentIdeal(f"{dd!r} does not contain both pivot ideals")
    try:
        u, v = split_one(left, right)
    except NotCoprime:
        raise InconsistentIdeal(f"{dd!r} is not the sum of the pivot ideals")
    return u / b_ij, v / b_jj


def crt_combine(a, b, y, w):
    """
    For coprime integral 𝔞, 𝔟 and y, w ∈ O_K returns z with z ≡ y mod 𝔞 and
    z ≡ w mod 𝔟, reduced modulo 𝔞𝔟.
    """
    field = a.field
    y = field.coerce(y)
    w = field.coerce(w)
    if not (y.is_integral() and w.is_integral()):
        raise NotIntegral("Residues must be integral elements")
    ea, eb = split_one(a, b)
    z = w * ea + y * eb
    return reduce_mod_ideal(z, a * b)
