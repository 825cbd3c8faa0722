"""
Number fields K = Q[x]/(f) and exact arithmetic on their elements.

A Field is built from a defining polynomial and a Z-basis of its ring of
integers (given in power-basis coordinates). The constructor moves 1 to the
front of the basis and LLL-reduces it with respect to the T2 form, then
tabulates ωᵢ·ωⱼ so that all later arithmetic is integer arithmetic on
coordinate vectors.
"""

import functools
import logging
import math
from fractions import Fraction
from functools import cached_property

import mpmath
from sympy import Poly, QQ, Rational, ZZ, Symbol

from .exceptions import (
    DivisionByZero,
    FieldMismatch,
    InvalidInput,
    NotARing,
    NotMonic,
    NotSquarefree,
    NoUnitInBasis,
    Singular,
)
from .linalg import (
    DEFAULT_LLL_DELTA,
    det_int,
    hnf_int,
    identity,
    inverse_rational,
    lll_reduce,
    solve_rational,
)

L = logging.getLogger("okhnf.number_field")

X = Symbol("x")

DEFAULT_PRECISION_BITS = 128

# extra working precision for the root finder, on top of the requested precision
GUARD_BITS = 32
MAX_PRECISION_ATTEMPTS = 4


def _lcm_of_denominators(values):
    return functools.reduce(math.lcm, (Fraction(v).denominator for v in values), 1)


def _to_sympy(coeffs):
    """Low-to-high rational coefficients -> sympy Poly over QQ."""
    return Poly(
        [Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        X,
        domain=QQ,
    )


def _from_sympy(poly, d):
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return coeffs + [Fraction(0)] * (d - len(coeffs))


def _integer_rows(rows):
    """Scale a rational matrix to an integer one; returns (int_rows, scale)."""
    scale = _lcm_of_denominators(v for row in rows for v in row)
    return [[int(v * scale) for v in row] for row in rows], scale


class Field:
    """
    A number field of degree d together with an LLL-reduced integral basis
    ω₁ = 1, ω₂, ..., ω_d.

    Attributes:
        degree: d
        poly: integer coefficients of f, constant term first
        basis: the ωᵢ in power-basis coordinates (rational)
        mult_table: mult_table[i][j] is the integer coordinate vector of ωᵢ·ωⱼ
        traces: Tr(ωᵢ)
        trace_form: the integer matrix Tr(ωᵢ·ωⱼ)
        discriminant: Δ_K, the determinant of the trace form
        gram: rational midpoint of the T2 Gram matrix of the ω-basis
        gram_radius: every entry of the true T2 Gram matrix lies within this of `gram`
        signature: (r1, r2)
    """

    def __init__(
        self,
        poly,
        basis=None,
        precision_bits=DEFAULT_PRECISION_BITS,
        lll_delta=DEFAULT_LLL_DELTA,
        name=None,
    ):
        self.poly = tuple(int(c) for c in poly)
        self.name = name
        self.precision_bits = int(precision_bits)
        self.lll_delta = Fraction(lll_delta)

        f = Poly(list(reversed(self.poly)), X, domain=ZZ)
        if f.degree() < 1:
            raise NotMonic("Defining polynomial must have degree at least 1")
        if f.LC() != 1:
            raise NotMonic(f"Defining polynomial {f.as_expr()} is not monic")
        if not f.is_sqf:
            raise NotSquarefree(f"Defining polynomial {f.as_expr()} is not squarefree")

        self.degree = d = f.degree()
        self._modulus = f.set_domain(QQ)

        if basis is None:
            basis = identity(d)
        basis = [[Fraction(v) for v in row] for row in basis]
        if len(basis) != d or any(len(row) != d for row in basis):
            raise InvalidInput(f"Integral basis must be a {d}x{d} matrix")
        if det_int(_integer_rows(basis)[0]) == 0:
            raise Singular("Integral basis rows are not linearly independent")

        # Multiplicative closure first, so a lattice that is not a ring is
        # reported as such rather than as a missing unit.
        self._compute_table(basis)
        basis = self._move_unit_first(basis)
        basis = self._lll_normalize(basis)

        self.basis = tuple(tuple(row) for row in basis)
        self._basis_int, self._basis_scale = _integer_rows(basis)
        self.mult_table = self._compute_table(basis)
        self.traces = tuple(
            sum(self.mult_table[k][j][j] for j in range(d)) for k in range(d)
        )
        self.trace_form = tuple(
            tuple(
                sum(c * t for c, t in zip(self.mult_table[i][j], self.traces))
                for j in range(d)
            )
            for i in range(d)
        )
        self.discriminant = det_int(self.trace_form)
        self.gram, self.gram_radius = self._gram_enclosure(basis)

        r1 = int(f.count_roots())
        self.signature = (r1, (d - r1) // 2)

        L.info(
            "Field %s: degree %d, discriminant %d, signature %s",
            self.label,
            d,
            self.discriminant,
            self.signature,
        )

    @property
    def label(self):
        return self.name or str(Poly(list(reversed(self.poly)), X).as_expr())

    def __repr__(self):
        return f"<Field {self.label}>"

    # construction helpers

    def _power_mul(self, a, b):
        product = (_to_sympy(a) * _to_sympy(b)).rem(self._modulus)
        return _from_sympy(product, self.degree)

    def _compute_table(self, basis):
        d = self.degree
        basis_int, scale = _integer_rows(basis)
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                product = self._power_mul(basis[i], basis[j])
                coords = solve_rational(basis_int, [c * scale for c in product])
                if any(c.denominator != 1 for c in coords):
                    raise NotARing(
                        f"Basis is not closed under multiplication: "
                        f"ω{i + 1}·ω{j + 1} has non-integral coordinates"
                    )
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        return tuple(table)

    def _move_unit_first(self, basis):
        """Replace the basis by a unimodular transform of it whose first row is 1."""
        d = self.degree
        basis_int, scale = _integer_rows(basis)
        unit = [scale] + [0] * (d - 1)
        coords = solve_rational(basis_int, unit)
        if any(c.denominator != 1 for c in coords):
            raise NoUnitInBasis("1 is not an integral combination of the basis")
        coords = [int(c) for c in coords]

        h, u = hnf_int([[c] for c in coords])
        if h[0][0] != 1:
            raise NoUnitInBasis("Coordinates of 1 in the basis are not coprime")
        # u·cᵀ = e₁, so the first column of u⁻¹ is c: rows of (u⁻¹)ᵀ complete c
        u_inv = inverse_rational(u)
        completion = [[int(u_inv[j][i]) for j in range(d)] for i in range(d)]
        return [
            [sum(completion[i][k] * basis[k][l] for k in range(d)) for l in range(d)]
            for i in range(d)
        ]

    def _lll_normalize(self, basis):
        d = self.degree
        gram, _ = self._gram_enclosure(basis)
        _, transform = lll_reduce(identity(d), gram, self.lll_delta)
        reduced = [
            [sum(transform[i][k] * basis[k][l] for k in range(d)) for l in range(d)]
            for i in range(d)
        ]
        one = [Fraction(1)] + [Fraction(0)] * (d - 1)
        minus_one = [-v for v in one]
        # 1 is a shortest vector, so LLL keeps it in front; be lenient about order anyway.
        for i, row in enumerate(reduced):
            if row == one or row == minus_one:
                reduced.insert(0, one)
                del reduced[i + 1]
                return reduced
        raise NoUnitInBasis("LLL reduction lost the unit basis vector")

    def _embeddings(self, basis, working_bits):
        d = self.degree
        with mpmath.workprec(working_bits):
            if d == 1:
                roots = [mpmath.mpc(-self.poly[0])]
            else:
                roots = mpmath.polyroots(
                    [mpmath.mpf(c) for c in reversed(self.poly)],
                    maxsteps=200,
                    extraprec=working_bits,
                )
            roots = [mpmath.mpc(r) for r in roots]
            sigma = []
            for row in basis:
                coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in row]
                sigma.append([mpmath.polyval(coeffs[::-1], r) for r in roots])
        return sigma

    def _gram_enclosure(self, basis):
        """
        Rational midpoint and radius for the T2 Gram matrix of `basis`.

        The root approximations are checked a posteriori against the exact
        integer trace form: Σ σ(ωᵢ)σ(ωⱼ) must reproduce Tr(ωᵢωⱼ). The observed
        discrepancy goes into the radius, and working precision is doubled until
        it is below 2^-precision_bits.
        """
        d = self.degree
        table = self._compute_table(basis)
        traces = [sum(table[k][j][j] for j in range(d)) for k in range(d)]
        exact_trace = [
            [sum(c * t for c, t in zip(table[i][j], traces)) for j in range(d)]
            for i in range(d)
        ]

        scale = 2 ** self.precision_bits
        working_bits = self.precision_bits + GUARD_BITS
        for attempt in range(MAX_PRECISION_ATTEMPTS):
            sigma = self._embeddings(basis, working_bits)
            with mpmath.workprec(working_bits):
                error = mpmath.mpf(0)
                gram = []
                for i in range(d):
                    gram_row = []
                    for j in range(d):
                        pairs = list(zip(sigma[i], sigma[j]))
                        t2 = mpmath.fsum(mpmath.re(a * mpmath.conj(b)) for a, b in pairs)
                        trace = mpmath.fsum(a * b for a, b in pairs)
                        error = max(error, abs(trace - exact_trace[i][j]))
                        gram_row.append(t2)
                    gram.append(gram_row)
                if error * scale < 1:
                    error_bound = Fraction(int(mpmath.ceil(error * scale)) + 1, scale)
                    midpoint = [
                        [Fraction(int(mpmath.nint(g * scale)), scale) for g in row]
                        for row in gram
                    ]
                    break
            L.debug(
                "Gram enclosure: trace discrepancy too large at %d bits, retrying",
                working_bits,
            )
            working_bits *= 2
        else:
            raise InvalidInput(
                f"Could not certify the embeddings of {self.label} "
                f"to {self.precision_bits} bits"
            )

        largest = max(abs(g) for row in midpoint for g in row)
        radius = Fraction(1, scale) * (1 + largest) + 2 * error_bound
        return tuple(tuple(row) for row in midpoint), radius

    # elements

    @cached_property
    def one(self):
        return FieldElement(self, [1] + [0] * (self.degree - 1))

    @cached_property
    def zero(self):
        return FieldElement(self, [0] * self.degree)

    def element(self, coords, den=1):
        return FieldElement(self, coords, den)

    def from_rational(self, value):
        value = Fraction(value)
        return FieldElement(
            self, [value.numerator] + [0] * (self.degree - 1), value.denominator
        )

    def from_rationals(self, values):
        """Element with the given rational ω-coordinates."""
        values = [Fraction(v) for v in values]
        den = _lcm_of_denominators(values)
        return FieldElement(self, [int(v * den) for v in values], den)

    def from_power(self, coeffs):
        """Element given by rational coordinates over the power basis 1, x, ..., x^(d-1)."""
        coeffs = [Fraction(c) for c in coeffs]
        coeffs = coeffs + [Fraction(0)] * (self.degree - len(coeffs))
        coords = solve_rational(self._basis_int, [c * self._basis_scale for c in coeffs])
        return self.from_rationals(coords)

    def basis_element(self, i):
        """ωᵢ, counting from zero."""
        return FieldElement(self, [int(k == i) for k in range(self.degree)])

    def mul_coords(self, x, y):
        """Integer coordinates of (Σ xᵢωᵢ)(Σ yⱼωⱼ)."""
        result = [0] * self.degree
        for i, xi in enumerate(x):
            if not xi:
                continue
            table_row = self.mult_table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, a in enumerate(table_row[j]):
                    if a:
                        result[k] += c * a
        return result

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch(
                    f"Element of {value.field.label} used in {self.label}"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise TypeError(f"Cannot convert {value!r} to an element of {self.label}")


class FieldElement:
    """
    An element (Σ xᵢωᵢ)/k of a number field, with integer coordinates xᵢ and
    positive denominator k in lowest terms.
    """

    __slots__ = ("field", "coords", "den")

    def __init__(self, field, coords, den=1):
        coords = [int(c) for c in coords]
        den = int(den)
        if len(coords) != field.degree:
            raise ValueError(
                f"Expected {field.degree} coordinates, got {len(coords)}"
            )
        if den == 0:
            raise DivisionByZero("Element denominator is zero")
        if den < 0:
            coords = [-c for c in coords]
            den = -den
        g = functools.reduce(math.gcd, coords, den)
        if g != 1:
            coords = [c // g for c in coords]
            den //= g
        self.field = field
        self.coords = tuple(coords)
        self.den = den

    def __repr__(self):
        if self.den == 1:
            return f"<FieldElement {list(self.coords)}>"
        return f"<FieldElement {list(self.coords)}/{self.den}>"

    def __json__(self):
        return {"coords": [str(c) for c in self.coords], "den": str(self.den)}

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.field is other.field
            and self.den == other.den
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.den))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        return not any(self.coords)

    def is_one(self):
        return self.den == 1 and self.coords == self.field.one.coords

    def is_integral(self):
        return self.den == 1

    def rationals(self):
        return [Fraction(c, self.den) for c in self.coords]

    # arithmetic

    def _other(self, other):
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __neg__(self):
        return FieldElement(self.field, [-c for c in self.coords], self.den)

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return FieldElement(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.coords, other.coords)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return FieldElement(
            self.field,
            self.field.mul_coords(self.coords, other.coords),
            self.den * other.den,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def mult_matrix(self):
        """Integer matrix whose row j holds the coordinates of (Σ xᵢωᵢ)·ωⱼ."""
        d = self.field.degree
        table = self.field.mult_table
        rows = []
        for j in range(d):
            row = [0] * d
            for i, xi in enumerate(self.coords):
                if xi:
                    for k, a in enumerate(table[i][j]):
                        row[k] += xi * a
            rows.append(row)
        return rows

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("Cannot invert zero")
        e1 = [1] + [0] * (self.field.degree - 1)
        solution = solve_rational(self.mult_matrix(), e1)
        return self.field.from_rationals([c * self.den for c in solution])

    def norm(self):
        d = self.field.degree
        return Fraction(abs(det_int(self.mult_matrix())), self.den ** d)

    def trace(self):
        return Fraction(
            sum(c * t for c, t in zip(self.coords, self.field.traces)), self.den
        )

    def size(self):
        """
        S(x) = log₂(k) + d·log₂(max |xᵢ|), counting coordinates in {-1, 0, 1} as size 0.
        """
        largest = max(1, max(abs(c) for c in self.coords))
        return math.log2(self.den) + self.field.degree * math.log2(largest)

    def t2_sq_upper(self):
        """Certified rational upper bound on T2(x, x) = ‖x‖²."""
        field = self.field
        c = self.coords
        midpoint = sum(
            c[i] * sum(g * cj for g, cj in zip(field.gram[i], c))
            for i in range(field.degree)
            if c[i]
        )
        spread = field.gram_radius * sum(abs(ci) for ci in c) ** 2
        return (midpoint + spread) / (self.den * self.den)

    def t2_upper(self):
        """Certified rational upper bound on ‖x‖."""
        scale = 2**64
        bound = self.t2_sq_upper() * scale * scale
        root = math.isqrt(math.ceil(bound))
        if root * root < bound:
            root += 1
        return Fraction(root, scale)

    def to_power(self):
        """Rational coordinates over the power basis."""
        basis = self.field.basis
        d = self.field.degree
        return [
            sum(c * basis[i][l] for i, c in enumerate(self.coords)) / self.den
            for l in range(d)
        ]

    def leading_sign(self):
        """Sign of the first nonzero coordinate (0 for zero)."""
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0
