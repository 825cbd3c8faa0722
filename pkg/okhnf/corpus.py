"""
Built-in fields and seeded random generators for elements, ideals and
pseudo-matrices, shared by the selftest command and the test suite.
"""

import functools
import logging
import math

from .exceptions import InvalidInput, ZeroDeterminant
from .ideal import FracIdeal
from .number_field import Field
from .pseudo_matrix import PseudoMatrix, det_cofactor

L = logging.getLogger("okhnf.corpus")

# defining polynomials, constant term first; all use the power basis
BUILTIN_FIELDS = {
    "Q": (-1, 1),
    "gauss": (1, 0, 1),
    "golden": (-1, -1, 1),
    "cubic": (-1, -1, 0, 1),
}

COORD_BOUND = 20
DENOMINATORS = (1, 2, 3)
MAX_ATTEMPTS = 100


@functools.lru_cache(maxsize=None)
def builtin_field(name):
    try:
        poly = BUILTIN_FIELDS[name]
    except KeyError:
        raise InvalidInput(
            f"No builtin field {name!r}; choose from {', '.join(BUILTIN_FIELDS)}"
        )
    return Field(poly, name=name)


def builtin_fields():
    return [builtin_field(name) for name in BUILTIN_FIELDS]


def random_element(rng, field, bound=COORD_BOUND, integral=False):
    coords = [rng.randint(-bound, bound) for _ in range(field.degree)]
    den = 1 if integral else rng.choice(DENOMINATORS)
    return field.element(coords, den)


def random_nonzero_element(rng, field, bound=COORD_BOUND, integral=False):
    while True:
        x = random_element(rng, field, bound, integral)
        if not x.is_zero():
            return x


def random_ideal(rng, field, integral=False, bound=COORD_BOUND):
    count = rng.randint(1, 2)
    gens = [random_nonzero_element(rng, field, bound, integral) for _ in range(count)]
    return FracIdeal.from_generators(field, gens)


def random_integral_ideal(rng, field, bound=6):
    return random_ideal(rng, field, integral=True, bound=bound)


def random_coprime_pair(rng, field, bound=6):
    """Two coprime integral ideals."""
    for _ in range(MAX_ATTEMPTS):
        a = random_integral_ideal(rng, field, bound)
        b = random_integral_ideal(rng, field, bound)
        if (a + b).is_unit():
            return a, b
    # norms 2 and 3 are coprime in every field
    return (
        FracIdeal.principal(field.from_rational(2)),
        FracIdeal.principal(field.from_rational(3)),
    )


def _entry(rng, field, bound, zero_chance):
    if rng.random() < zero_chance:
        return field.zero
    return random_element(rng, field, bound)


def make_integral(field, entries, ideals):
    """
    Scales each coefficient ideal by the least integer k making k·𝔞ᵢ·aᵢⱼ
    integral for all j, so that the module lies in O_Kⁿ.
    """
    result = []
    for ideal, row in zip(ideals, entries):
        k = functools.reduce(
            math.lcm, (ideal.mul_elt(x).den for x in row if not x.is_zero()), 1
        )
        result.append(ideal.mul_elt(k) if k != 1 else ideal)
    return result


def random_pseudo_matrix(rng, field, n, bound=COORD_BOUND, zero_chance=0.2):
    """A full-rank n×n pseudo-matrix whose module lies in O_Kⁿ."""
    for _ in range(MAX_ATTEMPTS):
        entries = [
            [_entry(rng, field, bound, zero_chance) for _ in range(n)] for _ in range(n)
        ]
        if det_cofactor(entries).is_zero():
            continue
        ideals = [random_ideal(rng, field) for _ in range(n)]
        return PseudoMatrix(field, entries, make_integral(field, entries, ideals))
    raise ZeroDeterminant("Could not generate a full-rank pseudo-matrix")
