"""
Pseudo-HNF of a module M ⊆ O_Kⁿ modulo a multiple 𝔤 of its determinantal
ideal, and the Euclidean reconstruction of the true pseudo-HNF from it.

The sweep works on M = Σ𝔟ᵢBᵢ + 𝔤O_Kⁿ: columns are processed from right to
left, every elimination step keeps the coefficient ideals integral, rows are
re-normalized, and entries are reduced modulo 𝔤𝔟ᵢ⁻¹ so that their size stays
bounded by a polynomial in d, log|Δ_K| and the size of 𝔤.
"""

import logging
import math

import okhnf

from .determinant import determinantal_ideal
from .exceptions import NonIntegralModule, SingularModulus, VerificationFailed
from .ideal import FracIdeal, normalize, pivot_uv, reduce_mod_ideal, split_one
from .pseudo_matrix import HnfResult, PseudoMatrix, ideal_product

L = logging.getLogger("okhnf.modular")


class RunStats:
    """
    Observations collected during one modular sweep. Only running maxima and
    counters are kept.
    """

    def __init__(self, field, modulus):
        d = field.degree
        self.modulus_size = modulus.size()
        self.reference = (
            d * d
            + d * math.log2(max(1, abs(field.discriminant)))
            + self.modulus_size / (d * d)
        )
        self.max_element_size = 0.0
        self.max_ideal_size = 0.0
        self.max_constant = 0.0
        self.normalizations = 0
        self.reductions = 0
        self.reductions_skipped = 0
        self.eliminations = 0
        self.swaps = 0
        self.paddings = 0

    def record_reduction(self, reduced):
        if reduced:
            self.reductions += 1
        else:
            self.reductions_skipped += 1

    def record_normalization(self):
        self.normalizations += 1

    def observe_row(self, row):
        largest = max(x.size() for x in row)
        if largest > self.max_element_size:
            self.max_element_size = largest
        constant = largest / self.reference
        if constant > self.max_constant:
            self.max_constant = constant

    def observe_ideal(self, ideal):
        self.max_ideal_size = max(self.max_ideal_size, ideal.size())

    def __json__(self):
        return {
            "max_element_size": round(self.max_element_size, 6),
            "max_ideal_size": round(self.max_ideal_size, 6),
            "modulus_size": round(self.modulus_size, 6),
            "constant": round(self.max_constant, 6),
            "normalizations": self.normalizations,
            "reductions": self.reductions,
            "reductions_skipped": self.reductions_skipped,
            "eliminations": self.eliminations,
            "swaps": self.swaps,
            "paddings": self.paddings,
        }


def _reduce_row(row, ideal, stats=None):
    return [reduce_mod_ideal(x, ideal, stats) for x in row]


def _check_integral(*ideals):
    for ideal in ideals:
        if not ideal.is_integral():
            raise VerificationFailed(
                f"Coefficient ideal {ideal!r} lost integrality during the sweep"
            )


def hnf_modular(pm, g):
    """
    Returns (b, stats): a pseudo-matrix b, lower-triangular with unit diagonal
    and integral ideals, such that Σ𝔟ᵢBᵢ + 𝔤O_Kⁿ = M.
    """
    field = pm.field
    n = pm.n
    if not g.is_integral():
        raise SingularModulus(f"Modulus {g!r} is not an integral ideal")
    if not pm.is_integral_module():
        raise NonIntegralModule("The module is not contained in O_K^n")

    stats = RunStats(field, g)
    unit = FracIdeal.unit(field)
    rows = [list(row) for row in pm.entries]
    ideals = list(pm.ideals)

    for i in range(n):
        if any(not x.is_zero() for x in rows[i]):
            ideals[i], rows[i] = normalize(ideals[i], rows[i])
            stats.record_normalization()
        else:
            ideals[i] = unit
        stats.observe_ideal(ideals[i])

    for j in reversed(range(n)):
        if rows[j][j].is_zero():
            k = next((i for i in reversed(range(j)) if not rows[i][j].is_zero()), None)
            if k is not None:
                rows[j], rows[k] = rows[k], rows[j]
                ideals[j], ideals[k] = ideals[k], ideals[j]
                stats.swaps += 1
                L.debug("column %d: swapped rows %d and %d", j, j, k)
            else:
                # any t ∈ 𝔤𝔟ⱼ⁻¹ keeps 𝔟ⱼ(Bⱼ + t·eⱼ) inside Σ𝔟ᵢBᵢ + 𝔤O_Kⁿ
                rows[j][j] = (g * ideals[j].inverse()).lll_basis()[0]
                stats.paddings += 1
                L.debug("column %d: padded the pivot with %r", j, rows[j][j])

        for i in reversed(range(j)):
            b_ij = rows[i][j]
            if b_ij.is_zero():
                continue
            b_jj = rows[j][j]
            dd = ideals[i].mul_elt(b_ij) + ideals[j].mul_elt(b_jj)
            u, v = pivot_uv(b_ij, ideals[i], b_jj, ideals[j], dd)

            row_i, row_j = rows[i], rows[j]
            rows[i] = [b_jj * x - b_ij * y for x, y in zip(row_i, row_j)]
            rows[j] = [u * x + v * y for x, y in zip(row_i, row_j)]
            ideals[i] = ideals[i] * ideals[j] * dd.inverse()
            ideals[j] = dd
            stats.eliminations += 1

            if any(not x.is_zero() for x in rows[i]):
                ideals[i], rows[i] = normalize(ideals[i], rows[i])
                stats.record_normalization()
            else:
                ideals[i] = unit

            rows[i] = _reduce_row(rows[i], g * ideals[i].inverse(), stats)
            rows[j] = _reduce_row(rows[j], g * ideals[j].inverse(), stats)

            stats.observe_row(rows[i])
            stats.observe_row(rows[j])
            stats.observe_ideal(ideals[i])
            stats.observe_ideal(ideals[j])
            if okhnf.is_debug:
                _check_integral(ideals[i], ideals[j])
            L.debug("eliminated (%d, %d): pivot ideal %r", i, j, ideals[j])

        pivot = rows[j][j]
        if not pivot.is_one():
            rows[j] = [x / pivot for x in rows[j]]
            ideals[j] = ideals[j].mul_elt(pivot)
            rows[j] = _reduce_row(rows[j], g * ideals[j].inverse(), stats)
            stats.observe_row(rows[j])
            stats.observe_ideal(ideals[j])
            if okhnf.is_debug:
                _check_integral(ideals[j])

    L.info(
        "modular sweep done: n=%d, %d eliminations, constant %.3f",
        n,
        stats.eliminations,
        stats.max_constant,
    )
    return PseudoMatrix(field, rows, ideals), stats


def euclidean_reconstruct(b, g):
    """
    Recovers the pseudo-HNF of M from the output of hnf_modular. Going from
    the last row up, with 𝔤ₙ = 𝔤:
        𝔠ⱼ = 𝔟ⱼ + 𝔤ⱼ,  u + v = 1 with u ∈ 𝔟ⱼ𝔠ⱼ⁻¹ and v ∈ 𝔤ⱼ𝔠ⱼ⁻¹,
        Wⱼ = u·Bⱼ + v·eⱼ reduced modulo 𝔤𝔠ⱼ⁻¹,  𝔤ⱼ₋₁ = 𝔤ⱼ𝔠ⱼ⁻¹.
    """
    field = b.field
    n = b.n
    g_j = g
    w = [None] * n
    ideals = [None] * n

    for j in reversed(range(n)):
        row = b.entries[j]
        if not row[j].is_one():
            raise VerificationFailed(f"Row {j} of the modular HNF has no unit pivot")
        c_j = b.ideals[j] + g_j
        c_inv = c_j.inverse()
        u, _ = split_one(b.ideals[j] * c_inv, g_j * c_inv)

        modulus = g * c_inv
        w[j] = (
            [reduce_mod_ideal(u * x, modulus) for x in row[:j]]
            + [field.one]
            + [field.zero] * (n - j - 1)
        )
        ideals[j] = c_j
        g_j = g_j * c_inv

    L.info("reconstruction done: n=%d", n)
    return HnfResult(field, w, ideals, ideal_product(field, ideals))


def hnf_pipeline(pm, modulus=None, p_strategy="single"):
    """Determinantal ideal (unless given), modular sweep, reconstruction."""
    g = modulus if modulus is not None else determinantal_ideal(pm, p_strategy)
    b, stats = hnf_modular(pm, g)
    result = euclidean_reconstruct(b, g)
    result.stats = stats
    return result
