import logging
from fractions import Fraction

import pytest

from okhnf.corpus import random_integral_ideal, random_pseudo_matrix
from okhnf.determinant import determinantal_ideal
from okhnf.exceptions import NonIntegralModule, SingularModulus
from okhnf.ideal import FracIdeal
from okhnf.linalg import hnf_lower
from okhnf.modular import euclidean_reconstruct, hnf_modular, hnf_pipeline
from okhnf.pseudo_matrix import (
    PseudoMatrix,
    hnf_naive,
    module_contains,
    modules_equal,
)


H = pytest.helpers.helpers()
L = logging.getLogger("okhnf.tests.modular")


def test_pipeline_rational():
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[2, 1], [0, 3]])
    result = hnf_pipeline(pm)
    assert result.is_hnf_shaped()
    assert result.w == ((1, 0), (2, 1))
    assert result.ideals == (H.ideal(field, 6), FracIdeal.unit(field))
    assert result.det_ideal == H.ideal(field, 6)


def test_pipeline_with_modulus_multiple():
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[2, 1], [0, 3]])
    result = hnf_pipeline(pm, modulus=H.ideal(field, 12))
    assert result.ideals == (H.ideal(field, 6), FracIdeal.unit(field))
    assert result.det_ideal == H.ideal(field, 6)
    assert modules_equal(pm, result.as_pseudo_matrix())


def test_pipeline_identity():
    field = H.field("gauss")
    pm = PseudoMatrix.identity(field, 2)
    result = hnf_pipeline(pm)
    assert result.w == ((1, 0), (0, 1))
    assert result.ideals == (FracIdeal.unit(field), FracIdeal.unit(field))
    assert result.det_ideal.is_unit()
    assert result.stats.eliminations == 0


def test_pipeline_one_by_one(any_field):
    x = any_field.from_rational(6)
    a = H.ideal(any_field, 1)
    result = hnf_pipeline(PseudoMatrix(any_field, [[x]], [a]))
    assert result.w == ((1,),)
    assert result.ideals == (H.ideal(any_field, 6),)


def test_pipeline_gauss_diagonal():
    field = H.field("gauss")
    pm = H.pseudo_matrix(field, [[(1, 1), 0], [0, 1]])
    result = hnf_pipeline(pm)
    assert result.ideals == (H.ideal(field, H.elt(field, 1, 1)), FracIdeal.unit(field))
    assert result.det_ideal.hnf == ((2, 0), (1, 1))


def test_pipeline_swaps_rows():
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[0, 1], [1, 0]])
    result = hnf_pipeline(pm)
    assert result.w == ((1, 0), (0, 1))
    assert result.stats.swaps == 1


def test_pipeline_stats_json():
    field = H.field("Q")
    result = hnf_pipeline(H.pseudo_matrix(field, [[2, 1], [0, 3]]))
    stats = result.stats.__json__()
    assert set(stats) == {
        "max_element_size",
        "max_ideal_size",
        "modulus_size",
        "constant",
        "normalizations",
        "reductions",
        "reductions_skipped",
        "eliminations",
        "swaps",
        "paddings",
    }
    assert stats["eliminations"] == 1
    assert stats["normalizations"] >= 2
    assert "stats" in result.__json__()


def test_modular_sweep_shape():
    field = H.field("gauss")
    pm = H.pseudo_matrix(field, [[(3, 1), (1, 2)], [(1, -1), (4, 0)]])
    g = determinantal_ideal(pm)
    b, stats = hnf_modular(pm, g)
    for i, row in enumerate(b.entries):
        assert row[i].is_one()
        assert all(x.is_zero() for x in row[i + 1 :])
    assert all(ideal.is_integral() for ideal in b.ideals)
    result = euclidean_reconstruct(b, g)
    assert modules_equal(pm, result.as_pseudo_matrix())


def test_modular_rejects_fractional_modulus():
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[2, 1], [0, 3]])
    with pytest.raises(SingularModulus):
        hnf_modular(pm, H.ideal(field, Fraction(1, 2)))


def test_modular_rejects_non_integral_module():
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[Fraction(1, 2), 0], [0, 1]])
    with pytest.raises(NonIntegralModule):
        hnf_pipeline(pm, modulus=FracIdeal.unit(field))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pipeline_matches_naive(any_field, rng, n):
    for _ in range(2):
        pm = random_pseudo_matrix(rng, any_field, n)
        result = hnf_pipeline(pm)
        assert result.is_hnf_shaped()
        assert modules_equal(pm, result.as_pseudo_matrix())

        naive = hnf_naive(pm)
        assert naive.det_ideal == result.det_ideal
        assert modules_equal(naive.as_pseudo_matrix(), result.as_pseudo_matrix())

        # the determinantal ideal times any unit vector stays inside the module
        for i in range(n):
            e_i = [any_field.one if k == i else any_field.zero for k in range(n)]
            assert module_contains(pm, result.det_ideal, e_i)


def test_pipeline_multi_prime_strategy(rng):
    field = H.field("golden")
    pm = random_pseudo_matrix(rng, field, 3)
    single = hnf_pipeline(pm)
    multi = hnf_pipeline(pm, p_strategy="multi")
    assert single.det_ideal == multi.det_ideal
    assert modules_equal(single.as_pseudo_matrix(), multi.as_pseudo_matrix())


def test_pipeline_with_random_modulus_multiples(any_field, rng):
    for _ in range(2):
        pm = random_pseudo_matrix(rng, any_field, 2)
        g = determinantal_ideal(pm) * random_integral_ideal(rng, any_field)
        result = hnf_pipeline(pm, modulus=g)
        assert result.det_ideal == determinantal_ideal(pm)
        assert modules_equal(pm, result.as_pseudo_matrix())


def test_degree_one_matches_integer_hnf(rng):
    field = H.field("Q")
    for n in (2, 3, 4):
        rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        h = hnf_lower(rows)
        if len(h) != n:
            continue
        pm = H.pseudo_matrix(field, rows)
        result = hnf_pipeline(pm)
        assert result.ideals == tuple(H.ideal(field, h[i][i]) for i in range(n))


def test_modular_pads_zero_pivot_column():
    # the last column is zero above and on the diagonal, so the pivot has to be
    # padded from 𝔤𝔟⁻¹ for the sweep to go on
    field = H.field("Q")
    pm = H.pseudo_matrix(field, [[1, 0], [3, 0]])
    g = H.ideal(field, 5)
    b, stats = hnf_modular(pm, g)
    assert stats.paddings == 1
    assert stats.swaps == 0
    assert all(row[i].is_one() for i, row in enumerate(b.entries))

    result = euclidean_reconstruct(b, g)
    assert result.is_hnf_shaped()
    assert result.ideals == (FracIdeal.unit(field), H.ideal(field, 5))
    # M + 5Z² = Z(1, 0) + Z(0, 5)
    expected = H.pseudo_matrix(field, [[1, 0], [0, 5]])
    assert modules_equal(expected, result.as_pseudo_matrix())


def test_pipeline_with_modulus_multiples_matches_naive(any_field, rng):
    paddings = 0
    for _ in range(6):
        pm = random_pseudo_matrix(rng, any_field, 3)
        g = determinantal_ideal(pm) * random_integral_ideal(rng, any_field)
        result = hnf_pipeline(pm, modulus=g)
        paddings += result.stats.paddings
        naive = hnf_naive(pm)
        assert modules_equal(naive.as_pseudo_matrix(), result.as_pseudo_matrix())
    L.debug("%s: %d zero-pivot paddings", any_field.label, paddings)
