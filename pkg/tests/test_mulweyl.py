import pytest

from app.coeffdom import CoefficientDomain
from app.exceptions import CharacteristicTooSmall, DimensionMismatch, TagMismatch, WindowTooSmall
from app.instrumentation import count_ops
from app.matrixarith import STRATEGIES, BlockCounter, DenseMatrix
from app.mulweyl import (
    EVAL_DIAGONAL_EVENT,
    INTERPOLATE_DIAGONAL_EVENT,
    eval_matrix,
    homogeneous_decompose,
    homogeneous_recompose,
    interpol_matrix,
    mul_weyl,
)
from app.orecore import PARTIAL, THETA, OrePoly, apply, mul_naive
from app.polyarith import DensePoly
from app.random_ops import random_op, random_pair
from tests.conftest import random_coeffs

GF = CoefficientDomain(65521)
QQ = CoefficientDomain(0)


def monomial(k, domain):
    return DensePoly.from_coeffs([0] * k + [1], domain)


# ---------------------------
# Evaluation and interpolation matrices
# ---------------------------
def test_eval_matrix_columns_are_images():
    P = random_op(3, 4, PARTIAL, GF, seed=1)
    m, n = 9, 6
    M = eval_matrix(P, m, n)
    for k in range(n + 1):
        image = list(apply(P, monomial(k, GF)).coeffs)
        image = (image + [0] * (m + 1))[:m + 1]
        assert [M.matrix.entry(i, k) for i in range(m + 1)] == image


def test_interpolation_identity(rng):
    for _ in range(200):
        d, r = rng.randint(0, 6), rng.randint(0, 6)
        P = random_op(d, r, PARTIAL, GF, seed=rng.randrange(2 ** 32))
        assert interpol_matrix(eval_matrix(P, d, r), d, r) == P


def test_every_matrix_is_an_evaluation_matrix(rng):
    d, r = 4, 3
    M = DenseMatrix.from_rows([random_coeffs(rng, r + 1, GF) for _ in range(d + 1)], GF)
    P = interpol_matrix(M, d, r)
    assert eval_matrix(P, d, r).matrix == M


def test_interpolation_over_rationals():
    P = random_op(4, 4, PARTIAL, QQ, seed=3)
    assert interpol_matrix(eval_matrix(P, 4, 4), 4, 4) == P


def test_eval_matrix_window_too_small():
    P = random_op(3, 4, PARTIAL, GF, seed=1)
    with pytest.raises(WindowTooSmall):
        eval_matrix(P, 2, 6)


def test_eval_matrix_needs_partial():
    with pytest.raises(TagMismatch):
        eval_matrix(OrePoly.one(THETA, GF), 1, 1)


def test_eval_matrix_characteristic():
    P = OrePoly.one(PARTIAL, CoefficientDomain(5))
    with pytest.raises(CharacteristicTooSmall):
        eval_matrix(P, 1, 5)


def test_interpol_matrix_shape():
    with pytest.raises(DimensionMismatch):
        interpol_matrix(DenseMatrix.zeros(3, 3, GF), 3, 2)


def test_diagonal_kernels_are_counted():
    P = random_op(3, 3, PARTIAL, GF, seed=2)
    with count_ops() as tally:
        interpol_matrix(eval_matrix(P, 3, 3), 3, 3)
    assert tally.events[EVAL_DIAGONAL_EVENT] == 7
    assert tally.events[INTERPOLATE_DIAGONAL_EVENT] == 7


# ---------------------------
# Products
# ---------------------------
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_product_matches_naive(strategy):
    for n in (1, 3, 8):
        B, A = random_pair(n, n, PARTIAL, GF, seed=[n, 9])
        assert mul_weyl(B, A, BlockCounter(n), strategy) == mul_naive(B, A)


@pytest.mark.parametrize("shapes", [((0, 5), (5, 0)), ((5, 0), (0, 5)), ((2, 7), (4, 1))])
def test_unequal_bidegrees(shapes):
    (d_b, r_b), (d_a, r_a) = shapes
    B = random_op(d_b, r_b, PARTIAL, QQ, seed=1)
    A = random_op(d_a, r_a, PARTIAL, QQ, seed=2)
    assert mul_weyl(B, A) == mul_naive(B, A)


def test_zero_factor():
    A = random_op(2, 2, PARTIAL, GF, seed=1)
    assert mul_weyl(OrePoly.zero(PARTIAL, GF), A).is_zero


def test_characteristic_bound():
    B, A = random_pair(3, 3, PARTIAL, CoefficientDomain(7), seed=1)
    with pytest.raises(CharacteristicTooSmall):
        mul_weyl(B, A)


@pytest.mark.parametrize("n", [4, 16, 32])
def test_block_counts(n):
    B, A = random_pair(n, n, PARTIAL, GF, seed=n)
    counter = BlockCounter(n)
    mul_weyl(B, A, counter, "naive")
    assert counter.total == 12

    counter = BlockCounter(n)
    assert mul_weyl(B, A, counter, "banded") == mul_naive(B, A)
    assert counter.strassen_products == 7
    assert counter.naive_products == 1
    assert counter.skipped_products == 3


# ---------------------------
# Homogeneous parts
# ---------------------------
@pytest.mark.parametrize("domain", [GF, QQ, CoefficientDomain(2)])
def test_homogeneous_round_trip(domain):
    for seed in range(10):
        P = random_op(seed % 5, (seed * 2) % 7, PARTIAL, domain, seed)
        assert homogeneous_recompose(homogeneous_decompose(P)) == P


def test_homogeneous_parts_apply_like_operator():
    P = random_op(4, 3, PARTIAL, GF, seed=8)
    parts = homogeneous_decompose(P)
    for k in range(8):
        assert parts.apply_monomial(k) == apply(P, monomial(k, GF))


def test_homogeneous_part_indexing():
    # X d^2 + 3 X^2 = (X d) d + 3 X^2
    P = OrePoly.from_grid([[0, 0, 0], [0, 0, 1], [3, 0, 0]], PARTIAL, GF)
    parts = homogeneous_decompose(P)
    assert parts.part(-1) == [0, 1]
    assert parts.part(2) == [3]
    assert parts.part(-5) == []
    assert parts.part(9) == []
