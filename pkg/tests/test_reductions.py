import numpy as np
import pytest

from app.coeffdom import CoefficientDomain
from app.exceptions import CharacteristicTooSmall, DimensionMismatch, NotLowerTriangular
from app.matrixarith import DenseMatrix
from app.random_ops import random_lower_triangular
from app.reductions import lower_block_square, mat_mul_via_tri, tri_mul_via_ops

GF = CoefficientDomain(65521)


def schoolbook(left, right):
    domain = left.domain
    a, b = left.to_rows(), right.to_rows()
    out = []
    for i in range(left.rows):
        row = []
        for k in range(right.cols):
            acc = domain.zero
            for j in range(left.cols):
                acc = domain.add(acc, domain.mul(a[i][j], b[j][k]))
            row.append(acc)
        out.append(row)
    return out


def lower(size, domain, seed):
    return DenseMatrix.from_rows(random_lower_triangular(size, domain, seed).tolist(), domain)


def square(size, domain, seed):
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, domain.p or 100, size=(size, size)).tolist()
    return DenseMatrix.from_rows(rows, domain)


# ---------------------------
# Triangular products
# ---------------------------
def test_tri_mul_matches_schoolbook():
    for seed in range(25):
        size = 1 + seed
        L1 = lower(size, GF, [seed, 1])
        L2 = lower(size, GF, [seed, 2])
        assert tri_mul_via_ops(L1, L2).to_rows() == schoolbook(L1, L2)


def test_tri_mul_rationals():
    QQ = CoefficientDomain(0)
    L1 = lower(6, QQ, 1)
    L2 = lower(6, QQ, 2)
    assert tri_mul_via_ops(L1, L2).to_rows() == schoolbook(L1, L2)


def test_tri_mul_small_characteristic_falls_back():
    # size 5 over p = 7: evaluation-interpolation would need p > 3 * 4
    domain = CoefficientDomain(7)
    L1 = lower(5, domain, 3)
    L2 = lower(5, domain, 4)
    assert tri_mul_via_ops(L1, L2).to_rows() == schoolbook(L1, L2)


def test_tri_mul_characteristic_too_small():
    domain = CoefficientDomain(3)
    with pytest.raises(CharacteristicTooSmall):
        tri_mul_via_ops(lower(5, domain, 0), lower(5, domain, 1))


def test_tri_mul_identity_and_zero():
    I = DenseMatrix.identity(4, GF).with_band(None)
    L = lower(4, GF, 9)
    assert tri_mul_via_ops(I, L) == L
    Z = DenseMatrix.zeros(4, 4, GF)
    assert tri_mul_via_ops(Z, L) == Z


def test_tri_mul_rejects_upper_entries():
    U = DenseMatrix.from_rows([[1, 2], [0, 1]], GF)
    with pytest.raises(NotLowerTriangular):
        tri_mul_via_ops(U, U)


def test_tri_mul_rejects_shapes():
    with pytest.raises(DimensionMismatch):
        tri_mul_via_ops(lower(3, GF, 0), lower(4, GF, 0))
    with pytest.raises(DimensionMismatch):
        tri_mul_via_ops(DenseMatrix.zeros(2, 3, GF), DenseMatrix.zeros(2, 3, GF))


# ---------------------------
# General products
# ---------------------------
def test_block_identity_on_scalars():
    M = DenseMatrix.from_rows([[2]], GF)
    N = DenseMatrix.from_rows([[3]], GF)
    assert lower_block_square(M, N).to_rows() == [
        [1, 0, 0],
        [4, 1, 0],
        [6, 6, 1],
    ]


def test_mat_mul_via_tri():
    for seed in range(10):
        M = square(8, GF, [seed, 0])
        N = square(8, GF, [seed, 1])
        assert mat_mul_via_tri(M, N).to_rows() == schoolbook(N, M)


def test_mat_mul_via_tri_expected_size():
    M = square(3, GF, 0)
    with pytest.raises(DimensionMismatch):
        mat_mul_via_tri(M, M, n=4)
    with pytest.raises(DimensionMismatch):
        mat_mul_via_tri(M, square(4, GF, 1))
