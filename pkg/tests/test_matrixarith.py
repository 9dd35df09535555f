import pytest

from app.coeffdom import CoefficientDomain
from app.exceptions import DimensionMismatch, DomainMismatch, InconsistentBand, ValidationError
from app.instrumentation import count_ops
from app.matrixarith import (
    MATRIX_EVENT,
    STRATEGIES,
    BandMetadata,
    BlockCounter,
    DenseMatrix,
    Diagonal,
    mat_mul,
    partition,
    strassen_2x2,
)
from app.ore_config import OreConfig, set_config
from tests.conftest import random_coeffs


def random_matrix(rng, rows, cols, domain, band=None):
    data = [random_coeffs(rng, cols, domain) for _ in range(rows)]
    if band is not None:
        data = [[x if band.contains(i, j) else 0 for j, x in enumerate(row)] for i, row in enumerate(data)]
    return DenseMatrix.from_rows(data, domain, band)


def schoolbook(A, B):
    domain = A.domain
    a, b = A.to_rows(), B.to_rows()
    out = []
    for i in range(A.rows):
        row = []
        for k in range(B.cols):
            acc = domain.zero
            for j in range(A.cols):
                acc = domain.add(acc, domain.mul(a[i][j], b[j][k]))
            row.append(acc)
        out.append(row)
    return out


# Test Products
@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("p, shape", [
    (65521, (8, 8, 8)),
    (65521, (7, 10, 5)),
    (0, (6, 6, 6)),
    (2 ** 61 - 1, (4, 6, 4)),
    (2147483647, (5, 9, 3)),
])
def test_strategies_agree_with_schoolbook(rng, strategy, p, shape):
    domain = CoefficientDomain(p)
    m, k, n = shape
    A = random_matrix(rng, m, k, domain)
    B = random_matrix(rng, k, n, domain)
    counter = BlockCounter(3)
    C = mat_mul(A, B, strategy, counter)
    assert C.to_rows() == schoolbook(A, B)


def test_element_level_strassen(rng, gf):
    set_config(OreConfig(strassen_threshold=2))
    A = random_matrix(rng, 16, 16, gf)
    B = random_matrix(rng, 16, 16, gf)
    assert mat_mul(A, B, "blocked").to_rows() == schoolbook(A, B)


def test_matmul_operator(rng, gf):
    A = random_matrix(rng, 3, 4, gf)
    B = random_matrix(rng, 4, 2, gf)
    assert (A @ B) == mat_mul(A, B)


def test_matrix_product_counts_operations(gf):
    A = DenseMatrix.identity(4, gf)
    with count_ops() as tally:
        mat_mul(A, A)
    assert tally.ops == 64
    assert tally.events[MATRIX_EVENT] == 1


# Test Block Counting
def test_naive_block_count(rng, gf):
    A = random_matrix(rng, 8, 8, gf)
    counter = BlockCounter(4)
    mat_mul(A, A, "naive", counter, label="test")
    assert counter.naive_products == 8
    assert counter.by_label["test"] == 8


def test_rectangular_block_grid(rng, gf):
    # a (2n+1) x (3n+1) matrix is a 2 x 3 block grid
    A = random_matrix(rng, 9, 13, gf)
    B = random_matrix(rng, 13, 4, gf)
    counter = BlockCounter(4)
    mat_mul(A, B, "blocked", counter)
    assert counter.naive_products == 2 * 3 * 1


def test_strassen_block_count(rng, gf):
    A = random_matrix(rng, 8, 8, gf)
    B = random_matrix(rng, 8, 8, gf)
    counter = BlockCounter(4)
    C = mat_mul(A, B, "strassen", counter)
    assert counter.strassen_products == 7
    assert counter.naive_products == 0
    assert C.to_rows() == schoolbook(A, B)


def test_banded_skips_zero_blocks(rng, gf):
    band = BandMetadata.from_offsets(range(0, 8), 8, 8)
    L = random_matrix(rng, 8, 8, gf, band)
    B = random_matrix(rng, 8, 8, gf)
    counter = BlockCounter(4)
    C = mat_mul(L, B, "banded", counter)
    assert C.to_rows() == schoolbook(L, B)
    assert counter.naive_products == 6
    assert counter.skipped_products == 2
    assert counter.total == 6


def test_unbanded_operands_are_not_skipped(rng, gf):
    A = random_matrix(rng, 8, 8, gf)
    counter = BlockCounter(4)
    mat_mul(A, A, "banded", counter)
    assert counter.skipped_products == 0
    assert counter.total == 7


def test_strassen_2x2(rng, gf):
    blocks = [[random_matrix(rng, 3, 3, gf) for _ in range(2)] for _ in range(4)]
    left, right = blocks[:2], blocks[2:]
    counter = BlockCounter(3)
    grid = strassen_2x2(left, right, counter)
    assert counter.strassen_products == 7

    def assemble(g):
        rows = []
        for block_row in g:
            for i in range(3):
                rows.append(block_row[0].to_rows()[i] + block_row[1].to_rows()[i])
        return DenseMatrix.from_rows(rows, gf)

    assert assemble(grid).to_rows() == schoolbook(assemble(left), assemble(right))


def test_strassen_2x2_rejects_bad_blocks(gf):
    square = DenseMatrix.identity(2, gf)
    wide = DenseMatrix.zeros(2, 3, gf)
    with pytest.raises(DimensionMismatch):
        strassen_2x2([[square, square], [square, wide]], [[square, square], [square, square]])
    with pytest.raises(DimensionMismatch):
        strassen_2x2([[square, square]], [[square, square], [square, square]])


# Test Errors
def test_dimension_mismatch(gf):
    with pytest.raises(DimensionMismatch, match="Cannot multiply"):
        mat_mul(DenseMatrix.zeros(2, 3, gf), DenseMatrix.zeros(2, 3, gf))


def test_domain_mismatch(gf, qq):
    with pytest.raises(DomainMismatch):
        mat_mul(DenseMatrix.identity(2, gf), DenseMatrix.identity(2, qq))


def test_unknown_strategy(gf):
    with pytest.raises(ValidationError, match="Unknown matrix strategy"):
        mat_mul(DenseMatrix.identity(2, gf), DenseMatrix.identity(2, gf), "winograd")


def test_ragged_rows(gf):
    with pytest.raises(ValidationError):
        DenseMatrix.from_rows([[1, 2], [3]], gf)


def test_block_counter_requires_positive_size():
    with pytest.raises(ValidationError):
        BlockCounter(0)


# Test Band Metadata
def test_band_from_offsets_clips_to_shape():
    band = BandMetadata.from_offsets([-1, 0, 2, 5], 4, 3)
    assert band.diagonals == (Diagonal(-1, 0, 2), Diagonal(0, 0, 3), Diagonal(2, 2, 2))
    assert band.contains(3, 1)
    assert not band.contains(0, 2)
    assert band.block_nonzero((2, 4), (0, 2))
    assert not band.block_nonzero((0, 1), (2, 3))


def test_band_must_fit_matrix(gf):
    with pytest.raises(ValidationError, match="does not fit"):
        DenseMatrix.zeros(2, 2, gf, BandMetadata((Diagonal(0, 0, 3),)))


def test_check_band(gf):
    band = BandMetadata.from_offsets([0], 2, 2)
    DenseMatrix.from_rows([[1, 0], [0, 2]], gf, band).check_band()
    with pytest.raises(InconsistentBand):
        DenseMatrix.from_rows([[1, 5], [0, 2]], gf, band).check_band()


def test_partition():
    assert partition(7, 3) == [(0, 3), (3, 7)]
    assert partition(2, 3) == [(0, 2)]
    assert partition(9, 3) == [(0, 3), (3, 6), (6, 9)]


def test_window_and_entries(gf):
    M = DenseMatrix.from_rows([[1, 2, 3], [4, 5, 6]], gf)
    assert M.window(1, 2).to_rows() == [[1, 2]]
    assert M.entries() == [1, 2, 3, 4, 5, 6]
    assert M.entry(1, 2) == 6
    assert repr(M) == "DenseMatrix(2x3 over GF(65521))"
