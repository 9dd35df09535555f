########################
# Matrix Reductions    #
########################

"""
Matrix products computed through operator products.

A lower-triangular matrix is the top-left window of the evaluation matrix of
a theta operator whose row i interpolates the i-th diagonal. Squaring the
block matrix [[I, 0, 0], [M, I, 0], [0, N, I]] gives [[I, 0, 0], [2M, I, 0],
[NM, 2N, I]], so a general product reduces to a triangular one.
"""

import logging
from typing import Optional

import numpy as np

from app.charp import mul_theta_p
from app.coeffdom import CoefficientDomain, check_same_domain, require_characteristic_above
from app.exceptions import CharacteristicTooSmall, DimensionMismatch, NotLowerTriangular
from app.matrixarith import DenseMatrix
from app.orecore import THETA, OrePoly
from app.polyarith import interp_progression
from app.thetamul import mul_theta_vdh, theta_to_matrix


def _check_lower_triangular(L: DenseMatrix, name: str) -> None:
    if L.rows != L.cols:
        raise DimensionMismatch(f"{name} is {L.rows}x{L.cols}, not square")
    above = L.data[np.triu_indices(L.rows, k=1)]
    if any(x != 0 for x in above.tolist()):
        raise NotLowerTriangular(f"{name} has nonzero entries above the diagonal")


def _diagonal_operator(L: DenseMatrix) -> OrePoly:
    """Row l interpolates diagonal l of L on the points 0, ..., n - l."""
    size = L.rows
    domain = L.domain
    grid = [[domain.zero] * size for _ in range(size)]
    for l in range(size):
        values = [L.entry(l + k, k) for k in range(size - l)]
        poly = interp_progression(values, 0, domain)
        grid[l][:len(poly)] = poly
    return OrePoly.from_grid(grid, THETA, domain)


def _theta_product(B: OrePoly, A: OrePoly, domain: CoefficientDomain) -> OrePoly:
    try:
        return mul_theta_vdh(B, A, "fast")
    except CharacteristicTooSmall:
        # n < p <= 3n: the product has no division in characteristic p
        if not domain.p:
            raise
        logging.info(f"Characteristic {domain.p} too small for evaluation-interpolation, using mul_theta_p")
        return mul_theta_p(B, A)


def tri_mul_via_ops(L1: DenseMatrix, L2: DenseMatrix) -> DenseMatrix:
    """
    L1 * L2 for lower-triangular matrices of one size, as the top-left window
    of the evaluation matrix of a theta product.

    Args:
        L1 (DenseMatrix): Left factor.
        L2 (DenseMatrix): Right factor.

    Returns:
        DenseMatrix: The product.

    Raises:
        NotLowerTriangular: If a factor has a nonzero entry above its diagonal.
        DimensionMismatch: If the factors are not square of one size.
        CharacteristicTooSmall: If 0 < p <= n, where the matrices are (n+1) x (n+1).
    """
    domain = check_same_domain(L1.domain, L2.domain)
    _check_lower_triangular(L1, "Left factor")
    _check_lower_triangular(L2, "Right factor")
    if L1.shape != L2.shape:
        raise DimensionMismatch(f"Cannot pair a {L1.rows}x{L1.cols} factor with a {L2.rows}x{L2.cols} one")
    size = L1.rows
    if size == 0:
        return DenseMatrix.zeros(0, 0, domain)
    require_characteristic_above(domain, size - 1, "Triangular product via operators")

    B = _diagonal_operator(L1)
    A = _diagonal_operator(L2)
    C = _theta_product(B, A, domain)
    if C.is_zero:
        return DenseMatrix.zeros(size, size, domain)
    return theta_to_matrix(C, size, size, "fast").matrix.with_band(None)


def _block_square_factor(M: DenseMatrix, N: DenseMatrix, n: Optional[int]) -> DenseMatrix:
    domain = check_same_domain(M.domain, N.domain)
    n = M.rows if n is None else n
    if M.shape != (n, n) or N.shape != (n, n):
        raise DimensionMismatch(f"Expected two {n}x{n} matrices, got {M.rows}x{M.cols} and {N.rows}x{N.cols}")
    T = DenseMatrix.identity(3 * n, domain).with_band(None)
    T.data[n:2 * n, 0:n] = M.data
    T.data[2 * n:3 * n, n:2 * n] = N.data
    return T


def lower_block_square(M: DenseMatrix, N: DenseMatrix, n: Optional[int] = None) -> DenseMatrix:
    """
    Square of [[I, 0, 0], [M, I, 0], [0, N, I]], computed with ``tri_mul_via_ops``.

    Raises:
        DimensionMismatch: If M or N is not n x n.
    """
    T = _block_square_factor(M, N, n)
    return tri_mul_via_ops(T, T)


def mat_mul_via_tri(M: DenseMatrix, N: DenseMatrix, n: Optional[int] = None) -> DenseMatrix:
    """
    N * M, read off the lower-left block of ``lower_block_square``.

    Args:
        M (DenseMatrix): Right factor, n x n.
        N (DenseMatrix): Left factor, n x n.
        n (Optional[int], optional): Expected size. Defaults to the size of M.

    Returns:
        DenseMatrix: The product N * M.

    Raises:
        DimensionMismatch: If M or N is not n x n.
    """
    square = lower_block_square(M, N, n)
    size = M.rows if n is None else n
    result = DenseMatrix(square.data[2 * size:3 * size, 0:size].copy(), square.domain)
    logging.debug(f"mat_mul_via_tri size {size}")
    return result
