########################
# Partial via Laurent  #
########################

"""
Products in K[X]<d> by evaluation-interpolation in K[X, X^-1]<theta>.

Both factors are rewritten with Laurent coefficients, their evaluation
matrices on consecutive integer windows are multiplied, and the diagonals of
the product are interpolated and rewritten in partial form.
"""

from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence

from app.coeffdom import CoefficientDomain, Element, require_characteristic_above
from app.conversions import LaurentThetaPoly, rows_to_partial, stirling_first_matrix, stirling_second_matrix
from app.exceptions import ConversionError, ValidationError
from app.matrixarith import BandMetadata, BlockCounter, DenseMatrix, mat_mul
from app.orecore import PARTIAL, OrePoly, check_operands
from app.polyarith import from_ff_coeffs, normalize
from app.thetamul import VARIANTS, evaluate_family, interpolate_family


@dataclass(frozen=True)
class LaurentEvalMatrix:
    """
    Matrix of a Laurent operator on X^alpha, ..., X^beta.

    Column gamma - alpha holds L(X^gamma) on X^(-valuation + alpha), ...,
    X^(degree + beta).
    """

    matrix: DenseMatrix
    alpha: int
    beta: int
    valuation: int
    degree: int


def _window(
    rows: Sequence[Sequence[Element]],
    valuation: int,
    alpha: int,
    beta: int,
    domain: CoefficientDomain,
    variant: str,
    counter: Optional[BlockCounter],
    strategy: str,
    label: Optional[str],
    degree: Optional[int] = None
) -> LaurentEvalMatrix:
    count = beta - alpha + 1
    top = len(rows) - 1 - valuation
    shape = (valuation + top + count, count)
    band = BandMetadata.from_offsets(range(len(rows)), *shape)
    matrix = DenseMatrix.zeros(*shape, domain, band)
    values = evaluate_family(rows, alpha, count, domain, variant, counter, strategy, label, degree)
    for i, vals in enumerate(values):
        for c in range(count):
            matrix.data[i + c, c] = vals[c]
    return LaurentEvalMatrix(matrix, alpha, beta, valuation, top)


def laurent_to_matrix(
    L: LaurentThetaPoly,
    alpha: int,
    beta: int,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive",
    label: Optional[str] = None
) -> LaurentEvalMatrix:
    """
    Banded matrix whose diagonals are the values of the rows of L on
    alpha, ..., beta.

    Raises:
        CharacteristicTooSmall: If 0 < p <= beta - alpha.
        ValidationError: If alpha > beta or the variant is unknown.
    """
    if alpha > beta:
        raise ValidationError(f"Empty window [{alpha}, {beta}]")
    if variant not in VARIANTS:
        raise ValidationError(f"Unknown evaluation variant: {variant}")
    require_characteristic_above(L.domain, beta - alpha, "Laurent evaluation window")
    rows = [list(row) for row in L.coeffs] or [[]]
    return _window(rows, L.valuation, alpha, beta, L.domain, variant, counter, strategy, label)


def _to_laurent_rows(
    P: OrePoly,
    variant: str,
    counter: Optional[BlockCounter],
    strategy: str
) -> List[List[Element]]:
    """Rows s = -r..d of P in theta form, with the a priori valuation r."""
    domain = P.domain
    diagonals = [[P.coeff(s + j, j) for j in range(P.r + 1)] for s in range(-P.r, P.d + 1)]
    if variant == "fast":
        return [from_ff_coeffs(diag, domain) for diag in diagonals]
    product = mat_mul(
        DenseMatrix.from_rows(diagonals, domain),
        stirling_first_matrix(P.r, domain),
        strategy, counter, "convert_in"
    )
    return [normalize(row) for row in product.to_rows()]


def _from_laurent_rows(
    rows: Sequence[Sequence[Element]],
    valuation: int,
    r: int,
    domain: CoefficientDomain,
    variant: str,
    counter: Optional[BlockCounter],
    strategy: str
) -> OrePoly:
    if variant == "fast":
        return rows_to_partial({t - valuation: list(row) for t, row in enumerate(rows)}, domain)

    gamma = DenseMatrix.from_rows(
        [[row[k] if k < len(row) else 0 for k in range(r + 1)] for row in rows], domain
    )
    product = mat_mul(gamma, stirling_second_matrix(r, domain), strategy, counter, "convert_out").to_rows()
    height = len(rows) - valuation + r
    grid = [[domain.zero] * (r + 1) for _ in range(max(height, 0))]
    for t, row in enumerate(product):
        s = t - valuation
        for j, value in enumerate(row):
            if value == 0:
                continue
            if s + j < 0:
                raise ConversionError(f"Term X^{s + j} d^{j} has a negative X power")
            grid[s + j][j] = value
    return OrePoly.from_grid(grid, PARTIAL, domain)


def mul_partial_vdh(
    B: OrePoly,
    A: OrePoly,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive"
) -> OrePoly:
    """
    BA in K[X]<d> through Laurent theta evaluation matrices.

    With the a priori valuations v_A = r_A and v_B = r_B, the window of C on
    X^0..X^(r_C) is the product of the window of B on X^(-v_A)..X^(d_A + r_C)
    and the window of A on X^0..X^(r_C).

    Args:
        B (OrePoly): Left factor.
        A (OrePoly): Right factor.
        variant (str, optional): ``vandermonde`` routes conversions, evaluations and
            interpolations through matrix products; ``fast`` uses basis changes and
            arithmetic-progression evaluation. Defaults to "fast".
        counter (Optional[BlockCounter], optional): Block-product counter. Defaults to None.
        strategy (str, optional): Matrix strategy. Defaults to "naive".

    Returns:
        OrePoly: The product.

    Raises:
        CharacteristicTooSmall: If 0 < p <= v_A + d_A + r_C.
        TagMismatch: If the operators are not partial operators.
    """
    domain = check_operands(B, A, PARTIAL)
    if variant not in VARIANTS:
        raise ValidationError(f"Unknown evaluation variant: {variant}")
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    v_a, v_b = A.r, B.r
    r_c = A.r + B.r
    require_characteristic_above(domain, v_a + A.d + r_c, "Laurent evaluation-interpolation")

    rows_a = _to_laurent_rows(A, variant, counter, strategy)
    rows_b = _to_laurent_rows(B, variant, counter, strategy)
    m_a = _window(rows_a, v_a, 0, r_c, domain, variant, counter, strategy, "eval_a", A.r)
    m_b = _window(rows_b, v_b, -v_a, A.d + r_c, domain, variant, counter, strategy, "eval_b", B.r)
    m_c = mat_mul(m_b.matrix, m_a.matrix, strategy, counter, "product")

    v_c = v_a + v_b
    diagonals = v_c + A.d + B.d + 1
    values = [[m_c.entry(i + c, c) for c in range(r_c + 1)] for i in range(diagonals)]
    rows_c = interpolate_family(values, 0, domain, variant, counter, strategy, "interpolate")
    C = _from_laurent_rows(rows_c, v_c, r_c, domain, variant, counter, strategy)
    logging.debug(f"mul_partial_vdh bidegree ({A.d + B.d}, {r_c}) variant={variant} strategy={strategy}")
    return C
