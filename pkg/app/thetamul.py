########################
# Theta Multiplication #
########################

"""
Evaluation-interpolation products in K[X]<theta>.

theta acts diagonally on monomials, theta^j(X^k) = k^j X^k, so an operator A
with rows A~_i(t) = sum_j a_ij t^j sends X^k to X^k sum_i A~_i(k) X^i. The
matrix of A on the monomials X^0..X^(cols-1) is banded with entry (i+k, k) =
A~_i(k), and matrices of this shape multiply like the operators do.
"""

from dataclasses import dataclass
from functools import lru_cache
import logging
from typing import List, Optional, Sequence, Tuple, Union

from app.coeffdom import CoefficientDomain, Element, factorial_table, require_characteristic_above
from app.exceptions import ValidationError, WindowTooSmall
from app.matrixarith import BandMetadata, BlockCounter, DenseMatrix, mat_mul
from app.orecore import THETA, OrePoly, check_operands
from app.polyarith import eval_progression, interp_progression, normalize

VARIANTS = ("vandermonde", "fast")


@dataclass(frozen=True)
class DiagonalForm:
    """The polynomials A~_0, ..., A~_d (row i of the grid read as a polynomial)."""

    polys: Tuple[Tuple[Element, ...], ...]
    domain: CoefficientDomain

    @classmethod
    def from_operator(cls, A: OrePoly) -> 'DiagonalForm':
        return cls(tuple(tuple(A.row(i)) for i in range(A.d + 1)), A.domain)

    def to_operator(self) -> OrePoly:
        width = max((len(p) for p in self.polys), default=0)
        grid = [list(p) + [0] * (width - len(p)) for p in self.polys]
        return OrePoly.from_grid(grid, THETA, self.domain)


@dataclass(frozen=True)
class ThetaEvalMatrix:
    """Banded evaluation matrix together with the number of its diagonals."""

    matrix: DenseMatrix
    diagonals: int

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValidationError(f"Unknown evaluation variant: {variant}")


# ---------------------------------------------------------------------------
# Vandermonde matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _vandermonde_rows(start: int, count: int, degree: int, domain: CoefficientDomain) -> Tuple[Tuple[Element, ...], ...]:
    rows = []
    for k in range(count):
        x = domain.reduce(start + k)
        row, power = [], domain.one
        for _ in range(degree + 1):
            row.append(power)
            power = domain.mul(power, x)
        rows.append(tuple(row))
    return tuple(rows)


def vandermonde_matrix(start: int, count: int, degree: int, domain: CoefficientDomain) -> DenseMatrix:
    """V[k][j] = (start + k)^j, shape count x (degree + 1)."""
    return DenseMatrix.from_rows(_vandermonde_rows(start, count, degree, domain), domain)


@lru_cache(maxsize=256)
def _inverse_vandermonde_rows(start: int, size: int, domain: CoefficientDomain) -> Tuple[Tuple[Element, ...], ...]:
    # Lagrange basis on start, ..., start + size - 1:
    # l_k = W / ((X - start - k) W'(start + k)), W'(start + k) = k! (-1)^(size-1-k) (size-1-k)!
    table = factorial_table(size - 1, domain, require_inverses=True)
    w = [domain.one]
    for m in range(size):
        node = domain.reduce(start + m)
        nxt = [domain.zero] * (len(w) + 1)
        for i, c in enumerate(w):
            nxt[i + 1] = domain.add(nxt[i + 1], c)
            nxt[i] = domain.sub(nxt[i], domain.mul(c, node))
        w = nxt
    columns = []
    for k in range(size):
        node = domain.reduce(start + k)
        quot = [domain.zero] * size
        acc = domain.zero
        for i in range(size, 0, -1):
            acc = domain.add(w[i], domain.mul(acc, node))
            quot[i - 1] = acc
        scale = domain.mul(table.inverses[k], table.inverses[size - 1 - k])
        if (size - 1 - k) % 2:
            scale = domain.neg(scale)
        columns.append([domain.mul(q, scale) for q in quot])
    return tuple(tuple(columns[k][j] for k in range(size)) for j in range(size))


def inverse_vandermonde_matrix(start: int, size: int, domain: CoefficientDomain) -> DenseMatrix:
    """
    Inverse of the square Vandermonde matrix on start, ..., start + size - 1.

    Raises:
        CharacteristicTooSmall: If 0 < p < size.
    """
    require_characteristic_above(domain, size - 1, "Vandermonde inversion")
    return DenseMatrix.from_rows(_inverse_vandermonde_rows(start, size, domain), domain)


# ---------------------------------------------------------------------------
# Multipoint evaluation / interpolation of a family of polynomials
# ---------------------------------------------------------------------------

def evaluate_family(
    polys: Sequence[Sequence[Element]],
    start: int,
    count: int,
    domain: CoefficientDomain,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive",
    label: Optional[str] = None,
    degree: Optional[int] = None
) -> List[List[Element]]:
    """
    Values of every polynomial on start, ..., start + count - 1.

    Returns ``values[i][k]`` = polys[i](start + k). The Vandermonde variant does
    this as one matrix product V * (coefficients), the fast variant as one
    arithmetic-progression evaluation per polynomial. ``degree`` fixes the
    width of the Vandermonde matrix (default: the largest degree present).
    """
    _check_variant(variant)
    require_characteristic_above(domain, count - 1, "Evaluation on distinct points")
    if not polys or count <= 0:
        return [[domain.zero] * max(count, 0) for _ in polys]
    if variant == "fast":
        return [eval_progression(poly, start, count - 1, domain) for poly in polys]

    if degree is None:
        degree = max(max((len(poly) for poly in polys), default=1) - 1, 0)
    coeffs = DenseMatrix.from_rows(
        [[poly[j] if j < len(poly) else 0 for poly in polys] for j in range(degree + 1)], domain
    )
    values = mat_mul(vandermonde_matrix(start, count, degree, domain), coeffs, strategy, counter, label)
    rows = values.to_rows()
    return [[rows[k][i] for k in range(count)] for i in range(len(polys))]


def interpolate_family(
    values: Sequence[Sequence[Element]],
    start: int,
    domain: CoefficientDomain,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive",
    label: Optional[str] = None
) -> List[List[Element]]:
    """
    Inverse of ``evaluate_family``: ``values[i]`` are the values of polynomial i
    on start, start + 1, ...; all value lists have the same length.
    """
    _check_variant(variant)
    if not values:
        return []
    size = len(values[0])
    require_characteristic_above(domain, size - 1, "Interpolation on distinct points")
    if variant == "fast":
        return [interp_progression(vals, start, domain) for vals in values]

    evaluations = DenseMatrix.from_rows([[vals[k] for vals in values] for k in range(size)], domain)
    coeffs = mat_mul(inverse_vandermonde_matrix(start, size, domain), evaluations, strategy, counter, label)
    rows = coeffs.to_rows()
    return [normalize([rows[j][i] for j in range(size)]) for i in range(len(values))]


# ---------------------------------------------------------------------------
# Operators <-> evaluation matrices
# ---------------------------------------------------------------------------

def theta_to_matrix(
    A: OrePoly,
    rows: int,
    cols: int,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive",
    label: Optional[str] = None
) -> ThetaEvalMatrix:
    """
    Matrix of A on X^0, ..., X^(cols-1), truncated to its first ``rows`` rows.

    Args:
        A (OrePoly): Theta operator.
        rows (int): Number of rows of the window.
        cols (int): Number of columns (evaluation points 0, ..., cols - 1).
        variant (str, optional): ``vandermonde`` or ``fast``. Defaults to "fast".
        counter (Optional[BlockCounter], optional): Block-product counter. Defaults to None.
        strategy (str, optional): Matrix strategy for the Vandermonde product. Defaults to "naive".
        label (Optional[str], optional): Counter label. Defaults to None.

    Returns:
        ThetaEvalMatrix: Banded matrix with entry (i+k, k) = A~_i(k).

    Raises:
        CharacteristicTooSmall: If 0 < p <= cols - 1.
        TagMismatch: If A is not a theta operator.
    """
    check_operands(A, A, THETA)
    domain = A.domain
    diagonals = A.d + 1
    band = BandMetadata.from_offsets(range(diagonals), rows, cols)
    matrix = DenseMatrix.zeros(rows, cols, domain, band)
    if A.is_zero or rows <= 0 or cols <= 0:
        require_characteristic_above(domain, cols - 1, "Evaluation on distinct points")
        return ThetaEvalMatrix(matrix, max(diagonals, 0))

    polys = [A.row(i) for i in range(diagonals)]
    values = evaluate_family(polys, 0, cols, domain, variant, counter, strategy, label, degree=A.r)
    for i, vals in enumerate(values):
        for k in range(min(cols, rows - i)):
            matrix.data[i + k, k] = vals[k]
    return ThetaEvalMatrix(matrix, diagonals)


def matrix_to_theta(
    M: Union[ThetaEvalMatrix, DenseMatrix],
    d: int,
    r: int,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive",
    label: Optional[str] = None
) -> OrePoly:
    """
    The operator of bidegree at most (d, r) whose evaluation matrix is M.

    Raises:
        CharacteristicTooSmall: If 0 < p <= r.
        InconsistentBand: If M has nonzero entries off the d + 1 diagonals.
        WindowTooSmall: If M has fewer than d + r + 1 rows or r + 1 columns.
    """
    matrix = M.matrix if isinstance(M, ThetaEvalMatrix) else M
    domain = matrix.domain
    require_characteristic_above(domain, r, "Interpolation on distinct points")
    if matrix.rows < d + r + 1 or matrix.cols < r + 1:
        raise WindowTooSmall(
            f"A {matrix.rows}x{matrix.cols} window cannot determine bidegree ({d}, {r})"
        )
    matrix.with_band(BandMetadata.from_offsets(range(d + 1), matrix.rows, matrix.cols)).check_band()

    values = [[matrix.entry(i + k, k) for k in range(r + 1)] for i in range(d + 1)]
    polys = interpolate_family(values, 0, domain, variant, counter, strategy, label)
    return DiagonalForm(tuple(tuple(p) for p in polys), domain).to_operator()


def mul_theta_vdh(
    B: OrePoly,
    A: OrePoly,
    variant: str = "fast",
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive"
) -> OrePoly:
    """
    BA in K[X]<theta> by evaluation and interpolation.

    The evaluation matrix of C = BA on (d_C + r_C + 1) x (r_C + 1) is the
    product of the window (d_C + r_C + 1) x (d_A + r_C + 1) of B and the window
    (d_A + r_C + 1) x (r_C + 1) of A; the diagonals of that product are
    interpolated back.

    Raises:
        CharacteristicTooSmall: If 0 < p <= d_A + r_C.
        TagMismatch: If the operators are not theta operators.
    """
    domain = check_operands(B, A, THETA)
    _check_variant(variant)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(THETA, domain)
    d_c, r_c = A.d + B.d, A.r + B.r
    require_characteristic_above(domain, A.d + r_c, "Theta evaluation-interpolation")

    m_a = theta_to_matrix(A, A.d + r_c + 1, r_c + 1, variant, counter, strategy, "eval_a")
    m_b = theta_to_matrix(B, d_c + r_c + 1, A.d + r_c + 1, variant, counter, strategy, "eval_b")
    m_c = mat_mul(m_b.matrix, m_a.matrix, strategy, counter, "product")
    C = matrix_to_theta(m_c, d_c, r_c, variant, counter, strategy, "interpolate")
    logging.debug(f"mul_theta_vdh bidegree ({d_c}, {r_c}) variant={variant} strategy={strategy}")
    return C
