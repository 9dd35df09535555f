########################
# Direct Weyl Product  #
########################

"""
Evaluation-interpolation product computed directly in K[X]<d>.

The matrix of P on X^0..X^n, truncated mod X^(m+1), is banded. On diagonal l
the entry in column k is k! times the coefficient of X^k in s_l(X) exp(X),
where s_l[j] = c[l+j][j]; one truncated product per diagonal builds the
matrix, and multiplying by exp(-X) inverts it.
"""

from dataclasses import dataclass
import logging
from typing import List, Optional, Tuple

from app.coeffdom import (
    CoefficientDomain,
    Element,
    exp_series,
    factorial_table,
    require_characteristic_above,
)
from app.exceptions import DimensionMismatch, WindowTooSmall
from app.instrumentation import charge
from app.matrixarith import BandMetadata, BlockCounter, DenseMatrix, mat_mul
from app.orecore import PARTIAL, OrePoly, check_operands
from app.polyarith import (
    DensePoly,
    evaluate,
    falling_factorial_value,
    from_ff_coeffs,
    mul_trunc,
    normalize,
    pad,
    to_ff_coeffs,
)

EVAL_DIAGONAL_EVENT = "mulweyl.eval_diagonal"
INTERPOLATE_DIAGONAL_EVENT = "mulweyl.interpolate_diagonal"


@dataclass(frozen=True)
class PartialEvalMatrix:
    """Matrix of an operator on X^0..X^n modulo X^(m+1); shape (m+1) x (n+1)."""

    matrix: DenseMatrix
    m: int
    n: int


def _diagonal(c: OrePoly, l: int) -> List[Element]:
    """s_l[j] = c[l+j][j]."""
    return [c.coeff(l + j, j) for j in range(c.r + 1)]


def eval_matrix(P: OrePoly, m: int, n: int) -> PartialEvalMatrix:
    """
    Matrix of P on X^0, ..., X^n modulo X^(m+1).

    Raises:
        CharacteristicTooSmall: If 0 < p <= n.
        WindowTooSmall: If m < d or n < r.
        TagMismatch: If P is not a partial operator.
    """
    domain = check_operands(P, P, PARTIAL)
    require_characteristic_above(domain, n, "Evaluation matrix")
    if not P.is_zero and (m < P.d or n < P.r):
        raise WindowTooSmall(f"Window ({m}, {n}) is smaller than bidegree ({P.d}, {P.r})")

    table = factorial_table(n, domain, require_inverses=True)
    exp = exp_series(n, domain)
    offsets = range(-P.r, P.d + 1) if not P.is_zero else range(0)
    band = BandMetadata.from_offsets(offsets, m + 1, n + 1)
    matrix = DenseMatrix.zeros(m + 1, n + 1, domain, band)

    for l in offsets:
        s = normalize(_diagonal(P, l))
        if not s:
            continue
        length = min(m - l, n) + 1
        if length <= 0:
            continue
        S = pad(mul_trunc(s, exp, length, domain), length, domain)
        charge(length, EVAL_DIAGONAL_EVENT)
        for k in range(max(0, -l), length):
            matrix.data[k + l, k] = domain.mul(table.values[k], S[k])
    return PartialEvalMatrix(matrix, m, n)


def interpol_matrix(M: PartialEvalMatrix, d: int, r: int) -> OrePoly:
    """
    The operator of bidegree at most (d, r) whose matrix on X^0..X^r modulo
    X^(d+1) is M. Every (d+1) x (r+1) matrix is such a matrix.

    Raises:
        CharacteristicTooSmall: If 0 < p <= r.
        DimensionMismatch: If M does not have shape (d+1) x (r+1).
    """
    matrix = M.matrix if isinstance(M, PartialEvalMatrix) else M
    domain = matrix.domain
    if matrix.shape != (d + 1, r + 1):
        raise DimensionMismatch(f"Expected a {d + 1}x{r + 1} matrix, got {matrix.rows}x{matrix.cols}")
    require_characteristic_above(domain, r, "Interpolation matrix")
    table = factorial_table(r, domain, require_inverses=True)
    exp_neg = exp_series(r, domain, sign=-1)

    grid = [[domain.zero] * (r + 1) for _ in range(d + 1)]
    for l in range(-r, d + 1):
        length = min(d - l, r) + 1
        t = [domain.zero] * length
        for k in range(max(0, -l), length):
            t[k] = domain.mul(matrix.entry(k + l, k), table.inverses[k])
        t = normalize(t)
        if not t:
            continue
        T = pad(mul_trunc(t, exp_neg, length, domain), length, domain)
        charge(length, INTERPOLATE_DIAGONAL_EVENT)
        for i in range(max(0, -l), length):
            grid[l + i][i] = T[i]
    return OrePoly.from_grid(grid, PARTIAL, domain)


def mul_weyl(
    B: OrePoly,
    A: OrePoly,
    counter: Optional[BlockCounter] = None,
    strategy: str = "naive"
) -> OrePoly:
    """
    BA from the identity M(B; d_C, d_A + r_C) * M(A; d_A + r_C, r_C) = M(C; d_C, r_C).

    Raises:
        CharacteristicTooSmall: If 0 < p <= d_A + r_C.
        TagMismatch: If the operators are not partial operators.
    """
    domain = check_operands(B, A, PARTIAL)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    d_c, r_c = A.d + B.d, A.r + B.r
    require_characteristic_above(domain, A.d + r_c, "Weyl evaluation-interpolation")

    m_b = eval_matrix(B, d_c, A.d + r_c)
    m_a = eval_matrix(A, A.d + r_c, r_c)
    m_c = mat_mul(m_b.matrix, m_a.matrix, strategy, counter, "product")
    C = interpol_matrix(PartialEvalMatrix(m_c, d_c, r_c), d_c, r_c)
    logging.debug(f"mul_weyl bidegree ({d_c}, {r_c}) strategy={strategy}")
    return C


# ---------------------------------------------------------------------------
# Homogeneous decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousParts:
    """
    P = sum_{i=1..r} lower[i-1](X d) d^i + sum_{i=0..d} X^i upper[i](X d).

    Each part is a coefficient tuple in the variable t = X d; deg upper[i] <=
    min(d - i, r) and deg lower[i-1] <= min(r - i, d).
    """

    lower: Tuple[Tuple[Element, ...], ...]
    upper: Tuple[Tuple[Element, ...], ...]
    domain: CoefficientDomain

    def part(self, index: int) -> List[Element]:
        """l_index for index in [-r, d]."""
        if index >= 0:
            return list(self.upper[index]) if index < len(self.upper) else []
        return list(self.lower[-index - 1]) if -index <= len(self.lower) else []

    def apply_monomial(self, k: int) -> DensePoly:
        """
        P(X^k) = sum_{i>=1} (k)_i l_{-i}(k-i) X^(k-i) + sum_{i>=0} l_i(k) X^(k+i).
        """
        domain = self.domain
        out = [domain.zero] * (k + len(self.upper) + 1)
        for i, poly in enumerate(self.lower, start=1):
            if i <= k:
                value = evaluate(poly, domain.from_int(k - i), domain)
                out[k - i] = domain.add(out[k - i], domain.mul(falling_factorial_value(k, i, domain), value))
        for i, poly in enumerate(self.upper):
            out[k + i] = domain.add(out[k + i], evaluate(poly, domain.from_int(k), domain))
        return DensePoly(tuple(normalize(out)), domain)


def homogeneous_decompose(P: OrePoly) -> HomogeneousParts:
    """Split P into its homogeneous parts; valid in every characteristic."""
    domain = check_operands(P, P, PARTIAL)
    upper = tuple(tuple(from_ff_coeffs(_diagonal(P, l), domain)) for l in range(P.d + 1))
    lower = tuple(
        tuple(from_ff_coeffs([P.coeff(j, j + i) for j in range(P.d + 1)], domain))
        for i in range(1, P.r + 1)
    )
    return HomogeneousParts(lower, upper, domain)


def homogeneous_recompose(parts: HomogeneousParts) -> OrePoly:
    """Inverse of ``homogeneous_decompose``."""
    domain = parts.domain
    # every grid position lies on exactly one diagonal
    entries = {}
    for l, poly in enumerate(parts.upper):
        for j, c in enumerate(to_ff_coeffs(poly, domain)):
            entries[(l + j, j)] = c
    for i, poly in enumerate(parts.lower, start=1):
        for j, c in enumerate(to_ff_coeffs(poly, domain)):
            entries[(j, j + i)] = c
    if not entries:
        return OrePoly.zero(PARTIAL, domain)
    height = max(i for i, _ in entries) + 1
    width = max(j for _, j in entries) + 1
    grid = [[domain.zero] * width for _ in range(height)]
    for (i, j), value in entries.items():
        grid[i][j] = value
    return OrePoly.from_grid(grid, PARTIAL, domain)
