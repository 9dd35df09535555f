########################
# Basis Conversions    #
########################

"""
Conversions between partial and theta representations.

Two identities drive everything: (theta)_j = X^j d^j, and d^j = X^(-j) (theta)_j.
A row or diagonal is therefore converted by one change between the monomial
and the falling factorial basis, which works in every characteristic.
"""

from dataclasses import dataclass
import json
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

from app.coeffdom import CoefficientDomain, Element
from app.exceptions import ConversionError, TagMismatch, ValidationError
from app.matrixarith import DenseMatrix
from app.orecore import PARTIAL, THETA, OrePoly, check_operands, mul_naive, normalize_grid
from app.polyarith import from_ff_coeffs, normalize, shift_coeffs, to_ff_coeffs

ThetaProduct = Callable[[OrePoly, OrePoly], OrePoly]


@dataclass(frozen=True)
class LaurentThetaPoly:
    """
    Theta operator with Laurent polynomial coefficients.

    Row t of ``coeffs`` holds the coefficients of X^(t - valuation) as a
    polynomial in theta. The lowest row is nonzero whenever the valuation is
    positive, and the top row is nonzero unless the operator is zero.
    """

    valuation: int
    coeffs: Tuple[Tuple[Element, ...], ...]
    domain: CoefficientDomain

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[Any]], valuation: int, domain: CoefficientDomain) -> 'LaurentThetaPoly':
        """
        Args:
            grid: Rows for X^(-valuation), X^(-valuation+1), ...
            valuation (int): Nonnegative valuation of the first row.
            domain (CoefficientDomain): Coefficient domain.

        Raises:
            ValidationError: If the valuation is negative.
        """
        if valuation < 0:
            raise ValidationError("Valuation must be nonnegative")
        rows = [list(row) for row in grid]
        while valuation > 0 and rows and not any(domain.reduce(x) != 0 for x in rows[0]):
            rows.pop(0)
            valuation -= 1
        normalized = normalize_grid(rows, domain)
        if not normalized:
            valuation = 0
        return cls(valuation, normalized, domain)

    @classmethod
    def from_theta(cls, A: OrePoly) -> 'LaurentThetaPoly':
        if A.tag != THETA:
            raise TagMismatch("Expected a theta operator")
        return cls(0, A.coeffs, A.domain)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def d(self) -> int:
        """Largest X exponent."""
        return len(self.coeffs) - 1 - self.valuation

    @property
    def r(self) -> int:
        return len(self.coeffs[0]) - 1 if self.coeffs else -1

    def row(self, exponent: int) -> List[Element]:
        """Coefficients of X^exponent as a polynomial in theta."""
        t = exponent + self.valuation
        if 0 <= t < len(self.coeffs):
            return normalize(list(self.coeffs[t]))
        return []

    def numerator(self) -> OrePoly:
        """X^valuation times the operator, as an ordinary theta operator."""
        return OrePoly(THETA, self.coeffs, self.domain)

    def to_theta(self) -> OrePoly:
        """
        Raises:
            ConversionError: If the valuation is positive.
        """
        if self.valuation:
            raise ConversionError("Operator has negative X powers")
        return self.numerator()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'var': THETA,
            'p': self.domain.p,
            'valuation': self.valuation,
            'coeffs': [[self.domain.to_json(x) for x in row] for row in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LaurentThetaPoly':
        try:
            if data.get('var', THETA) != THETA:
                raise ValidationError("Laurent operators are theta operators")
            domain = CoefficientDomain(int(data['p']))
            grid = [[domain.from_json(x) for x in row] for row in data['coeffs']]
            return cls.from_grid(grid, int(data.get('valuation', 0)), domain)
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Invalid operator document: {e}")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def rows_to_partial(rows: Dict[int, List[Element]], domain: CoefficientDomain) -> OrePoly:
    """Rebuild sum_s X^s g_s(theta) in partial form; X^s (theta)_j = X^(s+j) d^j."""
    entries: Dict[Tuple[int, int], Element] = {}
    for s, poly in rows.items():
        for j, f in enumerate(to_ff_coeffs(poly, domain)):
            if f == 0:
                continue
            if s + j < 0:
                raise ConversionError(f"Term X^{s + j} d^{j} has a negative X power")
            entries[(s + j, j)] = f
    if not entries:
        return OrePoly.zero(PARTIAL, domain)
    height = max(i for i, _ in entries) + 1
    width = max(j for _, j in entries) + 1
    grid = [[domain.zero] * width for _ in range(height)]
    for (i, j), f in entries.items():
        grid[i][j] = f
    return OrePoly.from_grid(grid, PARTIAL, domain)


def theta_to_partial(A: Union[OrePoly, LaurentThetaPoly]) -> OrePoly:
    """
    Rewrite a theta operator (or a Laurent one with no surviving negative
    powers) in K[X]<d>.

    Raises:
        ConversionError: If a Laurent input needs negative X powers.
        TagMismatch: If an OrePoly input is not a theta operator.
    """
    L = LaurentThetaPoly.from_theta(A) if isinstance(A, OrePoly) else A
    rows = {t - L.valuation: list(row) for t, row in enumerate(L.coeffs)}
    return rows_to_partial(rows, L.domain)


def partial_to_theta(B: OrePoly) -> LaurentThetaPoly:
    """
    Rewrite B in K[X, X^-1]<theta>; diagonal s of B (entries b_{s+j, j})
    becomes the falling factorial coefficients of beta_s.

    Raises:
        TagMismatch: If B is not a partial operator.
    """
    if B.tag != PARTIAL:
        raise TagMismatch("Expected a partial operator")
    domain = B.domain
    if B.is_zero:
        return LaurentThetaPoly(0, (), domain)
    rows = []
    for s in range(-B.r, B.d + 1):
        diagonal = [B.coeff(s + j, j) for j in range(B.r + 1)]
        rows.append(from_ff_coeffs(diagonal, domain))
    width = max((len(row) for row in rows), default=0)
    grid = [row + [domain.zero] * (width - len(row)) for row in rows]
    return LaurentThetaPoly.from_grid(grid, B.r, domain)


def theta_shift(C: Union[OrePoly, LaurentThetaPoly], n: int) -> Union[OrePoly, LaurentThetaPoly]:
    """Substitute theta <- theta + n, one polynomial shift per X power."""
    domain = C.domain
    if isinstance(C, OrePoly) and C.tag != THETA:
        raise TagMismatch("theta_shift needs a theta operator")
    if n == 0 or C.is_zero:
        return C
    rows = [shift_coeffs(list(row), n, domain) for row in C.coeffs]
    width = max((len(row) for row in rows), default=0)
    grid = [row + [domain.zero] * (width - len(row)) for row in rows]
    if isinstance(C, LaurentThetaPoly):
        return LaurentThetaPoly.from_grid(grid, C.valuation, domain)
    return OrePoly.from_grid(grid, THETA, domain)


def mul_laurent(
    B: LaurentThetaPoly,
    A: LaurentThetaPoly,
    theta_mul: ThetaProduct = mul_naive
) -> LaurentThetaPoly:
    """
    Product of Laurent theta operators through one ordinary theta product:
    X^-b B' X^-a A' = X^-(a+b) B'(X, theta - a) A'.
    """
    if B.is_zero or A.is_zero:
        return LaurentThetaPoly(0, (), B.domain)
    shifted = theta_shift(B.numerator(), -A.valuation)
    product = theta_mul(shifted, A.numerator())
    return LaurentThetaPoly.from_grid(product.grid(), A.valuation + B.valuation, B.domain)


def mul_partial_via_theta(B: OrePoly, A: OrePoly, theta_mul: ThetaProduct = mul_naive) -> OrePoly:
    """
    BA in K[X]<d> computed in K[X, X^-1]<theta>; valid in every characteristic.

    Raises:
        TagMismatch: If the operators are not partial operators.
    """
    domain = check_operands(B, A, PARTIAL)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    return theta_to_partial(mul_laurent(partial_to_theta(B), partial_to_theta(A), theta_mul))


# ---------------------------------------------------------------------------
# Stirling matrices
# ---------------------------------------------------------------------------

def stirling_first_matrix(n: int, domain: CoefficientDomain) -> DenseMatrix:
    """
    S1[j][k] = s(j, k), signed Stirling numbers of the first kind, 0 <= j, k <= n:
    (theta)_j = sum_k s(j, k) theta^k.
    """
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for j in range(1, n + 1):
        for k in range(1, j + 1):
            table[j][k] = table[j - 1][k - 1] - (j - 1) * table[j - 1][k]
    return DenseMatrix.from_rows(table, domain)


def stirling_second_matrix(n: int, domain: CoefficientDomain) -> DenseMatrix:
    """
    S2[k][j] = S(k, j), Stirling numbers of the second kind, 0 <= k, j <= n:
    theta^k = sum_j S(k, j) (theta)_j.
    """
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            table[k][j] = j * table[k - 1][j] + table[k - 1][j - 1]
    return DenseMatrix.from_rows(table, domain)
