########################
# Characteristic p     #
########################

"""
Theta products in characteristic p > 0.

theta X^p = X^p (theta + p) = X^p theta, so polynomials in Y = X^p and theta
commute. Splitting both factors by the residue of the X exponent mod p leaves
p^2 commutative bivariate products, which need no division at all.
"""

from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

from app.coeffdom import CoefficientDomain, Element
from app.conversions import mul_partial_via_theta
from app.exceptions import ValidationError, ZeroCharacteristic
from app.orecore import PARTIAL, THETA, OrePoly, check_operands
from app.polyarith import add_coeffs, mul_coeffs, normalize, pack_bivariate, shift_coeffs, unpack_bivariate

SIDES = ("left", "right")

Grid = List[List[Element]]


@dataclass(frozen=True)
class PCommutativeForm:
    """
    Residue families of a theta operator in characteristic p.

    ``parts[v][q]`` holds the theta-coefficients of Y^q in the v-th family.
    Side ``right`` means A = sum_v A_v(X^p, theta) X^v; side ``left`` means
    B = sum_u X^u B_u(X^p, theta). Only the residues v <= d occur, so there
    are min(p, d + 1) families.
    """

    side: str
    p: int
    parts: Tuple[Tuple[Tuple[Element, ...], ...], ...]
    domain: CoefficientDomain

    def part(self, residue: int) -> Grid:
        if residue >= len(self.parts):
            return []
        return [list(row) for row in self.parts[residue]]

    def recompose(self) -> OrePoly:
        """Rebuild the source operator."""
        domain = self.domain
        rows: Dict[int, List[Element]] = {}
        for v, family in enumerate(self.parts):
            for q, row in enumerate(family):
                poly = normalize(list(row))
                if not poly:
                    continue
                if self.side == "right":
                    poly = shift_coeffs(poly, v, domain)
                exponent = v + self.p * q
                rows[exponent] = add_coeffs(rows.get(exponent, []), poly, domain)
        return _rows_to_operator(rows, domain)


def _require_positive_characteristic(domain: CoefficientDomain) -> int:
    if domain.p == 0:
        raise ZeroCharacteristic("This product needs a positive characteristic")
    return domain.p


def _rows_to_operator(rows: Dict[int, List[Element]], domain: CoefficientDomain) -> OrePoly:
    if not rows:
        return OrePoly.zero(THETA, domain)
    height = max(rows) + 1
    width = max(len(row) for row in rows.values())
    grid = [[domain.zero] * width for _ in range(height)]
    for i, row in rows.items():
        grid[i][:len(row)] = row
    return OrePoly.from_grid(grid, THETA, domain)


def split_p(P: OrePoly, side: str) -> PCommutativeForm:
    """
    Group the rows of P by X exponent mod p.

    The right split moves X^v across alpha(theta) with X^v alpha(theta) =
    alpha(theta - v) X^v, one shift per row; the left split is a plain regrouping.

    Raises:
        ZeroCharacteristic: If p = 0.
        TagMismatch: If P is not a theta operator.
        ValidationError: If the side is unknown.
    """
    check_operands(P, P, THETA)
    domain = P.domain
    p = _require_positive_characteristic(domain)
    if side not in SIDES:
        raise ValidationError(f"Unknown side: {side}")
    width = P.r + 1
    parts = []
    for v in range(min(p, P.d + 1)):
        family = []
        for i in range(v, P.d + 1, p):
            row = P.row(i)
            if side == "right" and row:
                row = shift_coeffs(row, -v, domain)
            family.append(tuple(row + [domain.zero] * (width - len(row))))
        while family and not any(x != 0 for x in family[-1]):
            family.pop()
        parts.append(tuple(family))
    return PCommutativeForm(side, p, tuple(parts), domain)


def mul_theta_p(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA in K[X]<theta> for any p > 0, including p <= deg.

    BA = sum_{u,v} X^u (B_u A_v)(X^p, theta) X^v. The products B_u A_v are
    commutative and share one Kronecker stride; moving X^v back to the right
    shifts theta by +v.

    Raises:
        ZeroCharacteristic: If p = 0.
        TagMismatch: If the operators are not theta operators.
    """
    domain = check_operands(B, A, THETA)
    p = _require_positive_characteristic(domain)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(THETA, domain)

    left = split_p(B, "left")
    right = split_p(A, "right")
    stride = 2 * max(A.r, B.r) + 1
    packed_left = [pack_bivariate(part, stride, domain) for part in map(left.part, range(len(left.parts)))]
    packed_right = [pack_bivariate(part, stride, domain) for part in map(right.part, range(len(right.parts)))]
    cols = A.r + B.r + 1

    rows: Dict[int, List[Element]] = {}
    for u, packed_u in enumerate(packed_left):
        if not packed_u:
            continue
        for v, packed_v in enumerate(packed_right):
            if not packed_v:
                continue
            product = mul_coeffs(packed_u, packed_v, domain)
            height = len(left.parts[u]) + len(right.parts[v]) - 1
            grid = unpack_bivariate(product, stride, height, cols, domain)
            for q, row in enumerate(grid):
                poly = normalize(row)
                if not poly:
                    continue
                exponent = u + v + p * q
                rows[exponent] = add_coeffs(rows.get(exponent, []), shift_coeffs(poly, v, domain), domain)

    C = _rows_to_operator(rows, domain)
    logging.debug(f"mul_theta_p p={p} bidegree ({A.d + B.d}, {A.r + B.r})")
    return C


def mul_partial_p(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA in K[X]<d> for p > 0, through Laurent theta forms and ``mul_theta_p``.

    Raises:
        ZeroCharacteristic: If p = 0.
        TagMismatch: If the operators are not partial operators.
    """
    domain = check_operands(B, A, PARTIAL)
    _require_positive_characteristic(domain)
    return mul_partial_via_theta(B, A, mul_theta_p)
