########################
# Operator Core        #
########################

"""
Linear differential operators in canonical form and the classical products.

An operator is stored as a grid ``c[i][j]``, the coefficient of X^i D^j with
X on the left, where D is the derivation ``partial`` (dX = Xd + 1) or the
Euler operator ``theta`` (tX = X(t + 1)).
"""

from dataclasses import dataclass
from functools import lru_cache
import json
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.coeffdom import (
    CoefficientDomain,
    Element,
    check_same_domain,
    factorial_table,
    require_characteristic_above,
)
from app.exceptions import TagMismatch, ValidationError
from app.instrumentation import charge
from app.polyarith import DensePoly, add_coeffs, bivar_mul, derivative, mul_coeffs, normalize

PARTIAL = "partial"
THETA = "theta"
TAGS = (PARTIAL, THETA)

Grid = List[List[Element]]


@dataclass(frozen=True)
class Bidegree:
    """X-degree d and D-degree r of a nonzero operator."""

    d: int
    r: int

    def __str__(self) -> str:
        return f"({self.d}, {self.r})"


@dataclass(frozen=True)
class ZeroBidegree:
    """Bidegree marker of the zero operator."""

    def __str__(self) -> str:
        return "zero"


ZERO_BIDEGREE = ZeroBidegree()


def normalize_grid(grid: Sequence[Sequence[Element]], domain: CoefficientDomain) -> Tuple[Tuple[Element, ...], ...]:
    """
    Reduce, make rectangular and strip zero trailing rows and columns.

    The zero operator becomes the empty grid.
    """
    rows = [domain.reduce_list(row) for row in grid]
    width = 0
    for row in rows:
        nz = normalize(row)
        width = max(width, len(nz))
    height = 0
    for i, row in enumerate(rows):
        if any(x != 0 for x in row):
            height = i + 1
    if height == 0 or width == 0:
        return ()
    out = []
    for row in rows[:height]:
        row = row[:width]
        out.append(tuple(row + [domain.zero] * (width - len(row))))
    return tuple(out)


@dataclass(frozen=True)
class OrePoly:
    """
    Operator in canonical form over a CoefficientDomain.

    Attributes:
        tag (str): ``partial`` or ``theta``.
        coeffs (tuple): Normalized grid, row i = X-degree i, column j = D-degree j.
        domain (CoefficientDomain): Coefficient domain.
    """

    tag: str
    coeffs: Tuple[Tuple[Element, ...], ...]
    domain: CoefficientDomain

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValidationError(f"Unknown operator variable: {self.tag}")

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[Any]], tag: str, domain: CoefficientDomain) -> 'OrePoly':
        return cls(tag, normalize_grid(grid, domain), domain)

    @classmethod
    def from_array(cls, data: np.ndarray, tag: str, domain: CoefficientDomain) -> 'OrePoly':
        return cls.from_grid(data.tolist(), tag, domain)

    @classmethod
    def zero(cls, tag: str, domain: CoefficientDomain) -> 'OrePoly':
        return cls(tag, (), domain)

    @classmethod
    def monomial(cls, i: int, j: int, tag: str, domain: CoefficientDomain, c: Any = 1) -> 'OrePoly':
        """c X^i D^j."""
        grid = [[0] * (j + 1) for _ in range(i + 1)]
        grid[i][j] = c
        return cls.from_grid(grid, tag, domain)

    @classmethod
    def one(cls, tag: str, domain: CoefficientDomain) -> 'OrePoly':
        return cls.monomial(0, 0, tag, domain)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def bidegree(self) -> Union[Bidegree, ZeroBidegree]:
        if self.is_zero:
            return ZERO_BIDEGREE
        return Bidegree(len(self.coeffs) - 1, len(self.coeffs[0]) - 1)

    @property
    def d(self) -> int:
        """X-degree (-1 for zero)."""
        return len(self.coeffs) - 1

    @property
    def r(self) -> int:
        """D-degree (-1 for zero)."""
        return len(self.coeffs[0]) - 1 if self.coeffs else -1

    def coeff(self, i: int, j: int) -> Element:
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[0]):
            return self.coeffs[i][j]
        return self.domain.zero

    def grid(self) -> Grid:
        return [list(row) for row in self.coeffs]

    def column(self, j: int) -> List[Element]:
        """Coefficients of D^j as a polynomial in X."""
        return normalize([row[j] for row in self.coeffs]) if 0 <= j <= self.r else []

    def row(self, i: int) -> List[Element]:
        """Coefficients of X^i as a polynomial in D."""
        return normalize(list(self.coeffs[i])) if 0 <= i <= self.d else []

    def to_array(self, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
        """Dense array of shape (rows, cols), defaulting to (d+1, r+1)."""
        rows = self.d + 1 if rows is None else rows
        cols = self.r + 1 if cols is None else cols
        if self.domain.numpy_dtype is np.int64:
            out = np.zeros((rows, cols), dtype=np.int64)
        else:
            out = np.full((rows, cols), self.domain.zero, dtype=object)
        for i, row in enumerate(self.coeffs[:rows]):
            for j, x in enumerate(row[:cols]):
                out[i, j] = x
        return out

    def __add__(self, other: 'OrePoly') -> 'OrePoly':
        check_operands(self, other)
        rows = max(self.d, other.d) + 1
        cols = max(self.r, other.r) + 1
        grid = [[self.coeff(i, j) + other.coeff(i, j) for j in range(cols)] for i in range(rows)]
        return OrePoly.from_grid(grid, self.tag, self.domain)

    def __neg__(self) -> 'OrePoly':
        return OrePoly.from_grid([[-x for x in row] for row in self.coeffs], self.tag, self.domain)

    def __sub__(self, other: 'OrePoly') -> 'OrePoly':
        return self + (-other)

    def __mul__(self, other: 'OrePoly') -> 'OrePoly':
        return mul_naive(self, other)

    def to_dict(self) -> Dict[str, Any]:
        """Operator interchange document."""
        return {
            'var': self.tag,
            'p': self.domain.p,
            'coeffs': [[self.domain.to_json(x) for x in row] for row in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'OrePoly':
        """
        Raises:
            ValidationError: If the document is malformed.
        """
        try:
            domain = CoefficientDomain(int(data['p']))
            grid = [[domain.from_json(x) for x in row] for row in data['coeffs']]
            return cls.from_grid(grid, data['var'], domain)
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Invalid operator document: {e}")

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> 'OrePoly':
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ValidationError(f"Invalid operator JSON: {e}")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        symbol = "d" if self.tag == PARTIAL else "t"
        terms = []
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c != 0:
                    monomial = "*".join(
                        part for part in (
                            f"X^{i}" if i else "",
                            f"{symbol}^{j}" if j else "",
                        ) if part
                    )
                    terms.append(f"{c}*{monomial}" if monomial else f"{c}")
        return " + ".join(terms)


def check_operands(B: OrePoly, A: OrePoly, tag: Optional[str] = None) -> CoefficientDomain:
    """
    Common precondition of every product.

    Raises:
        TagMismatch: If the tags differ, or differ from ``tag`` when given.
        DomainMismatch: If the domains differ.
    """
    if B.tag != A.tag:
        raise TagMismatch(f"Cannot combine a {B.tag} operator with a {A.tag} operator")
    if tag is not None and A.tag != tag:
        raise TagMismatch(f"Expected {tag} operators, got {A.tag}")
    return check_same_domain(B.domain, A.domain)


# ---------------------------------------------------------------------------
# Action on polynomials
# ---------------------------------------------------------------------------

def apply(P: OrePoly, f: DensePoly) -> DensePoly:
    """
    Apply P to a polynomial: D acts as d/dX (partial) or as X d/dX (theta).

    Raises:
        DomainMismatch: If P and f live over different domains.
    """
    domain = check_same_domain(P.domain, f.domain)
    g = list(f.coeffs)
    result: List[Element] = []
    for j in range(P.r + 1):
        column = P.column(j)
        if column and g:
            result = add_coeffs(result, mul_coeffs(column, g, domain), domain)
        if P.tag == PARTIAL:
            g = derivative(g, domain)
        else:
            g = normalize([domain.mul(k, x) for k, x in enumerate(g)])
    return DensePoly(tuple(result), domain)


# ---------------------------------------------------------------------------
# Naive expansion
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _leibniz_terms(i: int, l: int) -> Tuple[int, ...]:
    """Integer coefficients (l)_k C(i, k) of X^(l-k) d^(i-k), k = 0..min(i, l)."""
    terms = []
    falling, binom = 1, 1
    for k in range(min(i, l) + 1):
        terms.append(falling * binom)
        falling *= l - k
        binom = binom * (i - k) // (k + 1)
    return tuple(terms)


def leibniz_monomial(i: int, l: int, domain: CoefficientDomain) -> OrePoly:
    """Canonical form of d^i X^l."""
    grid = [[0] * (i + 1) for _ in range(l + 1)]
    for k, c in enumerate(_leibniz_terms(i, l)):
        grid[l - k][i - k] = c
    return OrePoly.from_grid(grid, PARTIAL, domain)


def _zeros_like(rows: int, cols: int, domain: CoefficientDomain) -> np.ndarray:
    if domain.numpy_dtype is np.int64:
        return np.zeros((rows, cols), dtype=np.int64)
    return np.full((rows, cols), domain.zero, dtype=object)


def mul_naive(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA by expanding every D^j X^k into canonical form.

    For partial, d^j X^k = sum_t (k)_t C(j,t) X^(k-t) d^(j-t); for theta,
    t^j X^k = X^k sum_t C(j,t) k^(j-t) t^t. Each (j, k, t) adds a scaled outer
    product of column j of B and row k of A.
    """
    domain = check_operands(B, A)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(A.tag, domain)
    p = domain.p
    b = B.to_array()
    a = A.to_array()
    out = _zeros_like(B.d + A.d + 1, B.r + A.r + 1, domain)

    for j in range(B.r + 1):
        b_col = b[:, j]
        if not any(x != 0 for x in b_col.tolist()):
            continue
        for k in range(A.d + 1):
            a_row = a[k, :]
            outer = np.outer(b_col, a_row)
            if p:
                outer %= p
            if A.tag == PARTIAL:
                for t, e in enumerate(_leibniz_terms(j, k)):
                    e = domain.from_int(e)
                    if e == 0:
                        continue
                    block = out[k - t:k - t + B.d + 1, j - t:j - t + A.r + 1]
                    block += outer * e
                    if p:
                        block %= p
                    charge(outer.size)
            else:
                for t in range(j + 1):
                    e = domain.from_int(comb(j, t) * k ** (j - t))
                    if e == 0:
                        continue
                    block = out[k:k + B.d + 1, t:t + A.r + 1]
                    block += outer * e
                    if p:
                        block %= p
                    charge(outer.size)
    return OrePoly.from_array(out, A.tag, domain)


# ---------------------------------------------------------------------------
# Formal derivatives
# ---------------------------------------------------------------------------

def d_dX(L: OrePoly) -> OrePoly:
    """Derivative along the X index; equals dL - Ld for partial operators."""
    domain = L.domain
    grid = [[domain.mul(i, x) for x in row] for i, row in enumerate(L.coeffs)][1:]
    charge(L.d * (L.r + 1) if L.d > 0 else 0)
    return OrePoly.from_grid(grid, L.tag, domain)


def d_dD(L: OrePoly) -> OrePoly:
    """Derivative along the D index; equals LX - XL for partial operators."""
    domain = L.domain
    grid = [[domain.mul(j, x) for j, x in enumerate(row)][1:] for row in L.coeffs]
    charge((L.d + 1) * L.r if L.r > 0 else 0)
    return OrePoly.from_grid(grid, L.tag, domain)


def _shift_grid(grid: Grid, rows: int, cols: int, domain: CoefficientDomain) -> Grid:
    """Multiply by X^rows on the left and D^cols on the right, commutatively."""
    width = (len(grid[0]) if grid else 0) + cols
    out = [[domain.zero] * width for _ in range(rows)]
    for row in grid:
        out.append([domain.zero] * cols + list(row))
    return out


def _grid_add(f: Grid, g: Grid, domain: CoefficientDomain) -> Grid:
    rows = max(len(f), len(g))
    cols = max([len(r) for r in f + g] or [0])
    out = [[domain.zero] * cols for _ in range(rows)]
    for src in (f, g):
        for i, row in enumerate(src):
            for j, x in enumerate(row):
                out[i][j] = out[i][j] + x
    charge(rows * cols)
    return [domain.reduce_list(row) for row in out] if domain.p else out


# ---------------------------------------------------------------------------
# Iterative schemes
# ---------------------------------------------------------------------------

def mul_iter_dx(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA = sum_i b_i(X) (d^i A), building d^i A with dT = Td + dT/dX.
    """
    domain = check_operands(B, A, PARTIAL)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    result: Grid = []
    current = A
    for i in range(B.r + 1):
        column = B.column(i)
        if column and not current.is_zero:
            product = bivar_mul([[c] for c in column], current.grid(), domain)
            result = _grid_add(result, product, domain)
        if i < B.r:
            shifted = _shift_grid(current.grid(), 0, 1, domain)
            current = OrePoly.from_grid(_grid_add(shifted, d_dX(current).grid(), domain), PARTIAL, domain)
    return OrePoly.from_grid(result, PARTIAL, domain)


def mul_iter_x(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA = sum_k (B X^k) a_k(d), building B X^k with TX = XT + dT/dd.
    """
    domain = check_operands(B, A, PARTIAL)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    result: Grid = []
    current = B
    for k in range(A.d + 1):
        row = A.row(k)
        if row and not current.is_zero:
            product = bivar_mul(current.grid(), [row], domain)
            result = _grid_add(result, product, domain)
        if k < A.d:
            shifted = _shift_grid(current.grid(), 1, 0, domain)
            current = OrePoly.from_grid(_grid_add(shifted, d_dD(current).grid(), domain), PARTIAL, domain)
    return OrePoly.from_grid(result, PARTIAL, domain)


def mul_iter(B: OrePoly, A: OrePoly) -> OrePoly:
    """Run the iterative scheme with fewer steps: r_B + 1 versus d_A + 1."""
    check_operands(B, A, PARTIAL)
    if B.r <= A.d:
        return mul_iter_dx(B, A)
    return mul_iter_x(B, A)


def mul_takayama(B: OrePoly, A: OrePoly) -> OrePoly:
    """
    BA = sum_k (1/k!) (d^k B / dd^k) * (d^k A / dX^k), with * the commutative
    grid product.

    Raises:
        CharacteristicTooSmall: If 0 < p <= min(r_B, d_A).
        TagMismatch: If the operators are not partial operators.
    """
    domain = check_operands(B, A, PARTIAL)
    if B.is_zero or A.is_zero:
        return OrePoly.zero(PARTIAL, domain)
    top = min(B.r, A.d)
    require_characteristic_above(domain, top, "Takayama's formula")
    table = factorial_table(top, domain, require_inverses=True)

    result: Grid = []
    db, da = B, A
    for k in range(top + 1):
        product = bivar_mul(db.grid(), da.grid(), domain)
        if k:
            product = [[domain.mul(x, table.inverses[k]) for x in row] for row in product]
            charge(sum(len(row) for row in product))
        result = _grid_add(result, product, domain)
        if k < top:
            db, da = d_dD(db), d_dX(da)
    return OrePoly.from_grid(result, PARTIAL, domain)
