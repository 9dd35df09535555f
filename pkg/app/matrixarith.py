########################
# Exact Matrices       #
########################

"""
Dense exact matrices with block-product accounting.

Block products are counted on the rectangular blocking of a block size n:
a dimension of length m is cut into max(1, m // n) blocks, the last one
absorbing the remainder, so a (2n+1) x (3n+1) matrix is a 2 x 3 block grid.
"""

from collections import Counter
from dataclasses import dataclass, field
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.coeffdom import CoefficientDomain, Element, check_same_domain
from app.exceptions import DimensionMismatch, InconsistentBand, ValidationError
from app.instrumentation import charge
from app.ore_config import get_config

MATRIX_EVENT = "matrix_product"
STRATEGIES = ("naive", "blocked", "strassen", "banded")

_INT64_MAX = 2 ** 63 - 1

Block = Tuple[int, int]


@dataclass(frozen=True)
class Diagonal:
    """Run of entries (first_row + t, first_row - offset + t), t < length."""

    offset: int
    first_row: int
    length: int

    @property
    def first_col(self) -> int:
        return self.first_row - self.offset


@dataclass(frozen=True)
class BandMetadata:
    """
    The diagonals that may carry nonzero entries; everything else is zero.
    """

    diagonals: Tuple[Diagonal, ...]

    @classmethod
    def from_offsets(cls, offsets: Iterable[int], rows: int, cols: int) -> 'BandMetadata':
        """Full-length diagonals of the given offsets (row - col), clipped to the shape."""
        diagonals = []
        for offset in offsets:
            first_row = max(offset, 0)
            first_col = max(-offset, 0)
            length = min(rows - first_row, cols - first_col)
            if length > 0:
                diagonals.append(Diagonal(offset, first_row, length))
        return cls(tuple(diagonals))

    def check_inside(self, rows: int, cols: int) -> None:
        for diag in self.diagonals:
            if (diag.first_row < 0 or diag.first_col < 0 or diag.length < 0
                    or diag.first_row + diag.length > rows
                    or diag.first_col + diag.length > cols):
                raise ValidationError(f"Diagonal {diag} does not fit a {rows}x{cols} matrix")

    def contains(self, i: int, j: int) -> bool:
        for diag in self.diagonals:
            t = i - diag.first_row
            if i - j == diag.offset and 0 <= t < diag.length:
                return True
        return False

    def block_nonzero(self, row_range: Block, col_range: Block) -> bool:
        """Whether some listed diagonal meets the block [r0, r1) x [c0, c1)."""
        r0, r1 = row_range
        c0, c1 = col_range
        for diag in self.diagonals:
            lo = max(r0 - diag.first_row, c0 - diag.first_col, 0)
            hi = min(r1 - diag.first_row, c1 - diag.first_col, diag.length)
            if lo < hi:
                return True
        return False


@dataclass
class BlockCounter:
    """
    Tallies of n x n block products.

    ``naive_products`` counts block products done by the plain block loop,
    ``strassen_products`` the leaf products of block-level Strassen steps, and
    ``skipped_products`` the block pairs left out because one side is
    structurally zero. ``by_label`` splits the performed products by the label
    the caller passed to ``mat_mul``.
    """

    block_size: int
    naive_products: int = 0
    strassen_products: int = 0
    skipped_products: int = 0
    by_label: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if self.block_size <= 0:
            raise ValidationError("Block size must be positive")

    @property
    def total(self) -> int:
        return self.naive_products + self.strassen_products

    def record(self, kind: str, label: Optional[str], count: int = 1) -> None:
        if kind == "naive":
            self.naive_products += count
        elif kind == "strassen":
            self.strassen_products += count
        else:
            self.skipped_products += count
            return
        self.by_label[label or "unlabeled"] += count


class DenseMatrix:
    """
    Rectangular exact matrix over a CoefficientDomain.

    Entries live in a numpy array: int64 for primes below 2^31, object
    otherwise (large primes and rationals).
    """

    def __init__(self, data: np.ndarray, domain: CoefficientDomain, band: Optional[BandMetadata] = None):
        if data.ndim != 2:
            raise ValidationError("Matrix data must be two-dimensional")
        self.data = data
        self.domain = domain
        self.band = band
        if band is not None:
            band.check_inside(*data.shape)

    @classmethod
    def zeros(cls, rows: int, cols: int, domain: CoefficientDomain,
              band: Optional[BandMetadata] = None) -> 'DenseMatrix':
        return cls(_zeros(rows, cols, domain), domain, band)

    @classmethod
    def identity(cls, n: int, domain: CoefficientDomain) -> 'DenseMatrix':
        m = _zeros(n, n, domain)
        for i in range(n):
            m[i, i] = domain.one
        return cls(m, domain, BandMetadata.from_offsets([0], n, n))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], domain: CoefficientDomain,
                  band: Optional[BandMetadata] = None) -> 'DenseMatrix':
        """
        Raises:
            ValidationError: If the rows have different lengths.
        """
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        data = _zeros(n_rows, n_cols, domain)
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValidationError("All matrix rows must have the same length")
            for j, x in enumerate(row):
                data[i, j] = domain.reduce(x)
        return cls(data, domain, band)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def entry(self, i: int, j: int) -> Element:
        value = self.data[i, j]
        return int(value) if self.domain.p else value

    def to_rows(self) -> List[List[Element]]:
        if self.domain.p:
            return [[int(x) for x in row] for row in self.data.tolist()]
        return [list(row) for row in self.data.tolist()]

    def entries(self) -> List[Element]:
        """Row-major entries."""
        return [x for row in self.to_rows() for x in row]

    def window(self, rows: int, cols: int) -> 'DenseMatrix':
        """Top-left rows x cols submatrix."""
        return DenseMatrix(self.data[:rows, :cols].copy(), self.domain)

    def with_band(self, band: Optional[BandMetadata]) -> 'DenseMatrix':
        return DenseMatrix(self.data, self.domain, band)

    def check_band(self) -> None:
        """
        Raises:
            InconsistentBand: If an entry off every listed diagonal is nonzero.
        """
        if self.band is None:
            return
        mask = np.zeros(self.shape, dtype=bool)
        for diag in self.band.diagonals:
            t = np.arange(diag.length)
            mask[diag.first_row + t, diag.first_col + t] = True
        off_band = self.data[~mask]
        if any(x != 0 for x in off_band.tolist()):
            raise InconsistentBand("Matrix has nonzero entries outside its announced diagonals")

    def __matmul__(self, other: 'DenseMatrix') -> 'DenseMatrix':
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.domain == other.domain and self.shape == other.shape
                and self.to_rows() == other.to_rows())

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols} over {self.domain})"


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def _zeros(rows: int, cols: int, domain: CoefficientDomain) -> np.ndarray:
    if domain.numpy_dtype is np.int64:
        return np.zeros((rows, cols), dtype=np.int64)
    return np.full((rows, cols), domain.zero, dtype=object)


def _reduce(a: np.ndarray, p: int) -> np.ndarray:
    return a % p if p else a


def _kernel(a: np.ndarray, b: np.ndarray, domain: CoefficientDomain) -> np.ndarray:
    """Plain product; int64 products are split along the inner dimension to stay exact."""
    m, k = a.shape
    n = b.shape[1]
    charge(m * k * n, MATRIX_EVENT)
    p = domain.p
    if k == 0:
        return _zeros(m, n, domain)
    if a.dtype == np.int64:
        chunk = max(1, (_INT64_MAX - p) // (p - 1) ** 2)
        out = np.zeros((m, n), dtype=np.int64)
        for start in range(0, k, chunk):
            out = (out + a[:, start:start + chunk] @ b[start:start + chunk]) % p
        return out
    return _reduce(a.dot(b), p)


def _add(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    charge(x.size, MATRIX_EVENT)
    return _reduce(x + y, p)


def _sub(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    charge(x.size, MATRIX_EVENT)
    return _reduce(x - y, p)


def _multiply(a: np.ndarray, b: np.ndarray, domain: CoefficientDomain, threshold: int) -> np.ndarray:
    """Kernel product with element-level Strassen above the threshold (not block-counted)."""
    m, k = a.shape
    n = b.shape[1]
    if min(m, k, n) <= threshold or m % 2 or k % 2 or n % 2:
        return _kernel(a, b, domain)
    p = domain.p
    hm, hk, hn = m // 2, k // 2, n // 2
    a11, a12, a21, a22 = a[:hm, :hk], a[:hm, hk:], a[hm:, :hk], a[hm:, hk:]
    b11, b12, b21, b22 = b[:hk, :hn], b[:hk, hn:], b[hk:, :hn], b[hk:, hn:]
    c11, c12, c21, c22 = _strassen_combine(
        (a11, a12, a21, a22), (b11, b12, b21, b22), p,
        lambda x, y: _multiply(x, y, domain, threshold)
    )
    return np.block([[c11, c12], [c21, c22]])


def _strassen_combine(a, b, p, product):
    """The seven Strassen products of 2x2 operands and their recombination."""
    a11, a12, a21, a22 = a
    b11, b12, b21, b22 = b
    m1 = product(_add(a11, a22, p), _add(b11, b22, p))
    m2 = product(_add(a21, a22, p), b11)
    m3 = product(a11, _sub(b12, b22, p))
    m4 = product(a22, _sub(b21, b11, p))
    m5 = product(_add(a11, a12, p), b22)
    m6 = product(_sub(a21, a11, p), _add(b11, b12, p))
    m7 = product(_sub(a12, a22, p), _add(b21, b22, p))
    c11 = _add(_sub(_add(m1, m4, p), m5, p), m7, p)
    c12 = _add(m3, m5, p)
    c21 = _add(m2, m4, p)
    c22 = _add(_add(_sub(m1, m2, p), m3, p), m6, p)
    return c11, c12, c21, c22


# ---------------------------------------------------------------------------
# Block-level products
# ---------------------------------------------------------------------------

def partition(dim: int, n: int) -> List[Block]:
    """Cut [0, dim) into max(1, dim // n) blocks; the last one takes the remainder."""
    count = max(1, dim // n)
    starts = [i * n for i in range(count)]
    return [(start, starts[i + 1] if i + 1 < count else dim) for i, start in enumerate(starts)]


def _block(data: np.ndarray, rows: Block, cols: Block) -> np.ndarray:
    return data[rows[0]:rows[1], cols[0]:cols[1]]


def _padded(data: np.ndarray, rows: Block, cols: Block, size: int, domain: CoefficientDomain) -> np.ndarray:
    out = _zeros(size, size, domain)
    piece = _block(data, rows, cols)
    out[:piece.shape[0], :piece.shape[1]] = piece
    return out


def _grid_add(x, y, p, sign=1):
    op = _add if sign > 0 else _sub
    return [[op(x[i][j], y[i][j], p) for j in range(len(x[0]))] for i in range(len(x))]


def _split_grid(g):
    h, w = len(g) // 2, len(g[0]) // 2
    return (
        [row[:w] for row in g[:h]], [row[w:] for row in g[:h]],
        [row[:w] for row in g[h:]], [row[w:] for row in g[h:]],
    )


def _join_grid(c11, c12, c21, c22):
    return [l + r for l, r in zip(c11, c12)] + [l + r for l, r in zip(c21, c22)]


def _strassen_grid(x, y, domain: CoefficientDomain, counter: Optional[BlockCounter],
                   label: Optional[str], threshold: int):
    """
    Product of two grids of equal square blocks.

    Grids with an even number of block rows, inner blocks and block columns
    are split into quadrants and combined with seven recursive products; other
    grids fall back to the block loop. Leaf products count as Strassen
    products.
    """
    a, f, c = len(x), len(x[0]), len(y[0])
    p = domain.p
    if a % 2 or f % 2 or c % 2:
        out = []
        for i in range(a):
            row = []
            for k in range(c):
                acc = None
                for j in range(f):
                    prod = _multiply(x[i][j], y[j][k], domain, threshold)
                    if counter is not None:
                        counter.record("strassen", label)
                    acc = prod if acc is None else _add(acc, prod, p)
                row.append(acc)
            out.append(row)
        return out

    def product(u, v):
        return _strassen_grid(u, v, domain, counter, label, threshold)

    def add(u, v):
        return _grid_add(u, v, p)

    def sub(u, v):
        return _grid_add(u, v, p, sign=-1)

    x11, x12, x21, x22 = _split_grid(x)
    y11, y12, y21, y22 = _split_grid(y)
    m1 = product(add(x11, x22), add(y11, y22))
    m2 = product(add(x21, x22), y11)
    m3 = product(x11, sub(y12, y22))
    m4 = product(x22, sub(y21, y11))
    m5 = product(add(x11, x12), y22)
    m6 = product(sub(x21, x11), add(y11, y12))
    m7 = product(sub(x12, x22), add(y21, y22))
    c11 = add(sub(add(m1, m4), m5), m7)
    c12 = add(m3, m5)
    c21 = add(m2, m4)
    c22 = add(add(sub(m1, m2), m3), m6)
    return _join_grid(c11, c12, c21, c22)


def _blocked_product(A: DenseMatrix, B: DenseMatrix, n: int, counter: Optional[BlockCounter],
                     skip_zero: bool, use_strassen: bool, label: Optional[str]) -> np.ndarray:
    domain = A.domain
    p = domain.p
    threshold = get_config().strassen_threshold
    row_blocks = partition(A.rows, n)
    inner_blocks = partition(A.cols, n)
    col_blocks = partition(B.cols, n)

    def nonzero(M: DenseMatrix, rows: Block, cols: Block) -> bool:
        if not skip_zero or M.band is None:
            return True
        return M.band.block_nonzero(rows, cols)

    left_nz = [[nonzero(A, r, j) for j in inner_blocks] for r in row_blocks]
    right_nz = [[nonzero(B, j, c) for c in col_blocks] for j in inner_blocks]
    out = _zeros(A.rows, B.cols, domain)

    strassen_inner: List[int] = []
    if use_strassen and len(row_blocks) % 2 == 0 and len(col_blocks) % 2 == 0:
        full = [j for j in range(len(inner_blocks))
                if all(left_nz[i][j] for i in range(len(row_blocks)))
                and all(right_nz[j][k] for k in range(len(col_blocks)))]
        strassen_inner = full[:len(full) - len(full) % 2]

    if len(strassen_inner) >= 2:
        size = max(stop - start for start, stop in
                   row_blocks + col_blocks + [inner_blocks[j] for j in strassen_inner])
        x = [[_padded(A.data, r, inner_blocks[j], size, domain) for j in strassen_inner] for r in row_blocks]
        y = [[_padded(B.data, inner_blocks[j], c, size, domain) for c in col_blocks] for j in strassen_inner]
        grid = _strassen_grid(x, y, domain, counter, label, threshold)
        for i, (r0, r1) in enumerate(row_blocks):
            for k, (c0, c1) in enumerate(col_blocks):
                out[r0:r1, c0:c1] = _reduce(out[r0:r1, c0:c1] + grid[i][k][:r1 - r0, :c1 - c0], p)

    rest = [j for j in range(len(inner_blocks)) if j not in strassen_inner]
    for i, rows in enumerate(row_blocks):
        for k, cols in enumerate(col_blocks):
            for j in rest:
                if not (left_nz[i][j] and right_nz[j][k]):
                    if counter is not None:
                        counter.record("skipped", label)
                    continue
                inner = inner_blocks[j]
                prod = _multiply(_block(A.data, rows, inner), _block(B.data, inner, cols), domain, threshold)
                if counter is not None:
                    counter.record("naive", label)
                out[rows[0]:rows[1], cols[0]:cols[1]] = _reduce(
                    out[rows[0]:rows[1], cols[0]:cols[1]] + prod, p
                )
    return out


def mat_mul(
    A: DenseMatrix,
    B: DenseMatrix,
    strategy: str = "naive",
    counter: Optional[BlockCounter] = None,
    label: Optional[str] = None
) -> DenseMatrix:
    """
    Exact matrix product A * B.

    Args:
        A (DenseMatrix): Left factor.
        B (DenseMatrix): Right factor.
        strategy (str, optional): ``naive`` (one kernel call), ``blocked`` (block loop),
            ``strassen`` (block-level Strassen where the block grid allows it) or
            ``banded`` (skip structurally zero blocks, Strassen on the fully nonzero
            inner slices). Defaults to "naive".
        counter (Optional[BlockCounter], optional): Receives the block-product tallies.
            Defaults to None.
        label (Optional[str], optional): Tag recorded with the tallies. Defaults to None.

    Returns:
        DenseMatrix: The product, identical for every strategy.

    Raises:
        DimensionMismatch: If A.cols != B.rows.
        DomainMismatch: If the factors live over different domains.
        ValidationError: If the strategy is unknown.
    """
    domain = check_same_domain(A.domain, B.domain)
    if A.cols != B.rows:
        raise DimensionMismatch(f"Cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    if strategy not in STRATEGIES:
        raise ValidationError(f"Unknown matrix strategy: {strategy}")

    n = counter.block_size if counter is not None else max(1, min(A.rows, A.cols, B.cols))
    if strategy == "naive":
        data = _kernel(A.data, B.data, domain)
        if counter is not None:
            counter.record(
                "naive", label,
                len(partition(A.rows, n)) * len(partition(A.cols, n)) * len(partition(B.cols, n))
            )
    else:
        data = _blocked_product(
            A, B, n, counter,
            skip_zero=(strategy == "banded"),
            use_strassen=(strategy in ("strassen", "banded")),
            label=label
        )
    logging.debug(f"mat_mul {A.rows}x{A.cols} * {B.rows}x{B.cols} ({strategy}, {label})")
    return DenseMatrix(data, domain)


def strassen_2x2(
    left: Sequence[Sequence[DenseMatrix]],
    right: Sequence[Sequence[DenseMatrix]],
    counter: Optional[BlockCounter] = None,
    label: Optional[str] = None
) -> List[List[DenseMatrix]]:
    """
    Product of two 2 x 2 grids of equal square blocks with seven block products.

    Raises:
        DimensionMismatch: If the blocks are not square of one common size.
    """
    blocks = [m for row in list(left) + list(right) for m in row]
    if len(left) != 2 or len(right) != 2 or any(len(row) != 2 for row in list(left) + list(right)):
        raise DimensionMismatch("strassen_2x2 needs two 2x2 block grids")
    size = blocks[0].rows
    if any(m.shape != (size, size) for m in blocks):
        raise DimensionMismatch("strassen_2x2 needs square blocks of one size")
    domain = check_same_domain(*(m.domain for m in blocks))
    p = domain.p

    def product(u, v):
        if counter is not None:
            counter.record("strassen", label)
        return _kernel(u, v, domain)

    c11, c12, c21, c22 = _strassen_combine(
        (left[0][0].data, left[0][1].data, left[1][0].data, left[1][1].data),
        (right[0][0].data, right[0][1].data, right[1][0].data, right[1][1].data),
        p, product
    )
    return [[DenseMatrix(c11, domain), DenseMatrix(c12, domain)],
            [DenseMatrix(c21, domain), DenseMatrix(c22, domain)]]
