##########################
# Polynomial Arithmetic  #
##########################

"""
Dense univariate polynomial arithmetic over a CoefficientDomain.

Coefficient lists are indexed by degree, constant term first; the zero
polynomial is the empty list. The ``*_coeffs`` functions work on plain lists
and are what the operator modules call; ``DensePoly`` wraps them for callers
that want a value type.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import intt, ntt

from app.coeffdom import (
    INT64_PRIME_BOUND,
    CoefficientDomain,
    Element,
    check_same_domain,
    exp_series,
    factorial_table,
    require_characteristic_above,
)
from app.exceptions import ValidationError, ZeroInverse
from app.instrumentation import charge, count_ops
from app.ore_config import get_config

Coeffs = List[Element]
Grid = List[List[Element]]

_INT64_MAX = 2 ** 63 - 1
# 119 * 2^23 + 1; small-prime products are lifted here when they fit.
_LIFT_NTT_PRIMES = (998244353,)
_SPARSE_LIMIT = 8
_HORNER_CUTOFF = 8
_FALLING_CUTOFF = 16


# ---------------------------------------------------------------------------
# Basic helpers
# ---------------------------------------------------------------------------

def normalize(coeffs: Sequence[Element]) -> Coeffs:
    """Drop trailing zeros."""
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return list(coeffs[:end])


def pad(coeffs: Sequence[Element], length: int, domain: CoefficientDomain) -> Coeffs:
    """Return exactly ``length`` coefficients, truncating or zero-filling."""
    out = list(coeffs[:length])
    out.extend([domain.zero] * (length - len(out)))
    return out


def _mod(values: List[int], p: int) -> List[int]:
    return [v % p for v in values] if p else values


def add_coeffs(a: Sequence[Element], b: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    charge(len(b))
    return normalize(domain.reduce_list(out) if domain.p else out)


def sub_coeffs(a: Sequence[Element], b: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    return add_coeffs(a, [-x for x in b], domain)


def scale_coeffs(a: Sequence[Element], c: Element, domain: CoefficientDomain) -> Coeffs:
    charge(len(a))
    if domain.p:
        return normalize([x * c % domain.p for x in a])
    return normalize([x * c for x in a])


def evaluate(a: Sequence[Element], x: Element, domain: CoefficientDomain) -> Element:
    """Horner evaluation."""
    acc = domain.zero
    for c in reversed(a):
        acc = domain.add(domain.mul(acc, x), c)
    return acc


def derivative(a: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    return normalize([domain.mul(a[i], i) for i in range(1, len(a))])


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

def _fits_int64(p: int, shorter: int) -> bool:
    return 0 < p < INT64_PRIME_BOUND and shorter * (p - 1) ** 2 <= _INT64_MAX


def _schoolbook(a: List[int], b: List[int], p: int) -> List[int]:
    la, lb = len(a), len(b)
    charge(la * lb)
    if _fits_int64(p, min(la, lb)):
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return (out % p).tolist()
    out = [0] * (la + lb - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _mod(out, p)


def _sum_halves(x: List[int], y: List[int], p: int) -> List[int]:
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, v in enumerate(y):
        out[i] += v
    return _mod(out, p)


def _karatsuba(a: List[int], b: List[int], p: int, threshold: int) -> List[int]:
    la, lb = len(a), len(b)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    if lb < threshold:
        return _schoolbook(a, b, p)

    if la >= 2 * lb:
        # unbalanced: slice the long operand into pieces of the short one's length
        out = [0] * (la + lb - 1)
        for start in range(0, la, lb):
            part = _karatsuba(a[start:start + lb], b, p, threshold)
            for i, c in enumerate(part):
                out[start + i] += c
        return _mod(out, p)

    m = la // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _karatsuba(a0, b0, p, threshold)
    z2 = _karatsuba(a1, b1, p, threshold)
    z1 = _karatsuba(_sum_halves(a0, a1, p), _sum_halves(b0, b1, p), p, threshold)
    charge(2 * (la + lb))

    out = [0] * (la + lb - 1)
    for i, c in enumerate(z0):
        out[i] += c
        out[m + i] -= c
    for i, c in enumerate(z2):
        out[2 * m + i] += c
        out[m + i] -= c
    for i, c in enumerate(z1):
        out[m + i] += c
    return _mod(out, p)


def _ntt_modulus(p: int, la: int, lb: int) -> Optional[int]:
    """
    Prime q for a transform of the product length, or None.

    q = p when p - 1 is divisible by the transform size; otherwise a fixed NTT
    prime large enough to hold the integer convolution of reduced inputs.
    """
    if not p:
        return None
    size = 1 << (la + lb - 2).bit_length()
    if (p - 1) % size == 0:
        return p
    bound = min(la, lb) * (p - 1) ** 2
    for q in _LIFT_NTT_PRIMES:
        if (q - 1) % size == 0 and bound < q:
            return q
    return None


def _ntt_product(a: List[int], b: List[int], p: int, q: int) -> List[int]:
    length = len(a) + len(b) - 1
    size = 1 << (length - 1).bit_length()
    log_size = size.bit_length() - 1
    charge(3 * (size // 2) * log_size + size)

    fa = ntt(a + [0] * (size - len(a)), q)
    fb = ntt(b + [0] * (size - len(b)), q)
    product = intt([x * y % q for x, y in zip(fa, fb)], q)[:length]
    return _mod(product, p) if q != p else product


def _clear_denominators(a: Sequence[Element]) -> Tuple[List[int], int]:
    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    return [Fraction(x).numerator * (den // Fraction(x).denominator) for x in a], den


def _nonzeros(a: Sequence[Element]) -> int:
    return sum(1 for x in a if x != 0)


def _sparse_product(a: Sequence[Element], b: Sequence[Element], p: int) -> List[Element]:
    if _nonzeros(a) > _nonzeros(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    terms = [(i, x) for i, x in enumerate(a) if x != 0]
    charge(len(terms) * len(b))
    for i, x in terms:
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _mod(out, p)


def mul_coeffs(a: Sequence[Element], b: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    """
    Exact product of two coefficient lists.

    Dispatch: sparse loop when either operand has few nonzero terms,
    schoolbook below the Karatsuba threshold, NTT (through sympy) for long
    products when a suitable prime exists, Karatsuba otherwise. Rationals are
    multiplied over the integers after clearing denominators.
    """
    if not a or not b:
        return []
    p = domain.p
    if min(len(a), len(b)) > _SPARSE_LIMIT and min(_nonzeros(a), _nonzeros(b)) <= _SPARSE_LIMIT:
        out = _sparse_product(a, b, p)
        return normalize(out if p else [Fraction(x) for x in out])

    config = get_config()
    if p == 0:
        ia, da = _clear_denominators(a)
        ib, db = _clear_denominators(b)
        product = _karatsuba(ia, ib, 0, config.karatsuba_threshold)
        den = da * db
        return normalize([Fraction(c, den) for c in product])

    a = [int(x) for x in a]
    b = [int(x) for x in b]
    la, lb = len(a), len(b)
    if min(la, lb) < config.karatsuba_threshold:
        return normalize(_schoolbook(a, b, p))
    if la + lb - 1 >= config.ntt_threshold:
        q = _ntt_modulus(p, la, lb)
        if q is not None:
            return normalize(_ntt_product(a, b, p, q))
    return normalize(_karatsuba(a, b, p, config.karatsuba_threshold))


def mul_trunc(a: Sequence[Element], b: Sequence[Element], n: int, domain: CoefficientDomain) -> Coeffs:
    """Product mod X^n."""
    if n <= 0:
        return []
    return normalize(mul_coeffs(a[:n], b[:n], domain)[:n])


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------

def _series_inverse(f: Sequence[Element], n: int, domain: CoefficientDomain) -> Coeffs:
    """1/f mod X^n by Newton iteration; needs f[0] invertible."""
    g = [domain.inverse(f[0])]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = pad(mul_trunc(f, g, k, domain), k, domain)
        e = [domain.neg(x) for x in e]
        e[0] = domain.add(e[0], 2)
        g = mul_trunc(g, e, k, domain)
    return pad(g, n, domain)


def divmod_coeffs(
    num: Sequence[Element],
    den: Sequence[Element],
    domain: CoefficientDomain
) -> Tuple[Coeffs, Coeffs]:
    """
    Euclidean division ``num = q * den + r`` with deg r < deg den.

    Raises:
        ZeroInverse: If ``den`` is zero.
    """
    num = normalize(num)
    den = normalize(den)
    if not den:
        raise ZeroInverse("Polynomial division by zero")
    if len(num) < len(den):
        return [], num

    qlen = len(num) - len(den) + 1
    if min(qlen, len(den)) < get_config().karatsuba_threshold:
        rem = list(num)
        lead_inv = domain.inverse(den[-1])
        quot = [domain.zero] * qlen
        for k in range(qlen - 1, -1, -1):
            c = domain.mul(rem[k + len(den) - 1], lead_inv)
            quot[k] = c
            if c != 0:
                for j, d in enumerate(den):
                    rem[k + j] = domain.sub(rem[k + j], domain.mul(c, d))
        charge(qlen * len(den))
        return normalize(quot), normalize(rem[:len(den) - 1])

    inv = _series_inverse(den[::-1], qlen, domain)
    quot = pad(mul_trunc(num[::-1], inv, qlen, domain), qlen, domain)[::-1]
    quot = normalize(quot)
    rem = sub_coeffs(num, mul_coeffs(quot, den, domain), domain)
    return quot, normalize(rem[:len(den) - 1])


# ---------------------------------------------------------------------------
# Taylor shift
# ---------------------------------------------------------------------------

def _shift_horner(c: Sequence[Element], a: Element, domain: CoefficientDomain) -> Coeffs:
    out: Coeffs = []
    for coef in reversed(c):
        new = [domain.zero] * (len(out) + 1)
        for i, x in enumerate(out):
            new[i + 1] += x
            new[i] += a * x
        new[0] += coef
        out = domain.reduce_list(new) if domain.p else new
    charge(len(c) * len(c))
    return normalize(out)


def _shift_convolution(c: Sequence[Element], a: Element, domain: CoefficientDomain) -> Coeffs:
    n = len(c) - 1
    table = factorial_table(n, domain, require_inverses=True)
    u = [domain.mul(c[n - t], table.values[n - t]) for t in range(n + 1)]
    v = []
    power = domain.one
    for j in range(n + 1):
        v.append(domain.mul(power, table.inverses[j]))
        power = domain.mul(power, a)
    charge(3 * (n + 1))
    w = pad(mul_coeffs(u, v, domain), n + 1, domain)
    return normalize([domain.mul(w[n - k], table.inverses[k]) for k in range(n + 1)])


def _binomial_power(a: Element, h: int, domain: CoefficientDomain) -> Coeffs:
    """
    (X + a)^h for h a power of p, built by raising to the p-th power
    (repeated squaring) once per digit.
    """
    p = domain.p
    result = [a, domain.one]
    e = h
    while e > 1:
        base, acc, k = result, [domain.one], p
        while k:
            if k & 1:
                acc = mul_coeffs(acc, base, domain)
            k >>= 1
            if k:
                base = mul_coeffs(base, base, domain)
        result = acc
        e //= p
    return result


def _taylor_shift(
    c: Coeffs,
    a: Element,
    domain: CoefficientDomain,
    powers: Dict[int, Coeffs]
) -> Coeffs:
    n = len(c)
    if n <= _HORNER_CUTOFF:
        return _shift_horner(c, a, domain)
    p = domain.p
    if p == 0 or p > n - 1:
        return _shift_convolution(c, a, domain)

    # split at a power of p so that (X + a)^h stays a binomial
    h = p
    while h * p <= n - 1:
        h *= p
    low = _taylor_shift(normalize(c[:h]), a, domain, powers)
    high = _taylor_shift(normalize(c[h:]), a, domain, powers)
    if h not in powers:
        powers[h] = _binomial_power(a, h, domain)
    return add_coeffs(low, mul_coeffs(powers[h], high, domain), domain)


def shift_coeffs(c: Sequence[Element], a: Element, domain: CoefficientDomain) -> Coeffs:
    """
    Coefficients of P(X + a).

    Uses the factorial convolution when p = 0 or p > deg P and the
    characteristic-safe divide-and-conquer split otherwise.
    """
    a = domain.reduce(a)
    c = normalize(domain.reduce_list(c))
    if a == 0 or len(c) <= 1:
        return c
    return _taylor_shift(c, a, domain, {})


# ---------------------------------------------------------------------------
# Falling factorial basis
# ---------------------------------------------------------------------------

FALLING_CACHE_SIZE = 512


def falling_factorial_poly(h: int, domain: CoefficientDomain) -> Coeffs:
    """
    Monomial coefficients of (X)_h = X (X-1) ... (X-h+1).

    Results are memoized; a memo hit charges the operations of the original
    computation so operation counts do not depend on cache state.
    """
    poly, ops = _falling_factorial_entry(h, domain)
    charge(ops)
    return list(poly)


@lru_cache(maxsize=FALLING_CACHE_SIZE)
def _falling_factorial_entry(h: int, domain: CoefficientDomain) -> Tuple[Tuple[Element, ...], int]:
    with count_ops(isolated=True) as tally:
        if h <= _FALLING_CUTOFF:
            poly: Coeffs = [domain.one]
            for i in range(h):
                poly = mul_coeffs(poly, [domain.from_int(-i), domain.one], domain)
        else:
            m = h // 2
            left = falling_factorial_poly(m, domain)
            right = shift_coeffs(falling_factorial_poly(h - m, domain), -m, domain)
            poly = mul_coeffs(left, right, domain)
    return tuple(poly), tally.ops


def _to_ff_naive(c: Coeffs, domain: CoefficientDomain) -> Coeffs:
    out: Coeffs = []
    cur = list(c)
    k = 0
    while cur:
        # synthetic division by (X - k)
        quot = [domain.zero] * (len(cur) - 1)
        acc = domain.zero
        for i in range(len(cur) - 1, -1, -1):
            acc = domain.add(cur[i], domain.mul(acc, k))
            if i:
                quot[i - 1] = acc
        out.append(acc)
        charge(len(cur))
        cur = normalize(quot)
        k += 1
    return out


def _from_ff_naive(f: Coeffs, domain: CoefficientDomain) -> Coeffs:
    if not f:
        return []
    acc: Coeffs = [f[-1]]
    for k in range(len(f) - 2, -1, -1):
        # acc = acc * (X - k) + f_k
        new = [domain.zero] * (len(acc) + 1)
        for i, x in enumerate(acc):
            new[i + 1] = domain.add(new[i + 1], x)
            new[i] = domain.sub(new[i], domain.mul(x, k))
        new[0] = domain.add(new[0], f[k])
        acc = new
        charge(len(acc))
    return normalize(acc)


def _to_ff(c: Coeffs, domain: CoefficientDomain) -> Coeffs:
    n = len(c)
    if n <= _FALLING_CUTOFF:
        return _to_ff_naive(c, domain)
    h = n // 2
    quot, rem = divmod_coeffs(c, falling_factorial_poly(h, domain), domain)
    low = pad(_to_ff(rem, domain), h, domain)
    high = _to_ff(shift_coeffs(quot, h, domain), domain)
    return low + high


def _from_ff(f: Coeffs, domain: CoefficientDomain) -> Coeffs:
    n = len(f)
    if n <= _FALLING_CUTOFF:
        return _from_ff_naive(f, domain)
    h = n // 2
    low = _from_ff(normalize(f[:h]), domain)
    high = shift_coeffs(_from_ff(normalize(f[h:]), domain), -h, domain)
    return add_coeffs(low, mul_coeffs(falling_factorial_poly(h, domain), high, domain), domain)


def to_ff_coeffs(c: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    """Monomial basis to falling factorial basis; valid in every characteristic."""
    return normalize(_to_ff(normalize(domain.reduce_list(c)), domain))


def from_ff_coeffs(f: Sequence[Element], domain: CoefficientDomain) -> Coeffs:
    """Falling factorial basis to monomial basis; valid in every characteristic."""
    return normalize(_from_ff(normalize(domain.reduce_list(f)), domain))


# ---------------------------------------------------------------------------
# Evaluation and interpolation on arithmetic progressions
# ---------------------------------------------------------------------------

def eval_progression(
    c: Sequence[Element],
    a: Element,
    n: int,
    domain: CoefficientDomain
) -> List[Element]:
    """
    [P(a), P(a+1), ..., P(a+n)].

    P(a + X) is written in the falling factorial basis, where the values at
    0..n come out of one product with exp(X).

    Raises:
        CharacteristicTooSmall: If 0 < p <= n.
    """
    if n < 0:
        return []
    require_characteristic_above(domain, n, "Evaluation on an arithmetic progression")
    c = normalize(domain.reduce_list(c))
    if not c:
        return [domain.zero] * (n + 1)
    ff = to_ff_coeffs(shift_coeffs(c, a, domain), domain)
    table = factorial_table(n, domain, require_inverses=True)
    w = pad(mul_trunc(ff, exp_series(n, domain), n + 1, domain), n + 1, domain)
    charge(n + 1)
    return [domain.mul(w[j], table.values[j]) for j in range(n + 1)]


def interp_progression(
    values: Sequence[Element],
    a: Element,
    domain: CoefficientDomain
) -> Coeffs:
    """
    The polynomial of degree < len(values) taking ``values`` on a, a+1, ...

    Raises:
        CharacteristicTooSmall: If 0 < p <= len(values) - 1.
    """
    n = len(values) - 1
    if n < 0:
        return []
    require_characteristic_above(domain, n, "Interpolation on an arithmetic progression")
    table = factorial_table(n, domain, require_inverses=True)
    scaled = [domain.mul(domain.reduce(v), table.inverses[j]) for j, v in enumerate(values)]
    charge(n + 1)
    ff = mul_trunc(scaled, exp_series(n, domain, sign=-1), n + 1, domain)
    return shift_coeffs(from_ff_coeffs(ff, domain), domain.neg(domain.reduce(a)), domain)


# ---------------------------------------------------------------------------
# Bivariate products by Kronecker substitution
# ---------------------------------------------------------------------------

def pack_bivariate(grid: Sequence[Sequence[Element]], stride: int, domain: CoefficientDomain) -> Coeffs:
    """
    Flatten ``grid[i][j]`` (monomial Y^i X^j) into X^(i*stride + j).

    Raises:
        ValidationError: If a row is longer than the stride.
    """
    packed: Coeffs = []
    for row in grid:
        if len(row) > stride:
            raise ValidationError(f"Row of length {len(row)} exceeds packing stride {stride}")
        packed.extend(row)
        packed.extend([domain.zero] * (stride - len(row)))
    return normalize(packed)


def unpack_bivariate(
    packed: Sequence[Element],
    stride: int,
    rows: int,
    cols: int,
    domain: CoefficientDomain
) -> Grid:
    grid = [[domain.zero] * cols for _ in range(rows)]
    for k, c in enumerate(packed):
        if c != 0:
            i, j = divmod(k, stride)
            grid[i][j] = c
    return grid


def bivar_mul(
    f: Sequence[Sequence[Element]],
    g: Sequence[Sequence[Element]],
    domain: CoefficientDomain,
    inner_bound: Optional[int] = None
) -> Grid:
    """
    Commutative product of two bivariate grids.

    ``grid[i][j]`` holds the coefficient of Y^i X^j. The substitution
    Y <- X^(2*dX + 1), with dX bounding the X-degrees of both factors, turns
    the product into one univariate multiplication.

    Args:
        f, g: Coefficient grids (rows may have different lengths).
        domain (CoefficientDomain): Coefficient domain.
        inner_bound (Optional[int], optional): Declared bound dX. Defaults to the largest
            X-degree present.

    Returns:
        Grid: (rows_f + rows_g - 1) x (cols_f + cols_g - 1) product grid.
    """
    if not f or not g:
        return []
    cols_f = max(len(row) for row in f)
    cols_g = max(len(row) for row in g)
    if cols_f == 0 or cols_g == 0:
        return []
    bound = inner_bound if inner_bound is not None else max(cols_f, cols_g) - 1
    stride = 2 * bound + 1
    product = mul_coeffs(pack_bivariate(f, stride, domain), pack_bivariate(g, stride, domain), domain)
    return unpack_bivariate(product, stride, len(f) + len(g) - 1, cols_f + cols_g - 1, domain)


# ---------------------------------------------------------------------------
# Integer sequences
# ---------------------------------------------------------------------------

def falling_factorial_value(l: Element, k: int, domain: CoefficientDomain) -> Element:
    """(l)_k = l (l-1) ... (l-k+1), with (l)_0 = 1."""
    acc = 1
    for t in range(k):
        acc = acc * (l - t)
    return domain.reduce(acc)


def binomial(i: int, k: int, domain: CoefficientDomain) -> Element:
    if k < 0 or k > i:
        return domain.zero
    return domain.from_int(comb(i, k))


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensePoly:
    """
    Immutable dense polynomial; ``coeffs`` is normalized (no trailing zeros).
    """

    coeffs: Tuple[Element, ...]
    domain: CoefficientDomain

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, domain: CoefficientDomain) -> 'DensePoly':
        return cls(tuple(normalize(domain.reduce_list(coeffs))), domain)

    @classmethod
    def x(cls, domain: CoefficientDomain) -> 'DensePoly':
        return cls.from_coeffs([0, 1], domain)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Element) -> Element:
        return evaluate(self.coeffs, self.domain.reduce(x), self.domain)

    def __add__(self, other: 'DensePoly') -> 'DensePoly':
        check_same_domain(self.domain, other.domain)
        return DensePoly(tuple(add_coeffs(self.coeffs, other.coeffs, self.domain)), self.domain)

    def __sub__(self, other: 'DensePoly') -> 'DensePoly':
        check_same_domain(self.domain, other.domain)
        return DensePoly(tuple(sub_coeffs(self.coeffs, other.coeffs, self.domain)), self.domain)

    def __mul__(self, other: 'DensePoly') -> 'DensePoly':
        return poly_mul(self, other)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"{c}*X^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms)


@dataclass(frozen=True)
class FallingFactorialCoeffs:
    """Coefficients on the basis (X)_0, (X)_1, ...; normalized like DensePoly."""

    coeffs: Tuple[Element, ...]
    domain: CoefficientDomain


def poly_mul(f: DensePoly, g: DensePoly) -> DensePoly:
    """
    Raises:
        DomainMismatch: If f and g live over different domains.
    """
    domain = check_same_domain(f.domain, g.domain)
    return DensePoly(tuple(mul_coeffs(f.coeffs, g.coeffs, domain)), domain)


def taylor_shift(P: DensePoly, a: Element) -> DensePoly:
    return DensePoly(tuple(shift_coeffs(P.coeffs, a, P.domain)), P.domain)


def eval_arith_prog(P: DensePoly, a: Element, n: int) -> List[Element]:
    return eval_progression(P.coeffs, a, n, P.domain)


def interp_arith_prog(values: Sequence[Element], a: Element, domain: CoefficientDomain) -> DensePoly:
    return DensePoly(tuple(interp_progression(values, a, domain)), domain)


def to_falling_factorial(P: DensePoly) -> FallingFactorialCoeffs:
    return FallingFactorialCoeffs(tuple(to_ff_coeffs(P.coeffs, P.domain)), P.domain)


def from_falling_factorial(F: FallingFactorialCoeffs) -> DensePoly:
    return DensePoly(tuple(from_ff_coeffs(F.coeffs, F.domain)), F.domain)
