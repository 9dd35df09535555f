########################
# Coefficient Domains  #
########################

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, List, Optional, Tuple, Union

import numpy as np
from sympy import isprime

from app.exceptions import CharacteristicTooSmall, DomainMismatch, ValidationError, ZeroInverse

Element = Union[int, Fraction]

# Primes below this bound are stored in int64 numpy arrays; (p-1)^2 still fits.
INT64_PRIME_BOUND = 2 ** 31
MAX_PRIME = 2 ** 62
PRIMALITY_CHECK_BOUND = 2 ** 32


@dataclass(frozen=True)
class CoefficientDomain:
    """
    Exact ground field: the prime field Z/pZ or the rationals (p = 0).

    Prime-field elements are Python ints kept in [0, p); rationals are
    ``fractions.Fraction`` values. Instances are immutable and hashable so they
    can key caches and be shared freely.
    """

    p: int = 0

    def __post_init__(self):
        if self.p < 0:
            raise ValidationError(f"Characteristic must be nonnegative, got {self.p}")
        if self.p >= MAX_PRIME:
            raise ValidationError(f"Prime {self.p} exceeds the supported word size (p < 2^62)")
        if self.p and self.p < PRIMALITY_CHECK_BOUND and not isprime(self.p):
            raise ValidationError(f"Modulus {self.p} is not prime")

    @classmethod
    def prime_field(cls, p: int) -> 'CoefficientDomain':
        if p == 0:
            raise ValidationError("A prime field needs a positive characteristic")
        return cls(p)

    @classmethod
    def rationals(cls) -> 'CoefficientDomain':
        return cls(0)

    @property
    def kind(self) -> str:
        return "prime-field" if self.p else "rational"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def numpy_dtype(self) -> Any:
        """dtype used for dense matrices over this domain."""
        if 0 < self.p < INT64_PRIME_BOUND:
            return np.int64
        return object

    @property
    def zero(self) -> Element:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Element:
        return 1 if self.p else Fraction(1)

    def reduce(self, x: Any) -> Element:
        """Map an int, Fraction or numpy integer into the domain."""
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator % self.p) * self.inverse(x.denominator % self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(int(x))

    def reduce_list(self, values: Iterable[Any]) -> List[Element]:
        if self.p:
            p = self.p
            return [int(x) % p for x in values]
        return [x if isinstance(x, Fraction) else Fraction(int(x)) for x in values]

    def from_int(self, n: int) -> Element:
        return n % self.p if self.p else Fraction(n)

    def is_zero(self, a: Element) -> bool:
        return a == 0

    def add(self, a: Element, b: Element) -> Element:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Element, b: Element) -> Element:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Element, b: Element) -> Element:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Element) -> Element:
        return (-a) % self.p if self.p else -a

    def inverse(self, a: Element) -> Element:
        """
        Multiplicative inverse.

        Raises:
            ZeroInverse: If ``a`` is zero in the domain.
        """
        if self.p:
            a = int(a) % self.p
            if a == 0:
                raise ZeroInverse("Zero has no inverse")
            return pow(a, -1, self.p)
        if a == 0:
            raise ZeroInverse("Zero has no inverse")
        return 1 / Fraction(a)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inverse(b))

    def power(self, a: Element, k: int) -> Element:
        if self.p:
            return pow(int(a), k, self.p)
        return Fraction(a) ** k

    def to_json(self, a: Element) -> Union[int, str]:
        """Prime-field elements serialize as integers, rationals as "num/den"."""
        if self.p:
            return int(a)
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, value: Union[int, str]) -> Element:
        try:
            if isinstance(value, str):
                return self.reduce(Fraction(value.strip()))
            return self.reduce(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"Invalid coefficient: {value!r}") from e

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"


@dataclass(frozen=True)
class FactorialTable:
    """
    Factorials 0!, ..., n! in a domain together with the inverses that exist.

    ``inverses[k]`` is present for every k < p (all k when p = 0), so the list
    is shorter than ``values`` exactly when some factorial vanishes.
    """

    n: int
    values: Tuple[Element, ...]
    inverses: Tuple[Element, ...]
    domain: CoefficientDomain

    @property
    def complete(self) -> bool:
        return len(self.inverses) == self.n + 1

    def inverse(self, k: int) -> Element:
        if k >= len(self.inverses):
            raise CharacteristicTooSmall(
                f"{k}! is not invertible in characteristic {self.domain.p}"
            )
        return self.inverses[k]


def factorial_table(
    n: int,
    domain: CoefficientDomain,
    require_inverses: bool = False
) -> FactorialTable:
    """
    Build the table of factorials up to ``n``.

    Args:
        n (int): Largest index, n >= 0.
        domain (CoefficientDomain): Target domain.
        require_inverses (bool, optional): Demand every inverse factorial. Defaults to False.

    Returns:
        FactorialTable: The table.

    Raises:
        CharacteristicTooSmall: If inverses are required and 0 < p <= n.
        ValidationError: If n is negative.
    """
    if n < 0:
        raise ValidationError("Factorial table size must be nonnegative")
    if require_inverses and domain.p and domain.p <= n:
        raise CharacteristicTooSmall(
            f"{n}! vanishes in characteristic {domain.p}; inverse factorials unavailable"
        )
    return _factorial_table(n, domain)


@lru_cache(maxsize=256)
def _factorial_table(n: int, domain: CoefficientDomain) -> FactorialTable:
    values: List[Element] = [domain.one]
    for k in range(1, n + 1):
        values.append(domain.mul(values[-1], k))

    top = n if domain.p == 0 else min(n, domain.p - 1)
    inverses: List[Element] = [domain.zero] * (top + 1)
    inverses[top] = domain.inverse(values[top])
    for k in range(top, 0, -1):
        inverses[k - 1] = domain.mul(inverses[k], k)
    return FactorialTable(n=n, values=tuple(values), inverses=tuple(inverses), domain=domain)


def exp_series(n: int, domain: CoefficientDomain, sign: int = 1) -> List[Element]:
    """
    Coefficients of exp(sign * X) mod X^(n+1).

    Raises:
        CharacteristicTooSmall: If 0 < p <= n.
    """
    table = factorial_table(n, domain, require_inverses=True)
    if sign >= 0:
        return list(table.inverses)
    return [inv if k % 2 == 0 else domain.neg(inv) for k, inv in enumerate(table.inverses)]


def require_characteristic_above(domain: CoefficientDomain, bound: int, what: str) -> None:
    """
    Check p = 0 or p > bound.

    Raises:
        CharacteristicTooSmall: Otherwise.
    """
    if domain.p and domain.p <= bound:
        raise CharacteristicTooSmall(
            f"{what} needs characteristic 0 or above {bound}, got {domain.p}"
        )


def check_same_domain(*domains: Optional[CoefficientDomain]) -> CoefficientDomain:
    """Return the common domain or raise DomainMismatch."""
    first = domains[0]
    for other in domains[1:]:
        if other != first:
            raise DomainMismatch(f"Domain mismatch: {first} vs {other}")
    return first
