########################
# Random Operators     #
########################

from typing import Sequence, Tuple, Union

import numpy as np

from app.coeffdom import CoefficientDomain
from app.exceptions import ValidationError
from app.orecore import OrePoly

# Rational benchmarks draw signed 16-bit integer coefficients
RATIONAL_BITS = 16

Seed = Union[int, Sequence[int], np.random.SeedSequence]


def _generator(seed: Seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_grid(d: int, r: int, domain: CoefficientDomain, rng: np.random.Generator) -> np.ndarray:
    """
    A (d+1) x (r+1) integer array of uniform coefficients whose corner entry
    (d, r) is nonzero.
    """
    if domain.p:
        grid = rng.integers(0, domain.p, size=(d + 1, r + 1), dtype=np.int64)
        if grid[d, r] == 0:
            grid[d, r] = rng.integers(1, domain.p)
        return grid
    bound = 2 ** (RATIONAL_BITS - 1)
    grid = rng.integers(-bound, bound, size=(d + 1, r + 1), dtype=np.int64)
    while grid[d, r] == 0:
        grid[d, r] = rng.integers(-bound, bound)
    return grid


def random_op(d: int, r: int, tag: str, domain: CoefficientDomain, seed: Seed) -> OrePoly:
    """
    Random operator of bidegree exactly (d, r).

    Args:
        d (int): Degree in X.
        r (int): Degree in the derivation.
        tag (str): ``partial`` or ``theta``.
        domain (CoefficientDomain): Coefficient domain.
        seed: Anything ``numpy.random.default_rng`` accepts.

    Returns:
        OrePoly: The same operator for the same seed.

    Raises:
        ValidationError: If d or r is negative.
    """
    if d < 0 or r < 0:
        raise ValidationError(f"Bidegree ({d}, {r}) must be nonnegative")
    grid = random_grid(d, r, domain, _generator(seed))
    return OrePoly.from_array(grid, tag, domain)


def random_pair(
    d: int,
    r: int,
    tag: str,
    domain: CoefficientDomain,
    seed: Seed
) -> Tuple[OrePoly, OrePoly]:
    """Two independent operators of bidegree (d, r) from one seed."""
    if d < 0 or r < 0:
        raise ValidationError(f"Bidegree ({d}, {r}) must be nonnegative")
    rng = _generator(seed)
    B = OrePoly.from_array(random_grid(d, r, domain, rng), tag, domain)
    A = OrePoly.from_array(random_grid(d, r, domain, rng), tag, domain)
    return B, A


def random_lower_triangular(size: int, domain: CoefficientDomain, seed: Seed) -> np.ndarray:
    """Uniform lower-triangular integer array; used by the reduction sweeps."""
    rng = _generator(seed)
    high = domain.p if domain.p else 2 ** (RATIONAL_BITS - 1)
    low = 0 if domain.p else -high
    return np.tril(rng.integers(low, high, size=(size, size), dtype=np.int64))
