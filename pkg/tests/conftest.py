import random

import pytest

from app.coeffdom import CoefficientDomain
from app.ore_config import set_config

PRIME = 65521


@pytest.fixture(autouse=True)
def fresh_config():
    # the runner installs its configuration process-wide
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def gf():
    return CoefficientDomain(PRIME)


@pytest.fixture
def qq():
    return CoefficientDomain(0)


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_coeffs(rng, length, domain):
    """Uniform coefficients; 16-bit signed integers over the rationals."""
    if domain.p:
        return [rng.randrange(domain.p) for _ in range(length)]
    return domain.reduce_list(rng.randint(-2 ** 15, 2 ** 15 - 1) for _ in range(length))


def naive_mul(a, b, domain):
    if not a or not b:
        return []
    out = [domain.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = domain.add(out[i + j], domain.mul(x, y))
    while out and out[-1] == 0:
        out.pop()
    return out
