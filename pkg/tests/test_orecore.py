from fractions import Fraction
from math import comb

import pytest

from app.algorithms import AlgorithmFactory
from app.coeffdom import CoefficientDomain
from app.exceptions import CharacteristicTooSmall, DomainMismatch, TagMismatch, ValidationError
from app.instrumentation import count_ops
from app.orecore import (
    PARTIAL,
    THETA,
    ZERO_BIDEGREE,
    Bidegree,
    OrePoly,
    apply,
    d_dD,
    d_dX,
    leibniz_monomial,
    mul_iter,
    mul_iter_dx,
    mul_iter_x,
    mul_naive,
    mul_takayama,
)
from app.polyarith import DensePoly
from app.random_ops import random_op
from tests.conftest import random_coeffs

GF = CoefficientDomain(65521)
QQ = CoefficientDomain(0)

PARTIAL_PRODUCTS = [mul_naive, mul_iter, mul_iter_dx, mul_iter_x, mul_takayama]


def falling(k, t):
    out = 1
    for s in range(t):
        out *= k - s
    return out


def expected_partial_monomial_product(a, b, c, d, domain):
    """X^a d^b X^c d^d = sum_t (c)_t C(b, t) X^(a+c-t) d^(b+d-t)."""
    grid = [[0] * (b + d + 1) for _ in range(a + c + 1)]
    for t in range(min(b, c) + 1):
        grid[a + c - t][b + d - t] = falling(c, t) * comb(b, t)
    return OrePoly.from_grid(grid, PARTIAL, domain)


def expected_theta_monomial_product(a, b, c, d, domain):
    """X^a t^b X^c t^d = X^(a+c) (t + c)^b t^d."""
    grid = [[0] * (b + d + 1) for _ in range(a + c + 1)]
    for t in range(b + 1):
        grid[a + c][t + d] = comb(b, t) * c ** (b - t)
    return OrePoly.from_grid(grid, THETA, domain)


# ---------------------------
# Monomial products
# ---------------------------
def algorithms_for(tag):
    return [name for name in AlgorithmFactory.names() if AlgorithmFactory.create_algorithm(name).tag == tag]


def check_monomial_products(multiply, skip_reason, tag, expected, domain):
    for a in range(5):
        for b in range(5):
            for c in range(5):
                for d in range(5):
                    left = OrePoly.monomial(a, b, tag, domain)
                    right = OrePoly.monomial(c, d, tag, domain)
                    if skip_reason(left, right):
                        continue
                    assert multiply(left, right) == expected(a, b, c, d, domain), f"{a} {b} {c} {d}"


@pytest.mark.parametrize("multiply", PARTIAL_PRODUCTS)
@pytest.mark.parametrize("domain", [GF, QQ])
def test_partial_monomial_products(multiply, domain):
    check_monomial_products(multiply, lambda B, A: None, PARTIAL, expected_partial_monomial_product, domain)


@pytest.mark.parametrize("name", algorithms_for(PARTIAL))
@pytest.mark.parametrize("domain", [GF, QQ, CoefficientDomain(5)])
def test_partial_monomial_products_every_algorithm(name, domain):
    algorithm = AlgorithmFactory.create_algorithm(name)
    check_monomial_products(algorithm.multiply, algorithm.skip_reason, PARTIAL,
                            expected_partial_monomial_product, domain)


@pytest.mark.parametrize("name", algorithms_for(THETA))
@pytest.mark.parametrize("domain", [GF, QQ, CoefficientDomain(2), CoefficientDomain(3)])
def test_theta_monomial_products(name, domain):
    algorithm = AlgorithmFactory.create_algorithm(name)
    check_monomial_products(algorithm.multiply, algorithm.skip_reason, THETA,
                            expected_theta_monomial_product, domain)


def test_leibniz_monomial():
    # d^2 X^2 = X^2 d^2 + 4 X d + 2
    assert leibniz_monomial(2, 2, QQ).grid() == [[2, 0, 0], [0, 4, 0], [0, 0, 1]]


def test_commutator():
    d = OrePoly.monomial(0, 1, PARTIAL, GF)
    x = OrePoly.monomial(1, 0, PARTIAL, GF)
    assert d * x - x * d == OrePoly.one(PARTIAL, GF)
    t = OrePoly.monomial(0, 1, THETA, GF)
    xt = OrePoly.monomial(1, 0, THETA, GF)
    assert t * xt - xt * t == xt


# ---------------------------
# Random products
# ---------------------------
@pytest.mark.parametrize("domain", [GF, QQ, CoefficientDomain(2 ** 61 - 1)])
@pytest.mark.parametrize("shape", [(0, 0, 3, 2), (4, 1, 1, 4), (5, 5, 5, 5), (7, 2, 3, 6)])
def test_partial_algorithms_agree(domain, shape):
    d_b, r_b, d_a, r_a = shape
    B = random_op(d_b, r_b, PARTIAL, domain, seed=[1, *shape])
    A = random_op(d_a, r_a, PARTIAL, domain, seed=[2, *shape])
    expected = mul_naive(B, A)
    assert expected.bidegree == Bidegree(d_a + d_b, r_a + r_b)
    for multiply in PARTIAL_PRODUCTS[1:]:
        assert multiply(B, A) == expected


@pytest.mark.parametrize("tag", [PARTIAL, THETA])
def test_product_acts_as_composition(rng, tag):
    B = random_op(3, 4, tag, GF, seed=11)
    A = random_op(4, 2, tag, GF, seed=12)
    f = DensePoly.from_coeffs(random_coeffs(rng, 9, GF), GF)
    assert apply(mul_naive(B, A), f) == apply(B, apply(A, f))


def test_multiplication_is_associative():
    P = random_op(2, 3, PARTIAL, QQ, seed=1)
    Q = random_op(3, 1, PARTIAL, QQ, seed=2)
    R = random_op(1, 2, PARTIAL, QQ, seed=3)
    assert (P * Q) * R == P * (Q * R)


def test_products_with_zero():
    Z = OrePoly.zero(PARTIAL, GF)
    A = random_op(3, 3, PARTIAL, GF, seed=5)
    for multiply in PARTIAL_PRODUCTS:
        assert multiply(Z, A).is_zero
        assert multiply(A, Z).is_zero


def test_naive_counts_operations():
    B = random_op(3, 3, PARTIAL, GF, seed=1)
    A = random_op(3, 3, PARTIAL, GF, seed=2)
    with count_ops() as tally:
        mul_naive(B, A)
    assert tally.ops > 0


# ---------------------------
# Formal derivatives and Takayama
# ---------------------------
def test_derivatives_are_commutators():
    L = random_op(4, 3, PARTIAL, GF, seed=9)
    d = OrePoly.monomial(0, 1, PARTIAL, GF)
    x = OrePoly.monomial(1, 0, PARTIAL, GF)
    assert d_dX(L) == d * L - L * d
    assert d_dD(L) == L * x - x * L


def test_takayama_needs_large_characteristic():
    domain = CoefficientDomain(5)
    B = random_op(5, 5, PARTIAL, domain, seed=1)
    A = random_op(5, 5, PARTIAL, domain, seed=2)
    with pytest.raises(CharacteristicTooSmall):
        mul_takayama(B, A)
    # the iterative schemes need no division
    assert mul_iter(B, A) == mul_naive(B, A)


def test_takayama_small_characteristic_when_degrees_allow():
    domain = CoefficientDomain(3)
    B = random_op(6, 2, PARTIAL, domain, seed=1)
    A = random_op(2, 6, PARTIAL, domain, seed=2)
    assert mul_takayama(B, A) == mul_naive(B, A)


# ---------------------------
# Operand checks
# ---------------------------
def test_tag_mismatch():
    B = OrePoly.one(PARTIAL, GF)
    A = OrePoly.one(THETA, GF)
    with pytest.raises(TagMismatch):
        mul_naive(B, A)
    with pytest.raises(TagMismatch, match="Expected partial"):
        mul_iter(A, A)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        mul_naive(OrePoly.one(PARTIAL, GF), OrePoly.one(PARTIAL, QQ))


def test_unknown_tag():
    with pytest.raises(ValidationError, match="Unknown operator variable"):
        OrePoly.from_grid([[1]], "sigma", GF)


# ---------------------------
# Representation
# ---------------------------
def test_normalization_and_bidegree():
    P = OrePoly.from_grid([[1, 0, 0], [0, 2, 0], [0, 0, 0]], PARTIAL, GF)
    assert P.coeffs == ((1, 0), (0, 2))
    assert P.bidegree == Bidegree(1, 1)
    assert str(P.bidegree) == "(1, 1)"
    zero = OrePoly.from_grid([[0, 0], [0, 0]], PARTIAL, GF)
    assert zero.is_zero
    assert zero.bidegree == ZERO_BIDEGREE
    assert (zero.d, zero.r) == (-1, -1)


def test_add_and_subtract():
    P = random_op(3, 3, PARTIAL, QQ, seed=4)
    assert (P - P).is_zero
    assert P + P == OrePoly.from_grid([[2 * x for x in row] for row in P.coeffs], PARTIAL, QQ)


def test_rows_and_columns():
    P = OrePoly.from_grid([[1, 2], [3, 0]], PARTIAL, GF)
    assert P.column(1) == [2]
    assert P.row(1) == [3]
    assert P.column(5) == []
    assert P.coeff(4, 4) == 0


def test_str():
    P = OrePoly.from_grid([[5, 0], [0, 1]], PARTIAL, GF)
    assert str(P) == "5 + 1*X^1*d^1"
    assert str(OrePoly.monomial(0, 2, THETA, GF)) == "1*t^2"
    assert str(OrePoly.zero(THETA, GF)) == "0"


def test_serialization_round_trip():
    P = OrePoly.from_grid([[Fraction(1, 2), 0], [3, Fraction(-7, 5)]], PARTIAL, QQ)
    assert P.to_dict() == {'var': 'partial', 'p': 0, 'coeffs': [["1/2", "0/1"], ["3/1", "-7/5"]]}
    assert OrePoly.from_json(P.to_json()) == P


def test_prime_field_document():
    P = OrePoly.from_dict({'var': 'theta', 'p': 7, 'coeffs': [[1, 9], ["1/2", 0]]})
    assert P.tag == THETA
    assert P.coeffs == ((1, 2), (4, 0))


@pytest.mark.parametrize("document", [
    {'var': 'partial', 'coeffs': [[1]]},
    {'var': 'partial', 'p': 6, 'coeffs': [[1]]},
    {'var': 'partial', 'p': 7, 'coeffs': 5},
    {'var': 'partial', 'p': 0, 'coeffs': [["x"]]},
])
def test_invalid_documents(document):
    with pytest.raises(ValidationError):
        OrePoly.from_dict(document)


def test_invalid_json():
    with pytest.raises(ValidationError, match="Invalid operator JSON"):
        OrePoly.from_json("{not json")


def test_apply():
    # (X d + 1)(X^3) = 4 X^3
    P = OrePoly.from_grid([[1, 0], [0, 1]], PARTIAL, GF)
    assert apply(P, DensePoly.from_coeffs([0, 0, 0, 1], GF)).coeffs == (0, 0, 0, 4)
    T = OrePoly.monomial(0, 1, THETA, GF)
    assert apply(T, DensePoly.from_coeffs([0, 0, 0, 1], GF)).coeffs == (0, 0, 0, 3)
