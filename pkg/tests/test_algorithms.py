import pytest

from app.algorithms import (
    Algorithm,
    AlgorithmFactory,
    CharP,
    IvdhTheta,
    MulWeyl,
    Naive,
    Takayama,
    VdhPartial,
)
from app.coeffdom import CoefficientDomain
from app.exceptions import UnknownAlgorithm, ValidationError
from app.matrixarith import STRATEGIES, BlockCounter
from app.orecore import PARTIAL, THETA, OrePoly, mul_naive
from app.random_ops import random_op, random_pair

GF = CoefficientDomain(65521)
QQ = CoefficientDomain(0)

ALL_NAMES = [
    "naive", "iter", "iter_dx", "iter_x", "takayama", "vdh", "ivdh", "mulweyl",
    "naive_theta", "vdh_theta", "ivdh_theta", "charp", "charp_partial",
]


class TestAlgorithm:
    """Test base Algorithm class functionality."""

    def test_str_representation(self):
        class Identity(Algorithm):
            def multiply(self, B, A, counter=None):
                return A

        assert str(Identity()) == "Identity"

    def test_unknown_strategy(self):
        with pytest.raises(ValidationError, match="Unknown matrix strategy"):
            Naive("quick")

    def test_default_bound_never_skips(self):
        B, A = random_pair(4, 4, PARTIAL, CoefficientDomain(2), 0)
        assert Naive().skip_reason(B, A) is None


class TestSkipReasons:
    """Characteristic bounds of the algorithms that divide."""

    def test_takayama(self):
        B, A = random_pair(6, 6, PARTIAL, CoefficientDomain(5), 0)
        assert Takayama().skip_reason(B, A) == "needs p > 6, got p = 5"
        assert Takayama().skip_reason(*random_pair(6, 6, PARTIAL, CoefficientDomain(7), 0)) is None

    def test_mulweyl(self):
        B, A = random_pair(3, 3, PARTIAL, CoefficientDomain(7), 0)
        assert MulWeyl().skip_reason(B, A) == "needs p > 9, got p = 7"

    def test_vdh(self):
        B, A = random_pair(2, 2, PARTIAL, CoefficientDomain(7), 0)
        assert VdhPartial().skip_reason(B, A) == "needs p > 8, got p = 7"

    def test_rationals_never_skip(self):
        B, A = random_pair(6, 6, THETA, QQ, 0)
        assert IvdhTheta().skip_reason(B, A) is None

    def test_charp_needs_positive_characteristic(self):
        B, A = random_pair(2, 2, THETA, QQ, 0)
        assert CharP().skip_reason(B, A) == "needs a positive characteristic"
        assert CharP().skip_reason(*random_pair(2, 2, THETA, GF, 0)) is None


class TestAlgorithmFactory:
    """Test AlgorithmFactory functionality."""

    def test_names(self):
        assert AlgorithmFactory.names() == ALL_NAMES

    @pytest.mark.parametrize("name", ALL_NAMES)
    def test_create_algorithm(self, name):
        algorithm = AlgorithmFactory.create_algorithm(name.upper(), "strassen")
        assert isinstance(algorithm, Algorithm)
        assert algorithm.strategy == "strassen"

    def test_tags(self):
        assert AlgorithmFactory.create_algorithm("vdh_theta").tag == THETA
        assert AlgorithmFactory.create_algorithm("charp_partial").tag == PARTIAL

    def test_create_unknown(self):
        with pytest.raises(UnknownAlgorithm, match="Unknown algorithm: fastest"):
            AlgorithmFactory.create_algorithm("fastest")

    def test_register_algorithm(self):
        class Reversed(Algorithm):
            def multiply(self, B, A, counter=None):
                return mul_naive(B, A)

        AlgorithmFactory.register_algorithm("Reversed", Reversed)
        try:
            assert isinstance(AlgorithmFactory.create_algorithm("reversed"), Reversed)
        finally:
            AlgorithmFactory._algorithms.pop("reversed")

    def test_register_invalid_algorithm(self):
        class NotAnAlgorithm:
            pass

        with pytest.raises(TypeError, match="Algorithm class must inherit from Algorithm"):
            AlgorithmFactory.register_algorithm("invalid", NotAnAlgorithm)


# ---------------------------
# Agreement
# ---------------------------
@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("name", ALL_NAMES)
def test_every_algorithm_matches_naive(name, strategy):
    algorithm = AlgorithmFactory.create_algorithm(name, strategy)
    for seed in range(3):
        B, A = random_pair(5 + seed, 4, algorithm.tag, GF, seed)
        assert algorithm.multiply(B, A) == mul_naive(B, A)


@pytest.mark.parametrize("name", [name for name in ALL_NAMES if not name.startswith("charp")])
def test_rational_agreement(name):
    algorithm = AlgorithmFactory.create_algorithm(name)
    for seed in range(5):
        B, A = random_pair(3 + seed, 6 - seed, algorithm.tag, QQ, 11 + seed)
        assert algorithm.multiply(B, A) == mul_naive(B, A), f"seed {seed}"


@pytest.mark.parametrize("name", ["vdh", "vdh_theta"])
def test_rational_vandermonde_unbalanced(name):
    algorithm = AlgorithmFactory.create_algorithm(name)
    B = random_op(7, 2, algorithm.tag, QQ, [3, 0])
    A = random_op(1, 6, algorithm.tag, QQ, [3, 1])
    assert algorithm.multiply(B, A) == mul_naive(B, A)
    assert algorithm.multiply(A, B) == mul_naive(A, B)


def test_block_counting_algorithms_fill_the_counter():
    B, A = random_pair(8, 8, PARTIAL, GF, 0)
    counter = BlockCounter(8)
    AlgorithmFactory.create_algorithm("mulweyl").multiply(B, A, counter)
    assert counter.total == 12


def test_zero_operand():
    B, _ = random_pair(3, 3, PARTIAL, GF, 0)
    zero = OrePoly.zero(PARTIAL, GF)
    for name in ("naive", "iter", "takayama", "mulweyl", "ivdh"):
        assert AlgorithmFactory.create_algorithm(name).multiply(B, zero).is_zero
