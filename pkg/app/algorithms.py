########################
# Algorithm Classes    #
########################

from abc import ABC, abstractmethod
from typing import Dict, List, Optional

from app.charp import mul_partial_p, mul_theta_p
from app.dmul import mul_partial_vdh
from app.exceptions import UnknownAlgorithm, ValidationError
from app.matrixarith import STRATEGIES, BlockCounter
from app.mulweyl import mul_weyl
from app.orecore import PARTIAL, THETA, OrePoly, mul_iter, mul_iter_dx, mul_iter_x, mul_naive, mul_takayama
from app.thetamul import mul_theta_vdh


class Algorithm(ABC):
    """
    Abstract base class for operator multiplication algorithms.

    Subclasses name the derivation they work with (``tag``), whether their cost
    is counted in matrix blocks, and the characteristic bound they need.
    """

    tag: str = PARTIAL
    counts_blocks: bool = False

    def __init__(self, strategy: str = "naive"):
        if strategy not in STRATEGIES:
            raise ValidationError(f"Unknown matrix strategy: {strategy}")
        self.strategy = strategy

    @abstractmethod
    def multiply(self, B: OrePoly, A: OrePoly, counter: Optional[BlockCounter] = None) -> OrePoly:
        pass  # pragma: no cover

    def characteristic_bound(self, B: OrePoly, A: OrePoly) -> int:
        """Largest integer the characteristic must exceed; -1 when any p works."""
        return -1

    def skip_reason(self, B: OrePoly, A: OrePoly) -> Optional[str]:
        """
        Why this pair cannot be multiplied in its domain, or None.
        """
        p = A.domain.p
        bound = self.characteristic_bound(B, A)
        if p and p <= bound:
            return f"needs p > {bound}, got p = {p}"
        return None

    def __str__(self) -> str:
        return self.__class__.__name__


class Naive(Algorithm):
    def multiply(self, B, A, counter=None):
        return mul_naive(B, A)


class NaiveTheta(Naive):
    tag = THETA


class Iterative(Algorithm):
    """Chooses between the two iterative schemes by step count."""

    def multiply(self, B, A, counter=None):
        return mul_iter(B, A)


class IterativeDx(Algorithm):
    def multiply(self, B, A, counter=None):
        return mul_iter_dx(B, A)


class IterativeX(Algorithm):
    def multiply(self, B, A, counter=None):
        return mul_iter_x(B, A)


class Takayama(Algorithm):
    def multiply(self, B, A, counter=None):
        return mul_takayama(B, A)

    def characteristic_bound(self, B, A):
        return min(B.r, A.d)


class VdhPartial(Algorithm):
    """Laurent evaluation-interpolation with every step as a matrix product."""

    counts_blocks = True
    variant = "vandermonde"

    def multiply(self, B, A, counter=None):
        return mul_partial_vdh(B, A, self.variant, counter, self.strategy)

    def characteristic_bound(self, B, A):
        return 2 * A.r + A.d + B.r


class IvdhPartial(VdhPartial):
    """Laurent evaluation-interpolation with fast conversions and evaluations."""

    variant = "fast"


class MulWeyl(Algorithm):
    counts_blocks = True

    def multiply(self, B, A, counter=None):
        return mul_weyl(B, A, counter, self.strategy)

    def characteristic_bound(self, B, A):
        return A.d + A.r + B.r


class VdhTheta(Algorithm):
    tag = THETA
    counts_blocks = True
    variant = "vandermonde"

    def multiply(self, B, A, counter=None):
        return mul_theta_vdh(B, A, self.variant, counter, self.strategy)

    def characteristic_bound(self, B, A):
        return A.d + A.r + B.r


class IvdhTheta(VdhTheta):
    variant = "fast"


class CharP(Algorithm):
    """Positive-characteristic theta product; skipped over the rationals."""

    tag = THETA

    def multiply(self, B, A, counter=None):
        return mul_theta_p(B, A)

    def skip_reason(self, B, A):
        if A.domain.p == 0:
            return "needs a positive characteristic"
        return None


class CharPPartial(CharP):
    tag = PARTIAL

    def multiply(self, B, A, counter=None):
        return mul_partial_p(B, A)


# ===== Factory =====

class AlgorithmFactory:
    """Factory class for creating algorithm instances."""

    _algorithms: Dict[str, type] = {
        'naive': Naive,
        'iter': Iterative,
        'iter_dx': IterativeDx,
        'iter_x': IterativeX,
        'takayama': Takayama,
        'vdh': VdhPartial,
        'ivdh': IvdhPartial,
        'mulweyl': MulWeyl,
        'naive_theta': NaiveTheta,
        'vdh_theta': VdhTheta,
        'ivdh_theta': IvdhTheta,
        'charp': CharP,
        'charp_partial': CharPPartial,
    }

    @classmethod
    def register_algorithm(cls, name: str, algorithm_class: type) -> None:
        if not issubclass(algorithm_class, Algorithm):
            raise TypeError("Algorithm class must inherit from Algorithm")
        cls._algorithms[name.lower()] = algorithm_class

    @classmethod
    def create_algorithm(cls, name: str, strategy: str = "naive") -> Algorithm:
        """
        Raises:
            UnknownAlgorithm: If no algorithm is registered under ``name``.
        """
        algorithm_class = cls._algorithms.get(name.lower())
        if not algorithm_class:
            raise UnknownAlgorithm(f"Unknown algorithm: {name}")
        return algorithm_class(strategy)

    @classmethod
    def names(cls) -> List[str]:
        return list(cls._algorithms)
