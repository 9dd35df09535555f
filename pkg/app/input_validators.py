########################
# Input Validation     #
########################

from dataclasses import dataclass
from typing import Any, List, Optional

from sympy import isprime

from app.algorithms import AlgorithmFactory
from app.coeffdom import MAX_PRIME, CoefficientDomain
from app.exceptions import InvalidConfig, UnknownAlgorithm, ValidationError
from app.matrixarith import STRATEGIES

FORMATS = ("csv", "table")


@dataclass
class BenchConfig:
    """
    Settings of one verification or benchmark sweep.

    ``block_size`` None means block size n for size n, the blocking under
    which block products are tallied.
    """

    algos: List[str]
    sizes: List[int]
    p: int = 65521
    trials: int = 1
    seed: int = 0
    output_format: str = "table"
    verify: bool = False
    count_blocks: bool = False
    block_size: Optional[int] = None
    timeout: float = 60.0
    strategy: str = "naive"

    @property
    def domain(self) -> CoefficientDomain:
        return CoefficientDomain(self.p)

    def validate(self) -> None:
        """
        Raises:
            InvalidConfig: If a field is out of range.
            UnknownAlgorithm: If an algorithm name is not registered.
        """
        if not self.algos:
            raise InvalidConfig("At least one algorithm is required")
        if not self.sizes:
            raise InvalidConfig("At least one size is required")
        if any(n <= 0 for n in self.sizes):
            raise InvalidConfig(f"Sizes must be positive: {self.sizes}")
        if self.trials < 1:
            raise InvalidConfig("trials must be at least 1")
        if self.output_format not in FORMATS:
            raise InvalidConfig(f"Unknown output format: {self.output_format}")
        if self.block_size is not None and self.block_size <= 0:
            raise InvalidConfig("block_size must be positive")
        if self.timeout <= 0:
            raise InvalidConfig("timeout must be positive")
        if self.strategy not in STRATEGIES:
            raise InvalidConfig(f"Unknown matrix strategy: {self.strategy}")
        try:
            InputValidator.validate_prime(self.p)
        except ValidationError as e:
            raise InvalidConfig(str(e)) from e
        for name in self.algos:
            InputValidator.validate_algorithm(name)


@dataclass
class InputValidator:
    """Validates and converts command-line values."""

    @staticmethod
    def validate_int_list(value: Any, name: str = "list") -> List[int]:
        """
        Parse a comma-separated list of integers.

        Args:
            value: ``"8,16,32"`` or an iterable of integers.
            name: Field name used in error messages.

        Returns:
            List[int]: The parsed integers, possibly empty.

        Raises:
            ValidationError: If an item is not an integer.
        """
        if isinstance(value, str):
            items = [item.strip() for item in value.split(",") if item.strip()]
        else:
            items = list(value)
        try:
            return [int(item) for item in items]
        except (TypeError, ValueError) as e:
            raise ValidationError(f"Invalid {name}: {value}") from e

    @staticmethod
    def validate_name_list(value: Any) -> List[str]:
        if isinstance(value, str):
            return [item.strip().lower() for item in value.split(",") if item.strip()]
        return [str(item).lower() for item in value]

    @staticmethod
    def validate_prime(value: Any) -> int:
        """
        Accept 0 (the rationals) or a prime below 2^62.

        Raises:
            ValidationError: If the value is not such an integer.
        """
        try:
            p = int(str(value).strip())
        except ValueError as e:
            raise ValidationError(f"Invalid prime: {value}") from e
        if p == 0:
            return p
        if p < 0 or p >= MAX_PRIME or not isprime(p):
            raise ValidationError(f"Characteristic must be 0 or a prime below 2^62, got {value}")
        return p

    @staticmethod
    def validate_algorithm(name: str) -> str:
        """
        Raises:
            UnknownAlgorithm: If no algorithm is registered under ``name``.
        """
        if name.lower() not in AlgorithmFactory.names():
            raise UnknownAlgorithm(f"Unknown algorithm: {name}")
        return name.lower()
