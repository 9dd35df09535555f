########################
# Exception Hierarchy  #
########################

class OreError(Exception):
    """
    Base exception class for operator-arithmetic errors.

    All custom exceptions raised by the library and the benchmark harness
    inherit from this class, allowing for unified error handling.
    """
    pass


class ValidationError(OreError):
    """
    Raised when input validation fails.

    Triggered when command-line values or serialized operators do not meet the
    required criteria, such as a malformed size list or a non-prime modulus.
    """
    pass


class InvalidConfig(ValidationError):
    """
    Raised when a benchmark configuration is inconsistent.

    Examples are an empty size list, a non-positive trial count or an unknown
    output format.
    """
    pass


class ConfigurationError(OreError):
    """
    Raised when the library configuration is invalid.

    Triggered when environment-provided thresholds, directories or timeouts
    are out of range.
    """
    pass


class OperationError(OreError):
    """
    Raised when a benchmark or persistence operation fails.
    """
    pass


class ZeroInverse(OreError, ZeroDivisionError):
    """Raised when the inverse of zero is requested in a coefficient domain."""
    pass


class CharacteristicTooSmall(OreError):
    """
    Raised when an algorithm needs more distinct field elements or more
    invertible factorials than the characteristic provides.
    """
    pass


class ZeroCharacteristic(OreError):
    """Raised when a positive-characteristic algorithm is run over the rationals."""
    pass


class DomainMismatch(OreError):
    """Raised when operands live over different coefficient domains."""
    pass


class TagMismatch(OreError):
    """Raised when an operator is written in the wrong derivation (partial vs theta)."""
    pass


class DimensionMismatch(OreError):
    """Raised when matrix shapes are incompatible."""
    pass


class InconsistentBand(OreError):
    """
    Raised when a matrix carries nonzero entries outside the diagonals its band
    structure announces.
    """
    pass


class WindowTooSmall(OreError):
    """Raised when an evaluation window cannot hold the operator's bidegree."""
    pass


class NotLowerTriangular(OreError):
    """Raised when a reduction expects a lower-triangular matrix and gets another."""
    pass


class ConversionError(OreError):
    """
    Raised when a basis conversion cannot be represented in the target form,
    e.g. a Laurent operator whose derivative form would need negative X powers.
    """
    pass


class UnknownAlgorithm(OreError, ValueError):
    """Raised when a multiplication algorithm name is not registered."""
    pass
