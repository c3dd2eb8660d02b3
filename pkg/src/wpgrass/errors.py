"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ContractionError(ValueError):
    """Beltrami coefficient sup-norm >= 1; the Neumann series cannot contract."""


class UnsupportedInputError(ValueError):
    """Input outside the representable class (non-compact support, log kernel case)."""


class SingularityError(ValueError):
    """Vanishing derivative in a Schwarzian computation."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class OutsideChartError(ValueError):
    """Chart operator id - sum t^i tbar^j psi_i psi_j* is not positive definite."""


class NormalizationError(ValueError):
    """Operand violates a required normalization (unit HS norm, orthonormal basis)."""


class ShapeMismatchError(ValueError):
    """Operand shapes are incompatible."""


class PairingIntegrityError(RuntimeError):
    """Quadrature and coefficient routes of a pairing disagree beyond tolerance."""
