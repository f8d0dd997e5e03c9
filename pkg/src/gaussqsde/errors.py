"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input failed a precondition (shape, finiteness, Hermiticity, bath constraints)."""


class SingularityError(ValidationError):
    """A matrix that must be inverted is singular or too ill-conditioned."""

    def __init__(self, message, condition_number):
        super().__init__(message)
        self.condition_number = condition_number


class NotUnitaryError(ValidationError):
    """Normal-ordered coefficients do not satisfy the unitarity conditions."""


class InconsistencyError(ValidationError):
    """Extracted (W, H, L) parameters violate one of the defining identities."""


class DomainError(ValueError):
    """A test function is evaluated outside the interval it is defined on."""
