"""Exception hierarchy shared by every module of the package."""


class ASError(ValueError):
    """Base class for all input/validation errors raised by asorder."""


class NotPrime(ASError):
    pass


class ReducibleModulus(ASError):
    pass


class DegreeMismatch(ASError):
    pass


class FieldMismatch(ASError):
    pass


class ContextMismatch(ASError):
    pass


class Reducible(ASError):
    """x^p - x - a has a root in the base field."""


class NotInPrimeField(ASError):
    pass


class RequiresAEqualsOne(ASError):
    pass


class RequiresNAtLeast2(ASError):
    pass


class InvalidBudget(ASError):
    pass


class InvalidLambda(ASError):
    pass


class TooLarge(ASError):
    """An enumeration or order computation exceeds its size guard."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class FactorizationBudgetExceeded(ASError):
    pass
