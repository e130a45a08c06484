"""Exception hierarchy.

Every error raised for a bad domain value derives from :class:`DomainError`;
the CLI maps these to exit code 1.
"""


class DomainError(ValueError):
    pass


class NotPrimeError(DomainError):
    pass


class IndexOutOfRangeError(DomainError):
    pass


class PrimeMismatchError(DomainError):
    pass


class NotUnipotentError(DomainError):
    pass


class SizeOutOfRangeError(DomainError):
    pass


class DegreeTooLargeError(DomainError):
    pass


class RankOutOfRangeError(DomainError):
    pass


class RankMismatchError(DomainError):
    pass


class EmptyShapeError(DomainError):
    pass


class ZeroDimensionError(DomainError):
    pass


class OrderMismatchError(DomainError):
    pass


class NonzeroTrivialPartError(DomainError):
    pass


class NotHomogeneousError(DomainError):
    pass


class InvalidWeightError(DomainError):
    pass


class InvalidLabelError(DomainError):
    pass
