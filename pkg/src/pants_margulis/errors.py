class DomainError(ValueError):
    """An input is outside the domain where a quantity is defined."""


class EllipticElementError(DomainError):
    """Raised when an invariant is requested for an elliptic or identity element."""

    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class DegenerateSystemError(DomainError):
    pass
