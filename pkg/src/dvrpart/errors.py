"""Exception hierarchy shared by every module of the package."""


class DvrPartError(ValueError):
    """Base class for all errors raised by dvrpart."""


class DomainError(DvrPartError):
    """An argument lies outside the domain of the operation (e.g. e < 1, p not prime)."""


class PartitionParseError(DvrPartError):
    """Partition text could not be parsed; ``token`` holds the offending piece."""

    def __init__(self, token: str, reason: str):
        self.token = token
        self.reason = reason
        super().__init__(f"bad partition token {token!r}: {reason}")


class PrecisionError(DvrPartError):
    """The truncation exponent K is too small for the requested computation."""


class TrivialModuleError(DomainError):
    """The operation needs a non-trivial module but got the empty partition."""
