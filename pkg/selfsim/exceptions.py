class CommandError(Exception):
    """Error carrying the process exit code it should end with."""

    exit_code = 1

    def __init__(self, detail: str, exit_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class UsageError(CommandError):
    exit_code = 2


class DomainError(CommandError):
    """Input is well formed but the requested operation is undefined on it."""


class AlphabetMismatch(DomainError):
    pass


class InvalidDefinition(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class SizeBoundExceeded(DomainError):
    pass


class ClosureExceeded(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class UnknownEntry(DomainError):
    pass


class ConvergenceError(DomainError):
    pass


class SingularMatrixError(DomainError):
    pass


class PoleProximityError(DomainError):
    pass


class IndeterminateError(DomainError):
    pass
