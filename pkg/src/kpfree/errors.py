"""Exception hierarchy. CLI exit codes hang off these classes."""


class KpFreeError(Exception):
    exit_code = 1


class InputError(KpFreeError, ValueError):
    """Bad input or violated precondition."""

    exit_code = 2


class GraphFormatError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(KpFreeError):
    """An exact search was refused or aborted by its budget."""

    exit_code = 3


class ContractViolation(KpFreeError):
    """A guarantee a proof step relies on did not hold for the current state."""

    exit_code = 4


class CertificationError(KpFreeError):
    """An output failed independent re-certification. Always a bug."""

    exit_code = 4


class InternalContradiction(KpFreeError):
    """Reached a state the hypotheses rule out (e.g. a K_{p+1} with omega = p)."""

    exit_code = 4
