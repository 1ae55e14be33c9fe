"""Exception hierarchy. The CLI maps each class to a stable exit code."""


class LatsymError(Exception):
    exit_code = 1


class InputError(LatsymError, ValueError):
    """Malformed or inconsistent input (bad site index, parse failure, ...)."""

    exit_code = 2


class PoleError(InputError):
    """Evaluation requested at a pole of the reduction."""

    def __init__(self, msg: str, factor=None):
        super().__init__(msg)
        self.factor = factor


class PreconditionError(LatsymError):
    """Input is well formed but violates an operation's precondition."""

    exit_code = 3


class NumericalQualityError(LatsymError):
    """A floating construction missed its residual tolerances."""

    exit_code = 4

    def __init__(self, msg: str, residuals: dict | None = None):
        super().__init__(msg)
        self.residuals = dict(residuals or {})
