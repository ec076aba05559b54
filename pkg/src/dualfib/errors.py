class CategoryError(ValueError):
    """Malformed categorical data or a violated precondition."""


class UnknownId(CategoryError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NotComposable(CategoryError):
    pass


class PreconditionError(CategoryError):
    pass


class NotAFibration(CategoryError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidSetup(CategoryError):
    """Categories or projection of a fibration setup violate the axioms."""

    def __init__(self, message: str, report=()):
        super().__init__(message)
        self.report = list(report)
