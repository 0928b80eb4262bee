"""Exception hierarchy shared by every module of the package."""


class HorizonQIError(Exception):
    """Base class for all package errors."""


class ShapeError(HorizonQIError, ValueError):
    """Matrix or register dimensions are incompatible with the operation."""


class ContractError(HorizonQIError, ValueError):
    """Input violates a documented precondition (e.g. non-Hermitian matrix)."""


class NotPSDError(ContractError):
    """Matrix has an eigenvalue below the negativity tolerance."""


class NumericError(HorizonQIError, ArithmeticError):
    """An iterative routine failed to converge or produced non-finite output."""


class LabelError(HorizonQIError, KeyError):
    """Unknown or duplicated qubit label."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DomainError(HorizonQIError, ValueError):
    """Physical parameter outside its domain (negative frequency, mass <= 0, ...)."""


class UnsupportedError(HorizonQIError, NotImplementedError):
    """Operation not defined for the given model variant."""


class ConfigurationError(HorizonQIError, ValueError):
    """Sweep grid or scenario template is inconsistent."""
