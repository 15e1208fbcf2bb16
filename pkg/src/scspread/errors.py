"""Exception types raised across the toolkit."""


class InvalidArgumentError(ValueError):
    """An argument is outside the accepted domain (bad dimension, mismatched shape)."""


class InvalidPartitionError(InvalidArgumentError):
    """A partition matrix entry is not in the coupling pattern's value set."""

    def __init__(self, i: int, j: int, value: int):
        super().__init__(f"partition entry P({i},{j})={value} is not in the coupling pattern")
        self.position = (i, j)
        self.value = value


class DomainError(ValueError):
    """A numeric argument makes the requested quantity undefined (e.g. infeasible target sum)."""


class PreconditionError(ValueError):
    """A hypothesis required by the requested bound does not hold."""


class UnsupportedRegimeError(ValueError):
    """The requested comparison is only defined for a restricted parameter range."""


class UndefinedGirthError(ValueError):
    """Girth was requested for a matrix without any edges."""


class ResourceError(RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message: str, projected: int | None = None):
        super().__init__(message)
        self.projected = projected
