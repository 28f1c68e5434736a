class SunControlError(Exception):
    """Base class for all errors raised by suncontrol."""


class InputError(SunControlError, ValueError):
    """Bad user input; the CLI maps these to exit code 1."""


class DimensionError(InputError):
    pass


class ValidationError(InputError):
    pass


class ParseError(InputError):
    pass


class DegenerateInputError(SunControlError, ValueError):
    """An operation needs structure the input does not have (e.g. empty Gamma+)."""


class ConsistencyError(SunControlError, RuntimeError):
    """Two independent computations disagree; indicates a bug, exit code 2."""


class OracleContradiction(ConsistencyError):
    """A sufficient (or necessary) criterion disagrees with the rank condition."""


class ClosureNotConverged(SunControlError, RuntimeError):
    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension
