"""Exception hierarchy shared by all modules."""


class CycleTimeError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(CycleTimeError, ValueError):
    pass


class InvalidArgumentError(CycleTimeError, ValueError):
    pass


class InvalidInstanceError(CycleTimeError, ValueError):
    """A parametric instance contains entries outside R_max (e.g. +inf)."""


class TooLargeError(CycleTimeError, ValueError):
    pass


class InconsistentPlacesError(CycleTimeError, ValueError):
    """Parallel places merge into an empty time window."""


class UnknownModeError(CycleTimeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InfeasibleLambdaError(CycleTimeError, ValueError):
    pass


class MissingPrefixError(CycleTimeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ModelParseError(CycleTimeError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ModelValidationError(CycleTimeError, ValueError):
    pass


class UnsupportedFormatError(CycleTimeError, ValueError):
    pass
