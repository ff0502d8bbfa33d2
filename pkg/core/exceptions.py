"""
Error hierarchy shared by every app.

Each error carries a stable machine ``code`` so that management commands and
API views can report it in one line without parsing messages.
"""


class TailcorrError(ValueError):
    code = "tailcorr-error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        return self.message


class DataFileNotFound(TailcorrError):
    code = "file-not-found"


class MalformedRow(TailcorrError):
    code = "malformed-row"

    def __init__(self, message, line=None, **context):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line, **context)
        self.line = line


class EmptySeries(TailcorrError):
    code = "empty-series"


class EmptyIntersection(TailcorrError):
    code = "empty-intersection"


class TooShortSeries(TailcorrError):
    code = "too-short-series"


class DateMismatch(TailcorrError):
    code = "date-mismatch"


class FrequencyMismatch(TailcorrError):
    code = "frequency-mismatch"


class UnsupportedCombination(TailcorrError):
    code = "unsupported-combination"


class InsufficientSample(TailcorrError):
    code = "insufficient-sample"

    def __init__(self, message, grid_point=None, **context):
        super().__init__(message, grid_point=grid_point, **context)
        self.grid_point = grid_point


class MismatchedInputs(TailcorrError):
    code = "mismatched-inputs"


class DegenerateVar(TailcorrError):
    code = "degenerate-var"


class ConstantSeries(TailcorrError):
    code = "constant-series"


class InvalidConfig(TailcorrError):
    code = "invalid-config"
