"""
Exception hierarchy for Sensor Calibration Tools.

Every error carries the process exit code the CLI reports for it:
2 for usage and input problems, 3 for numerical and model problems.
"""

from typing import Optional


class CalibrationError(Exception):
    """Base class for all sensor_calib_tools errors."""

    exit_code: int = 1


class InputError(CalibrationError, ValueError):
    """Invalid arguments, shapes or input files."""

    exit_code = 2


class NumericalError(CalibrationError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result."""

    exit_code = 3


class ContractViolationError(InputError):
    """An argument violates the documented precondition of an operation."""


class ShapeMismatchError(InputError):
    """Matrix or data shapes do not agree."""


class AlignmentError(InputError):
    """Two sensors' sample sets are not time-aligned (different n)."""


class DataFormatError(InputError):
    """A data file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        location = ""
        if path is not None:
            location += f"{path}"
        if line is not None:
            location += f":{line}" if location else f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)
        self.line = line
        self.path = path


class EmptyInputError(InputError):
    """An input file or recording holds no usable data."""


class UnknownSensorError(DataFormatError):
    """A sensor id outside the configured board range was found."""


class DegenerateFeatureError(InputError):
    """A feature is constant, so it cannot be min-max normalized."""


class SingularMatrixError(NumericalError):
    """A Gram matrix is singular or indefinite at the Cholesky pivot threshold."""

    def __init__(self, message: str, pivot_index: int, pivot: float):
        super().__init__(f"{message} (pivot {pivot_index} = {pivot:.3e})")
        self.pivot_index = pivot_index
        self.pivot = pivot


class ConvergenceError(NumericalError):
    """An iterative routine hit its iteration cap."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class PairwiseFitError(CalibrationError):
    """A source-to-target fit failed during a board evaluation."""

    def __init__(self, source: int, target: int, method: str, cause: CalibrationError):
        super().__init__(f"sensor {source} -> sensor {target} ({method}): {cause}")
        self.source = source
        self.target = target
        self.method = method
        self.exit_code = cause.exit_code
