"""
Core functionality for Sensor Calibration Tools.
"""

from .config import CliConfig
from .errors import CalibrationError, InputError, NumericalError
from .logger import setup_logger, get_logger

__all__ = ["CliConfig", "CalibrationError", "InputError", "NumericalError", "setup_logger", "get_logger"]
