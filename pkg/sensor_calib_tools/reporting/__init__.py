"""
Reporting and storage for Sensor Calibration Tools.
"""

from .generator import ReportGenerator
from .models import ErrorReport, MethodErrors

__all__ = ["ReportGenerator", "ErrorReport", "MethodErrors"]
