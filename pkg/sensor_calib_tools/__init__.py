"""
Sensor Calibration Tools Package

Affine calibration transfer between sensors observing the same signal with
noise on both sides: Gleser-Watson, least-squares and hybrid estimators,
a Monte Carlo harness and a gas-sensor board evaluation.
"""

__version__ = "1.0.0"
__author__ = "Sensor Calibration Tools Team"

from .core.pipeline import CalibrationPipeline

__all__ = [
    "CalibrationPipeline",
]
