"""
Affine transform estimation for Sensor Calibration Tools.
"""

from .augment import apply_transform, augment, deaugment, deaugment_transform
from .estimators import fit_gleser_watson, fit_hybrid, fit_least_squares, fit_variant
from .models import AffineTransform, CalibrationResult, DataMatrix, EstimatorVariant, Method
from .objective import grad_f_bmat, grad_f_theta, objective_f

__all__ = [
    "AffineTransform", "CalibrationResult", "DataMatrix", "EstimatorVariant", "Method",
    "apply_transform", "augment", "deaugment", "deaugment_transform",
    "fit_gleser_watson", "fit_hybrid", "fit_least_squares", "fit_variant",
    "grad_f_bmat", "grad_f_theta", "objective_f",
]
