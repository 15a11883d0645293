"""
Dense symmetric linear algebra for Sensor Calibration Tools.
"""

from .kernel import EigenResult, solve_spd, sym_eig, top_k_eigvecs

__all__ = ["EigenResult", "solve_spd", "sym_eig", "top_k_eigvecs"]
