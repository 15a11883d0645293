"""
Monte Carlo evaluation for Sensor Calibration Tools.
"""

from .montecarlo import (
    McConfig, NoiseSpec, add_noise, error_ex, error_ey, generate_origins, run_monte_carlo,
)

__all__ = ["McConfig", "NoiseSpec", "add_noise", "error_ex", "error_ey", "generate_origins", "run_monte_carlo"]
