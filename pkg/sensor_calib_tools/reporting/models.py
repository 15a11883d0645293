"""
Data models for error reporting.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from ..core.errors import ContractViolationError

# Column order of the per-(sigma, method) CSV
REPORT_COLUMNS = ["sigma", "method", "mean_ex", "mean_ey", "std_ex", "std_ey", "skips"]


def _json_float(value: float) -> Optional[float]:
    """NaN (no completed trial) is stored as null."""
    return None if math.isnan(value) else float(value)


@dataclass
class MethodErrors:
    """Aggregated errors of one estimator variant at one noise level."""
    sigma: float
    method: str
    mean_ex: float
    mean_ey: float
    std_ex: float
    std_ey: float
    runs: int  # trials that completed
    skips: int  # trials aborted by a singular fit
    raw_ex: Optional[List[float]] = None
    raw_ey: Optional[List[float]] = None

    @property
    def stderr_ey(self) -> float:
        """Standard error of mean_ey."""
        return self.std_ey / math.sqrt(self.runs) if self.runs > 0 else float("nan")

    def to_row(self) -> Dict[str, Any]:
        """One CSV row, keyed by REPORT_COLUMNS."""
        return {
            "sigma": self.sigma,
            "method": self.method,
            "mean_ex": self.mean_ex,
            "mean_ey": self.mean_ey,
            "std_ex": self.std_ex,
            "std_ey": self.std_ey,
            "skips": self.skips,
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        data = {
            "sigma": self.sigma,
            "method": self.method,
            "mean_ex": _json_float(self.mean_ex),
            "mean_ey": _json_float(self.mean_ey),
            "std_ex": _json_float(self.std_ex),
            "std_ey": _json_float(self.std_ey),
            "runs": self.runs,
            "skips": self.skips,
        }
        if self.raw_ex is not None:
            data["raw_ex"] = [_json_float(v) for v in self.raw_ex]
            data["raw_ey"] = [_json_float(v) for v in (self.raw_ey or [])]
        return data


@dataclass
class ErrorReport:
    """
    Monte Carlo error report: one MethodErrors entry per (sigma, method).

    The report carries no timestamps, so identical configurations give
    identical serialized reports.
    """
    config: Dict[str, Any]
    entries: List[MethodErrors] = field(default_factory=list)
    total_skips: int = 0

    def __post_init__(self):
        """Calculate derived fields after initialization."""
        self.total_skips = sum(e.skips for e in self.entries)

    @property
    def sigmas(self) -> List[float]:
        return sorted({e.sigma for e in self.entries})

    @property
    def methods(self) -> List[str]:
        seen: List[str] = []
        for entry in self.entries:
            if entry.method not in seen:
                seen.append(entry.method)
        return seen

    def get(self, sigma: float, method: str) -> MethodErrors:
        """Look up the entry for one (sigma, method) pair."""
        for entry in self.entries:
            if entry.sigma == sigma and entry.method == method:
                return entry
        raise ContractViolationError(f"No report entry for sigma={sigma}, method={method}")

    def to_frame(self) -> pd.DataFrame:
        """Tabular view with the CSV column order."""
        return pd.DataFrame([e.to_row() for e in self.entries], columns=REPORT_COLUMNS)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "config": self.config,
            "total_skips": self.total_skips,
            "entries": [e.to_dict() for e in self.entries],
        }
