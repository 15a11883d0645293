"""
Configuration management for Sensor Calibration Tools.
"""

import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from .errors import ContractViolationError

SEED_ENV_VAR = "SENSOR_CALIB_SEED"

COMMANDS = ("simulate", "calibrate", "apply", "evaluate-board", "normalize")
OUTPUT_FORMATS = ("csv", "json", "md")
METHODS = ("gw", "ls", "hybrid")
VARIANT_NAMES = ("gleser-watson", "alg1", "alg2", "alg3")

_RANGE = re.compile(r"^\s*(-?[\d.eE+-]+)\s*\.\.\s*(-?[\d.eE+-]+)\s*(?::\s*([\d.eE+-]+))?\s*$")


def default_seed() -> int:
    """Seed from SENSOR_CALIB_SEED, else 0."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 0
    try:
        seed = int(raw)
    except ValueError as e:
        raise ContractViolationError(f"{SEED_ENV_VAR} must be an integer, got '{raw}'") from e
    if seed < 0:
        raise ContractViolationError(f"{SEED_ENV_VAR} must be >= 0, got {seed}")
    return seed


def parse_sigmas(text: str) -> List[float]:
    """
    Parse a sigma grid.

    Accepts a comma list ("0.5,1,2"), an inclusive range with unit step
    ("1..15") or with an explicit step ("1..15:2"), and combinations of them
    ("0,1..3").

    Raises:
        ContractViolationError: empty, malformed, negative or non-finite entries
    """
    sigmas: List[float] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        match = _RANGE.match(part)
        try:
            if match:
                start, stop = float(match.group(1)), float(match.group(2))
                step = float(match.group(3)) if match.group(3) else 1.0
                if step <= 0 or stop < start:
                    raise ContractViolationError(f"Invalid sigma range '{part}'")
                count = int(round((stop - start) / step))
                sigmas.extend(start + i * step for i in range(count + 1)
                              if start + i * step <= stop + 1e-9)
            else:
                sigmas.append(float(part))
        except ValueError as e:
            raise ContractViolationError(f"Invalid sigma '{part}'") from e
    if not sigmas:
        raise ContractViolationError(f"Empty sigma grid '{text}'")
    for sigma in sigmas:
        if not sigma >= 0 or sigma == float("inf"):
            raise ContractViolationError(f"Sigma must be finite and >= 0, got {sigma}")
    return sigmas


def parse_variants(text: str) -> List[str]:
    """Parse ``all`` or a comma list of variant names into canonical names."""
    if str(text).strip().lower() == "all":
        return list(VARIANT_NAMES)
    names = [p.strip().lower() for p in str(text).split(",") if p.strip()]
    if not names:
        raise ContractViolationError("No estimator variants given")
    for name in names:
        if name not in VARIANT_NAMES:
            raise ContractViolationError(
                f"Unknown estimator variant '{name}' (expected all or: {', '.join(VARIANT_NAMES)})"
            )
    return names


@dataclass
class CliConfig:
    """Configuration of one command-line invocation."""

    command: str = "simulate"

    # Input / output paths
    source: Optional[Path] = None       # calibrate: system-1 data
    target: Optional[Path] = None       # calibrate: system-2 data
    input: Optional[Path] = None        # apply / normalize: data to process
    transform: Optional[Path] = None    # apply: transform document
    board: Optional[Path] = None        # evaluate-board / normalize: board recording
    experiment: Optional[Path] = None   # simulate: experiment descriptor
    output: Optional[Path] = None       # None writes to stdout
    output_dir: Optional[Path] = None   # evaluate-board: one file per table
    bounds_out: Optional[Path] = None   # normalize: bounds document

    # Estimation
    method: str = "gw"
    variants: Optional[List[str]] = None  # None selects every variant
    denoise: Optional[bool] = None      # None means the method's default
    denoise_rank: Optional[int] = None
    gram_direct_max_n: int = 512

    # Simulation
    sigmas: Optional[List[float]] = None
    runs: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    retain_raw: bool = False

    # Board
    board_format: str = "csv"
    sensor_count: int = 8
    sensor: Optional[int] = None
    holdout_fraction: float = 0.0
    include_baseline: bool = True

    # General
    output_format: str = "csv"
    jobs: Optional[int] = None
    verbosity: int = 0  # 0=minimal, 1=progress, 2=details, 3=debug
    log_file: Optional[Path] = None

    def __post_init__(self):
        """Post-initialization processing."""
        for name in ("source", "target", "input", "transform", "board", "experiment",
                     "output", "output_dir", "bounds_out", "log_file"):
            value = getattr(self, name)
            if isinstance(value, str):
                setattr(self, name, Path(value))

        if self.command not in COMMANDS:
            raise ContractViolationError(f"Unknown command '{self.command}'")
        if not 0 <= self.verbosity <= 3:
            raise ContractViolationError(f"verbosity must be between 0 and 3, got {self.verbosity}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ContractViolationError(f"Unknown output format '{self.output_format}'")
        if self.method not in METHODS:
            raise ContractViolationError(f"Unknown method '{self.method}' (expected one of {METHODS})")

        # Options that only make sense for some methods
        if self.denoise is not None and self.method != "gw":
            raise ContractViolationError("--denoise/--no-denoise apply to --method gw only")
        if self.denoise_rank is not None and self.command == "calibrate" and self.method != "hybrid":
            raise ContractViolationError("--denoise-rank applies to --method hybrid only")
        if self.denoise_rank is not None and self.denoise_rank < 1:
            raise ContractViolationError(f"denoise rank must be >= 1, got {self.denoise_rank}")

        if self.runs is not None and self.runs < 1:
            raise ContractViolationError(f"runs must be >= 1, got {self.runs}")
        if self.samples is not None and self.samples < 1:
            raise ContractViolationError(f"samples must be >= 1, got {self.samples}")
        default_seed()  # rejects a malformed SENSOR_CALIB_SEED early
        if self.seed is not None and self.seed < 0:
            raise ContractViolationError(f"seed must be >= 0, got {self.seed}")
        if not 0.0 <= self.holdout_fraction < 1.0:
            raise ContractViolationError(f"holdout fraction must be in [0, 1), got {self.holdout_fraction}")
        if self.sensor_count < 1:
            raise ContractViolationError(f"sensor count must be >= 1, got {self.sensor_count}")
        if self.gram_direct_max_n < 0:
            raise ContractViolationError("gram-direct-max-n must be >= 0")

        # Set default jobs to CPU count
        if self.jobs is None:
            self.jobs = os.cpu_count() or 4
        if self.jobs < 1:
            raise ContractViolationError(f"jobs must be >= 1, got {self.jobs}")

    @property
    def effective_seed(self) -> int:
        """Explicit seed, else SENSOR_CALIB_SEED, else 0."""
        return self.seed if self.seed is not None else default_seed()

    @property
    def selected_variants(self) -> List[str]:
        return list(self.variants) if self.variants else list(VARIANT_NAMES)

    @property
    def effective_denoise(self) -> bool:
        """Denoising is on by default for the Gleser-Watson method."""
        return True if self.denoise is None else self.denoise

    def required_inputs(self) -> Dict[str, Optional[Path]]:
        """Input paths the current command needs, by option name."""
        if self.command == "calibrate":
            return {"--source": self.source, "--target": self.target}
        if self.command == "apply":
            return {"--transform": self.transform, "--input": self.input}
        if self.command == "evaluate-board":
            return {"--board": self.board}
        if self.command == "normalize":
            return {"--board": self.board} if self.board is not None else {"--input": self.input}
        if self.experiment is not None:
            return {"--experiment": self.experiment}
        return {}

    def validate_paths(self) -> None:
        """
        Check every required input exists before any work starts.

        Raises:
            ContractViolationError: a required path is missing or absent on disk
        """
        for option, path in self.required_inputs().items():
            if path is None:
                raise ContractViolationError(f"{self.command} requires {option}")
            if not path.is_file():
                raise ContractViolationError(f"{option}: file not found: {path}")
        if self.command == "normalize" and self.board is not None and self.sensor is None:
            raise ContractViolationError("normalize --board requires --sensor")

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        data: Dict[str, Any] = {}
        for key, value in self.__dict__.items():
            data[key] = str(value) if isinstance(value, Path) else value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CliConfig":
        """Create configuration from dictionary."""
        return cls(**data)
