"""
Monte Carlo harness for the affine estimators.

Each trial draws true origins Θ, forms X = Θ + M and Y = AΘ + b + N with
isotropic Gaussian M, N, fits every requested estimator variant and records

    e_x = mean_i ‖θ̃_i − θ_i‖₂          e_y = mean_i ‖(Ãθ̃_i + b̃) − (Aθ_i + b)‖₂

Seeding: trial t uses ``SeedSequence(seed, spawn_key=(t, stream))`` with
stream 0 for origins, 1 for the noise on X and 2 for the noise on Y. The same
draws are scaled by every sigma and shared by every variant, so variants that
share origin estimates report identical e_x trial for trial, and any single
trial can be replayed in isolation.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.errors import ContractViolationError, NumericalError
from ..core.logger import get_logger, raised_level
from ..estimation.augment import apply_transform
from ..estimation.estimators import GRAM_DIRECT_MAX_N, fit_variant
from ..estimation.models import AffineTransform, CalibrationResult, DataMatrix, EstimatorVariant, same_shape
from ..reporting.models import ErrorReport, MethodErrors

logger = get_logger(__name__)

ESTIMATION_LOGGER = "sensor_calib_tools.estimation"

STREAM_ORIGINS = 0
STREAM_NOISE_X = 1
STREAM_NOISE_Y = 2


def reference_transform() -> AffineTransform:
    """The fixed 2-D transform used by the standard simulation protocol."""
    return AffineTransform(
        np.array([[0.3430, 0.3430], [0.1715, 0.8575]]),
        np.array([52.0, -58.0]),
    )


def trial_seed(seed: int, trial: int, stream: int) -> int:
    """64-bit seed of one (trial, stream) substream of the master seed."""
    sequence = np.random.SeedSequence(seed, spawn_key=(trial, stream))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class NoiseSpec:
    """Isotropic Gaussian noise N(0, σ²I) with its own seed."""
    sigma: float
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ContractViolationError(f"sigma must be finite and >= 0, got {self.sigma}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ContractViolationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def generate_origins(n: int, q: int, seed: int, low: float = 0.0, high: float = 100.0) -> DataMatrix:
    """
    Draw n origins uniformly from the box [low, high]^q.

    Args:
        n: Number of samples
        q: Feature dimension
        seed: Generator seed
        low: Lower box edge
        high: Upper box edge

    Returns:
        q×n DataMatrix, deterministic given the arguments
    """
    if n < 1 or q < 1:
        raise ContractViolationError(f"n and q must be >= 1, got n={n}, q={q}")
    if not high > low:
        raise ContractViolationError(f"Origin box needs high > low, got [{low}, {high}]")
    rng = np.random.default_rng(seed)
    values = rng.uniform(low, high, size=(q, n))
    return DataMatrix(values, apply_only=n < 2 * (q + 1))


def add_noise(data: DataMatrix, spec: NoiseSpec) -> DataMatrix:
    """Return data + E with E i.i.d. N(0, σ²) per element."""
    rng = np.random.default_rng(spec.seed)
    noise = rng.standard_normal(data.values.shape)
    return DataMatrix(data.values + spec.sigma * noise, apply_only=data.apply_only)


def _mean_distance(first: np.ndarray, second: np.ndarray) -> float:
    return float(np.mean(np.linalg.norm(first - second, axis=0)))


def error_ey(result: CalibrationResult, origins: DataMatrix, truth: AffineTransform) -> float:
    """
    Mean distance between the estimated and the true images of the origins.

    Raises:
        ShapeMismatchError: estimated and true origins differ in shape, or the
            transforms do not match the data dimension
    """
    same_shape(result.theta_e.values, origins.values, "estimated vs true origins")
    estimated = apply_transform(result.transform, result.theta_e)
    expected = apply_transform(truth, origins)
    return _mean_distance(estimated.values, expected.values)


def error_ex(theta_est: DataMatrix, theta_true: DataMatrix) -> float:
    """Mean distance between estimated and true origins."""
    same_shape(theta_est.values, theta_true.values, "estimated vs true origins")
    return _mean_distance(theta_est.values, theta_true.values)


def _default_sigmas() -> List[float]:
    return [float(s) for s in range(1, 16, 2)]


@dataclass
class McConfig:
    """Configuration of one Monte Carlo experiment."""

    runs: int = 1000
    samples: int = 1000
    dim: int = 2
    transform: AffineTransform = field(default_factory=reference_transform)
    sigmas: List[float] = field(default_factory=_default_sigmas)
    methods: List[EstimatorVariant] = field(default_factory=lambda: list(EstimatorVariant))
    seed: int = 0

    # Origin box
    box_low: float = 0.0
    box_high: float = 100.0

    # Estimator options
    denoise_rank: Optional[int] = None
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N

    # Execution
    retain_raw: bool = False
    jobs: Optional[int] = 1

    def __post_init__(self):
        """Post-initialization validation."""
        if self.runs < 1:
            raise ContractViolationError(f"runs must be >= 1, got {self.runs}")
        if self.dim < 1:
            raise ContractViolationError(f"dim must be >= 1, got {self.dim}")
        if self.samples < 2 * (self.dim + 1):
            raise ContractViolationError(
                f"samples must be >= 2(q+1) = {2 * (self.dim + 1)}, got {self.samples}"
            )
        if self.transform.q != self.dim:
            raise ContractViolationError(
                f"transform dimension {self.transform.q} does not match dim {self.dim}"
            )
        if not self.sigmas:
            raise ContractViolationError("sigma grid is empty")
        for sigma in self.sigmas:
            NoiseSpec(sigma, 0)
        if not self.methods:
            raise ContractViolationError("no estimator variants selected")
        self.methods = [m if isinstance(m, EstimatorVariant) else EstimatorVariant.parse(m)
                        for m in self.methods]
        if not self.box_high > self.box_low:
            raise ContractViolationError(f"origin box needs high > low, got [{self.box_low}, {self.box_high}]")
        if self.seed < 0:
            raise ContractViolationError(f"seed must be >= 0, got {self.seed}")

        # Set default jobs to CPU count
        if self.jobs is None:
            self.jobs = os.cpu_count() or 4

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return {
            "runs": self.runs,
            "samples": self.samples,
            "dim": self.dim,
            "transform": self.transform.to_dict(),
            "sigmas": [float(s) for s in self.sigmas],
            "methods": [m.value for m in self.methods],
            "seed": self.seed,
            "box_low": self.box_low,
            "box_high": self.box_high,
            "denoise_rank": self.denoise_rank,
            "gram_direct_max_n": self.gram_direct_max_n,
            "retain_raw": self.retain_raw,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "McConfig":
        """Create configuration from dictionary."""
        data = dict(data)
        if "transform" in data and isinstance(data["transform"], dict):
            data["transform"] = AffineTransform.from_dict(data["transform"])
        if "methods" in data:
            data["methods"] = [EstimatorVariant.parse(m) if isinstance(m, str) else m
                               for m in data["methods"]]
        return cls(**data)


def _aggregate(values: np.ndarray) -> Dict[str, float]:
    done = values[~np.isnan(values)]
    if done.size == 0:
        return {"mean": float("nan"), "std": float("nan")}
    std = float(np.std(done, ddof=1)) if done.size > 1 else 0.0
    return {"mean": float(np.mean(done)), "std": std}


def run_monte_carlo(cfg: McConfig) -> ErrorReport:
    """
    Run the Monte Carlo protocol described by ``cfg``.

    Trials run on ``cfg.jobs`` threads and write into per-trial slots, so the
    report is bitwise identical for any degree of parallelism. A trial whose
    fit hits a numerical error is recorded as skipped for that (sigma, method)
    and never replaced.

    Returns:
        ErrorReport with one entry per (sigma, method), sigma-major
    """
    sigmas = [float(s) for s in cfg.sigmas]
    variants = list(cfg.methods)
    shape = (len(sigmas), len(variants), cfg.runs)
    ex = np.full(shape, np.nan)
    ey = np.full(shape, np.nan)

    def trial(t: int) -> None:
        origins = generate_origins(cfg.samples, cfg.dim, trial_seed(cfg.seed, t, STREAM_ORIGINS),
                                   cfg.box_low, cfg.box_high)
        clean_y = apply_transform(cfg.transform, origins)
        seed_x = trial_seed(cfg.seed, t, STREAM_NOISE_X)
        seed_y = trial_seed(cfg.seed, t, STREAM_NOISE_Y)
        for si, sigma in enumerate(sigmas):
            x = add_noise(origins, NoiseSpec(sigma, seed_x))
            y = add_noise(clean_y, NoiseSpec(sigma, seed_y))
            for vi, variant in enumerate(variants):
                try:
                    result = fit_variant(variant, x, y, denoise_rank=cfg.denoise_rank,
                                         gram_direct_max_n=cfg.gram_direct_max_n)
                except NumericalError as e:
                    logger.debug(f"trial {t}, sigma {sigma}, {variant.value} skipped: {e}")
                    continue
                ex[si, vi, t] = error_ex(result.theta_e, origins)
                ey[si, vi, t] = error_ey(result, origins, cfg.transform)

    logger.info(f"Running {cfg.runs} trials x {len(sigmas)} sigmas x {len(variants)} methods "
                f"(n={cfg.samples}, q={cfg.dim}, jobs={cfg.jobs})")

    # Thousands of fits: per-fit warnings are folded into the skip counts
    with raised_level(ESTIMATION_LOGGER):
        if cfg.jobs == 1:
            for t in range(cfg.runs):
                trial(t)
        else:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                list(pool.map(trial, range(cfg.runs)))

    entries = []
    for si, sigma in enumerate(sigmas):
        for vi, variant in enumerate(variants):
            stats_x = _aggregate(ex[si, vi])
            stats_y = _aggregate(ey[si, vi])
            skips = int(np.count_nonzero(np.isnan(ex[si, vi])))
            entries.append(MethodErrors(
                sigma=sigma,
                method=variant.value,
                mean_ex=stats_x["mean"],
                mean_ey=stats_y["mean"],
                std_ex=stats_x["std"],
                std_ey=stats_y["std"],
                runs=cfg.runs - skips,
                skips=skips,
                raw_ex=ex[si, vi].tolist() if cfg.retain_raw else None,
                raw_ey=ey[si, vi].tolist() if cfg.retain_raw else None,
            ))
            if skips:
                logger.warning(f"sigma {sigma}, {variant.value}: {skips} of {cfg.runs} trials skipped")

    report = ErrorReport(config=cfg.to_dict(), entries=entries)
    logger.info(f"Monte Carlo finished: {len(entries)} entries, {report.total_skips} skipped trials")
    return report
