"""
Multi-sensor board pipeline: ingest heater-cycle recordings, aggregate them
into two-feature samples, and evaluate all-pairs calibration transfer.

Canonical input is a CSV (optionally gzip-compressed, detected by extension)
with the header ``sensor_id,timestamp_ms,heater_step,raw_value,label`` and one
row per heater-step reading. A heater cycle has ten steps: steps 1-5 run at
200 °C and steps 6-10 at 400 °C. In timestamp order, a step index that does not
exceed the previous one starts a new cycle.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from ..core.errors import (
    AlignmentError,
    CalibrationError,
    ContractViolationError,
    DataFormatError,
    DegenerateFeatureError,
    EmptyInputError,
    PairwiseFitError,
    UnknownSensorError,
)
from ..core.logger import get_logger
from ..estimation.augment import apply_transform
from ..estimation.estimators import GRAM_DIRECT_MAX_N, fit_variant
from ..estimation.models import AffineTransform, DataMatrix, EstimatorVariant
from ..formats.tables import parse_float_cells
from .bosch import CANONICAL_COLUMNS, convert_bmerawdata

logger = get_logger(__name__)

HEATER_STEPS = 10
LOW_TEMPERATURE_STEPS = 5  # steps 1..5 at 200 °C, the rest at 400 °C
DEFAULT_SENSOR_COUNT = 8
STEP_INTERVAL_MS = 1260
BASELINE = "baseline"

VariantLike = Union[EstimatorVariant, str]
ArrayLikeFloat = Union[Sequence[float], NDArray[np.float64]]


@dataclass(frozen=True, eq=False)
class RawRecording:
    """All heater-step readings of one sensor, in file order."""
    sensor_id: int
    timestamps: NDArray[np.float64]
    heater_steps: NDArray[np.int64]
    raw_values: NDArray[np.float64]
    label: str = ""

    def __post_init__(self):
        if self.sensor_id < 1:
            raise UnknownSensorError(f"sensor id must be >= 1, got {self.sensor_id}")
        steps = np.asarray(self.heater_steps, dtype=np.int64)
        times = np.asarray(self.timestamps, dtype=np.float64)
        values = np.asarray(self.raw_values, dtype=np.float64)
        if not steps.shape == times.shape == values.shape or steps.ndim != 1:
            raise ContractViolationError("recording columns must be 1-D and of equal length")
        if steps.size and (steps.min() < 1 or steps.max() > HEATER_STEPS):
            raise DataFormatError(f"heater step outside 1..{HEATER_STEPS} for sensor {self.sensor_id}")
        object.__setattr__(self, "heater_steps", steps)
        object.__setattr__(self, "timestamps", times)
        object.__setattr__(self, "raw_values", values)

    @property
    def rows(self) -> int:
        return int(self.heater_steps.shape[0])


@dataclass(frozen=True, eq=False)
class FeatureBounds:
    """Per-feature (min, max) used by a min-max normalization."""
    low: NDArray[np.float64]
    high: NDArray[np.float64]

    @property
    def span(self) -> NDArray[np.float64]:
        return self.high - self.low

    def apply(self, data: DataMatrix) -> DataMatrix:
        """Map raw features to the normalized scale."""
        return DataMatrix((data.values - self.low[:, None]) / self.span[:, None],
                          apply_only=data.apply_only)

    def restore(self, data: DataMatrix) -> DataMatrix:
        """Map normalized features back to the raw scale."""
        return DataMatrix(data.values * self.span[:, None] + self.low[:, None],
                          apply_only=data.apply_only)

    def to_dict(self) -> Dict[str, Any]:
        return {"low": self.low.tolist(), "high": self.high.tolist()}


@dataclass(frozen=True, eq=False)
class SensorSamples:
    """
    Aggregated q=2 samples of one sensor, one column per complete heater cycle.

    ``cycle_starts`` holds the timestamp of step 1 of every kept cycle; boards
    use it to pair the cycles of different sensors.
    """
    sensor_id: int
    samples: DataMatrix
    incomplete_cycles: int = 0
    bounds: Optional[FeatureBounds] = None
    label: str = ""
    cycle_starts: Optional[NDArray[np.float64]] = None
    unmatched_cycles: int = 0

    def __post_init__(self):
        if self.cycle_starts is not None:
            starts = np.asarray(self.cycle_starts, dtype=np.float64)
            if starts.shape != (self.samples.n,):
                raise ContractViolationError(
                    f"sensor {self.sensor_id}: {starts.size} cycle starts for {self.samples.n} samples"
                )
            object.__setattr__(self, "cycle_starts", starts)

    @property
    def n(self) -> int:
        return self.samples.n


@dataclass
class PairwiseErrorTable:
    """
    K×K mean transfer errors of one method; row j is the source sensor and
    column k the target. Per-source means are rescaled with the bounds shared
    by every table of one evaluation.
    """
    method: str
    sensor_ids: List[int]
    errors: NDArray[np.float64]
    norm_min: float = 0.0
    norm_max: float = 1.0

    @property
    def per_source(self) -> NDArray[np.float64]:
        """Mean error of each source over all targets, self-pair included."""
        return self.errors.mean(axis=1)

    @property
    def normalized_per_source(self) -> NDArray[np.float64]:
        span = self.norm_max - self.norm_min
        if span == 0.0:
            return np.zeros_like(self.per_source)
        return (self.per_source - self.norm_min) / span

    def denormalize(self, values: ArrayLikeFloat) -> NDArray[np.float64]:
        """Recover raw per-source means from normalized values."""
        return np.asarray(values, dtype=np.float64) * (self.norm_max - self.norm_min) + self.norm_min

    def to_frame(self) -> pd.DataFrame:
        """K×K matrix plus per-source raw and normalized columns, indexed by source."""
        frame = pd.DataFrame(
            self.errors,
            index=pd.Index(self.sensor_ids, name="source"),
            columns=[f"target_{k}" for k in self.sensor_ids],
        )
        frame["per_source"] = self.per_source
        frame["normalized"] = self.normalized_per_source
        return frame

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "method": self.method,
            "sensor_ids": list(self.sensor_ids),
            "errors": self.errors.tolist(),
            "per_source": self.per_source.tolist(),
            "normalized_per_source": self.normalized_per_source.tolist(),
            "norm_min": self.norm_min,
            "norm_max": self.norm_max,
        }


def _read_canonical_csv(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                            skip_blank_lines=False, compression="infer")
    except pd.errors.EmptyDataError as e:
        raise EmptyInputError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise DataFormatError(str(e), path=str(path)) from e
    except (OSError, UnicodeDecodeError) as e:
        raise DataFormatError(f"cannot read file: {e}", path=str(path)) from e

    missing = [c for c in CANONICAL_COLUMNS[:4] if c not in frame.columns]
    if missing:
        raise DataFormatError(f"header lacks columns: {', '.join(missing)}", line=1, path=str(path))
    if "label" not in frame.columns:
        frame["label"] = ""
    # Blank lines keep their index so reported line numbers stay exact
    blank = (frame[CANONICAL_COLUMNS].fillna("") == "").all(axis=1)
    return frame[~blank]


def _validated_columns(frame: pd.DataFrame, path: Path, sensor_count: int,
                       first_line: int) -> Tuple[NDArray, NDArray, NDArray, NDArray, List[str]]:
    numeric = {c: parse_float_cells(frame[c]) for c in CANONICAL_COLUMNS[:4]}
    bad = pd.Series(False, index=frame.index)
    for values in numeric.values():
        bad |= ~np.isfinite(values.astype(float))
    for key in ("sensor_id", "heater_step"):
        bad |= numeric[key].fillna(0.5) % 1 != 0
    if bad.any():
        index = int(bad.idxmax())
        raw = ",".join(str(frame.at[index, c]) for c in CANONICAL_COLUMNS)
        raise DataFormatError(f"malformed row '{raw}'", line=index + first_line, path=str(path))

    steps = numeric["heater_step"].astype(np.int64)
    off_steps = (steps < 1) | (steps > HEATER_STEPS)
    if off_steps.any():
        index = int(off_steps.idxmax())
        raise DataFormatError(f"heater step {steps[index]} outside 1..{HEATER_STEPS}",
                              line=index + first_line, path=str(path))

    sensors = numeric["sensor_id"].astype(np.int64)
    unknown = (sensors < 1) | (sensors > sensor_count)
    if unknown.any():
        index = int(unknown.idxmax())
        raise UnknownSensorError(f"unknown sensor id {sensors[index]} (board has 1..{sensor_count})",
                                 line=index + first_line, path=str(path))

    labels = frame["label"].fillna("").astype(str).tolist()
    return (sensors.to_numpy(), numeric["timestamp_ms"].to_numpy(dtype=np.float64),
            steps.to_numpy(), numeric["raw_value"].to_numpy(dtype=np.float64), labels)


def ingest(path: Union[str, Path], fmt: str = "csv",
           sensor_count: int = DEFAULT_SENSOR_COUNT) -> List[RawRecording]:
    """
    Read a board recording into one RawRecording per sensor.

    Args:
        path: Input file (``.gz`` is decompressed for CSV)
        fmt: "csv" (canonical) or "bmerawdata" (dev-kit export)
        sensor_count: Sensors on the board; valid ids are 1..sensor_count

    Returns:
        Recordings sorted by sensor id

    Raises:
        DataFormatError: malformed row (with its line number) or unreadable file
        UnknownSensorError: a sensor id outside 1..sensor_count
        EmptyInputError: no data rows
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError("file not found", path=str(path))

    if fmt == "csv":
        frame, first_line = _read_canonical_csv(path), 2
    elif fmt == "bmerawdata":
        frame, first_line = convert_bmerawdata(path), 1
    else:
        raise ContractViolationError(f"Unknown board format '{fmt}' (expected csv or bmerawdata)")

    if frame.empty:
        raise EmptyInputError(f"{path}: no data rows")

    sensors, times, steps, values, labels = _validated_columns(frame, path, sensor_count, first_line)

    recordings = []
    for sensor_id in np.unique(sensors):
        mask = sensors == sensor_id
        sensor_labels = [lbl for lbl, m in zip(labels, mask) if m and lbl]
        recording = RawRecording(
            sensor_id=int(sensor_id),
            timestamps=times[mask],
            heater_steps=steps[mask],
            raw_values=values[mask],
            label=sensor_labels[0] if sensor_labels else "",
        )
        logger.info(f"{path.name}: sensor {recording.sensor_id}: {recording.rows} rows")
        recordings.append(recording)
    return recordings


def aggregate(rec: RawRecording) -> SensorSamples:
    """
    Average each complete heater cycle into the sample (mean of the 200 °C
    readings, mean of the 400 °C readings).

    Cycles that do not hold steps 1..10 exactly once are dropped and counted.

    Raises:
        EmptyInputError: the recording has no complete cycle
    """
    order = np.argsort(rec.timestamps, kind="stable")
    times = rec.timestamps[order]
    steps = rec.heater_steps[order]
    values = rec.raw_values[order]
    if steps.size == 0:
        raise EmptyInputError(f"sensor {rec.sensor_id}: recording is empty")

    starts = np.concatenate([[True], steps[1:] <= steps[:-1]])
    cycle_ids = np.cumsum(starts) - 1
    lengths = np.bincount(cycle_ids)
    # Steps rise strictly inside a cycle, so ten readings means steps 1..10
    complete = lengths == HEATER_STEPS
    incomplete = int(np.count_nonzero(~complete))
    if not complete.any():
        raise EmptyInputError(f"sensor {rec.sensor_id}: no complete heater cycle "
                              f"({incomplete} incomplete)")

    keep = complete[cycle_ids]
    cycles = values[keep].reshape(-1, HEATER_STEPS)
    features = np.vstack([
        cycles[:, :LOW_TEMPERATURE_STEPS].mean(axis=1),
        cycles[:, LOW_TEMPERATURE_STEPS:].mean(axis=1),
    ])
    if incomplete:
        logger.info(f"sensor {rec.sensor_id}: dropped {incomplete} incomplete cycle(s)")
    n = features.shape[1]
    return SensorSamples(
        sensor_id=rec.sensor_id,
        samples=DataMatrix(features, apply_only=n < 2 * (features.shape[0] + 1)),
        incomplete_cycles=incomplete,
        label=rec.label,
        cycle_starts=times[starts][complete],
    )


def normalize_featurewise(s: SensorSamples) -> SensorSamples:
    """
    Min-max normalize every feature of one sensor to [0, 1] with that sensor's
    own bounds. Bounds of an earlier normalization are composed, so the result
    always maps back to the raw scale.

    Raises:
        ContractViolationError: fewer than two samples
        DegenerateFeatureError: a feature is constant
    """
    if s.n < 2:
        raise ContractViolationError(f"sensor {s.sensor_id}: normalization needs n >= 2, got {s.n}")
    bounds = FeatureBounds(s.samples.values.min(axis=1), s.samples.values.max(axis=1))
    flat = np.flatnonzero(bounds.span == 0.0)
    if flat.size:
        raise DegenerateFeatureError(f"sensor {s.sensor_id}: feature {int(flat[0]) + 1} is constant")

    if s.bounds is not None:
        bounds_raw = FeatureBounds(s.bounds.low + bounds.low * s.bounds.span,
                                   s.bounds.low + bounds.high * s.bounds.span)
    else:
        bounds_raw = bounds
    return replace(s, samples=bounds.apply(s.samples), bounds=bounds_raw)


def _split(n: int, holdout_fraction: float) -> Tuple[slice, slice]:
    if not 0.0 <= holdout_fraction < 1.0:
        raise ContractViolationError(f"holdout fraction must be in [0, 1), got {holdout_fraction}")
    if holdout_fraction == 0.0:
        return slice(0, n), slice(0, n)
    n_eval = max(1, int(math.ceil(n * holdout_fraction)))
    n_fit = n - n_eval
    return slice(0, n_fit), slice(n_fit, n)


def _as_variant(method: VariantLike) -> EstimatorVariant:
    return method if isinstance(method, EstimatorVariant) else EstimatorVariant.parse(method)


def pairwise_error(
    source: SensorSamples,
    target: SensorSamples,
    method: VariantLike,
    denoise_rank: Optional[int] = None,
    holdout_fraction: float = 0.0,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> float:
    """
    Fit source -> target and return mean_i ‖(Ã x_j(i) + b̃) − y_k(i)‖₂.

    Args:
        source: Sensor j samples
        target: Sensor k samples, time-aligned with source
        method: Estimator variant
        denoise_rank: Passed to the hybrid estimator
        holdout_fraction: Trailing share of samples kept out of the fit and
            used for scoring; 0 fits and scores on all samples

    Raises:
        AlignmentError: source and target differ in n
    """
    if source.n != target.n:
        raise AlignmentError(
            f"sensors {source.sensor_id} and {target.sensor_id} are not aligned "
            f"(n={source.n} vs n={target.n})"
        )
    fit_part, eval_part = _split(source.n, holdout_fraction)
    columns = np.arange(source.n)
    x, y = source.samples, target.samples
    result = fit_variant(_as_variant(method), x.select(columns[fit_part]), y.select(columns[fit_part]),
                         denoise_rank=denoise_rank, gram_direct_max_n=gram_direct_max_n)
    predicted = apply_transform(result.transform, x.select(columns[eval_part]))
    observed = y.values[:, eval_part]
    return float(np.mean(np.linalg.norm(predicted.values - observed, axis=0)))


def _baseline_error(source: SensorSamples, target: SensorSamples, eval_part: slice) -> float:
    diff = source.samples.values[:, eval_part] - target.samples.values[:, eval_part]
    return float(np.mean(np.linalg.norm(diff, axis=0)))


def rescale_tables(tables: List[PairwiseErrorTable]) -> None:
    """Set one shared (min, max) over every table's per-source means."""
    means = np.concatenate([t.per_source for t in tables])
    low, high = float(means.min()), float(means.max())
    for table in tables:
        table.norm_min = low
        table.norm_max = high


def _cycle_period(starts: List[NDArray[np.float64]]) -> float:
    """Typical spacing of consecutive kept cycles; a dropped cycle only adds one long gap."""
    gaps = np.concatenate([np.diff(s) for s in starts])
    gaps = gaps[gaps > 0]
    if gaps.size == 0:
        return float(HEATER_STEPS * STEP_INTERVAL_MS)
    return float(np.median(gaps))


def align_cycles(samples: List[SensorSamples]) -> List[SensorSamples]:
    """
    Pair the heater cycles of every sensor on the board and keep only the
    cycles that are complete on all of them.

    Cycle starts of all sensors are merged in time order; a gap longer than
    half the cycle period opens a new board cycle. Cycles kept on some sensors
    but not on others are dropped and counted in ``unmatched_cycles``.

    Raises:
        AlignmentError: one sensor has two cycles in the same board cycle, no
            board cycle is complete on every sensor, or (without cycle starts)
            the sample counts differ
    """
    if any(s.cycle_starts is None for s in samples):
        counts = {s.sensor_id: s.n for s in samples}
        if len(set(counts.values())) != 1:
            raise AlignmentError(f"sensors are not aligned, sample counts: {counts}")
        return list(samples)

    starts = [s.cycle_starts for s in samples]
    period = _cycle_period(starts)
    merged = np.concatenate(starts)
    owner = np.concatenate([np.full(s.n, k) for k, s in enumerate(samples)])
    column = np.concatenate([np.arange(s.n) for s in samples])
    order = np.argsort(merged, kind="stable")
    board_cycle = np.cumsum(np.concatenate([[0], np.diff(merged[order]) > period / 2]))

    k = len(samples)
    slots = np.full((board_cycle[-1] + 1, k), -1)
    for cycle, sensor, col in zip(board_cycle, owner[order], column[order]):
        if slots[cycle, sensor] >= 0:
            raise AlignmentError(
                f"sensor {samples[sensor].sensor_id}: two heater cycles within half a cycle period "
                f"({period:.0f} ms); cannot pair cycles across sensors"
            )
        slots[cycle, sensor] = col

    shared = slots[(slots >= 0).all(axis=1)]
    if shared.shape[0] == 0:
        raise AlignmentError("no heater cycle is complete on every sensor")

    aligned = []
    for sensor, s in enumerate(samples):
        columns = shared[:, sensor]
        unmatched = s.n - columns.size
        aligned.append(replace(
            s,
            samples=DataMatrix(s.samples.values[:, columns], apply_only=columns.size < 2 * (s.samples.q + 1)),
            cycle_starts=s.cycle_starts[columns],
            unmatched_cycles=s.unmatched_cycles + unmatched,
        ))
    dropped = {s.sensor_id: s.unmatched_cycles for s in aligned if s.unmatched_cycles}
    if dropped:
        logger.warning(f"Cycles missing on another sensor dropped per sensor: {dropped}")
    return aligned


def evaluate_board(
    samples: List[SensorSamples],
    methods: List[VariantLike],
    denoise_rank: Optional[int] = None,
    holdout_fraction: float = 0.0,
    include_baseline: bool = True,
    jobs: int = 1,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> List[PairwiseErrorTable]:
    """
    All-pairs calibration transfer on a board.

    Every sensor is feature-wise normalized first; transforms are fitted and
    scored on the normalized data. Each method yields a K×K table (self-pairs
    included). The baseline table holds the plain distance between normalized
    source and target. Per-source means of all tables are rescaled jointly so
    the smallest maps to 0 and the largest to 1.

    Raises:
        ContractViolationError: fewer than two sensors
        AlignmentError: the cycles of the sensors cannot be paired
        PairwiseFitError: a pair fit failed; carries the (source, target) ids
    """
    if len(samples) < 2:
        raise ContractViolationError(f"board evaluation needs >= 2 sensors, got {len(samples)}")
    normalized = [normalize_featurewise(s) for s in align_cycles(samples)]
    ids = [s.sensor_id for s in normalized]
    k = len(normalized)
    variants = [_as_variant(m) for m in methods]

    def run_pair(variant: EstimatorVariant, j: int, i: int) -> float:
        try:
            return pairwise_error(normalized[j], normalized[i], variant, denoise_rank,
                                  holdout_fraction, gram_direct_max_n)
        except CalibrationError as e:
            raise PairwiseFitError(ids[j], ids[i], variant.value, e) from e

    tables = []
    pairs = [(j, i) for j in range(k) for i in range(k)]
    for variant in variants:
        errors = np.zeros((k, k))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                values = list(pool.map(lambda ji: run_pair(variant, *ji), pairs))
        else:
            values = [run_pair(variant, j, i) for j, i in pairs]
        for (j, i), value in zip(pairs, values):
            errors[j, i] = value
        tables.append(PairwiseErrorTable(method=variant.value, sensor_ids=ids, errors=errors))
        logger.info(f"{variant.value}: per-source mean errors {np.round(tables[-1].per_source, 6).tolist()}")

    if include_baseline:
        _, eval_part = _split(normalized[0].n, holdout_fraction)
        errors = np.array([[_baseline_error(normalized[j], normalized[i], eval_part)
                            for i in range(k)] for j in range(k)])
        tables.append(PairwiseErrorTable(method=BASELINE, sensor_ids=ids, errors=errors))

    rescale_tables(tables)
    return tables


def synthesize_board(
    path: Union[str, Path],
    sensors: int = DEFAULT_SENSOR_COUNT,
    cycles: int = 90,
    noise: float = 0.01,
    seed: int = 0,
    label: str = "synthetic",
) -> List[AffineTransform]:
    """
    Write a canonical board CSV in which every sensor sees one shared base
    signal through its own affine map, plus independent reading noise.

    The base signal gives each cycle a (200 °C, 400 °C) level pair; the ten
    step readings of a cycle scatter around those levels with zero-mean offsets.
    Maps combine a rotation, anisotropic scaling and an offset, so min-max
    normalization alone cannot align the sensors.

    Args:
        path: Output CSV (``.gz`` compresses)
        sensors: Number of sensors K
        cycles: Complete heater cycles per sensor
        noise: Standard deviation of every raw reading
        seed: Generator seed

    Returns:
        The K true maps from base levels to sensor levels
    """
    if sensors < 1 or cycles < 1:
        raise ContractViolationError(f"need sensors >= 1 and cycles >= 1, got {sensors}, {cycles}")
    rng = np.random.default_rng(seed)

    # Exposure rises and falls over the recording; the two temperatures respond differently
    phase = np.linspace(0.0, 2.0 * np.pi, cycles)
    base = np.vstack([
        1.0 + 0.6 * np.sin(phase) + 0.2 * rng.standard_normal(cycles),
        1.5 + 0.4 * np.cos(1.5 * phase) + 0.2 * rng.standard_normal(cycles),
    ])
    step_shape = np.array([0.04, 0.02, 0.0, -0.02, -0.04])
    angles = rng.permutation(np.linspace(-0.8, 0.8, sensors)) + 0.05 * rng.standard_normal(sensors)

    maps = []
    frames = []
    for s in range(sensors):
        c, si = np.cos(angles[s]), np.sin(angles[s])
        rotation = np.array([[c, -si], [si, c]])
        a = rotation @ np.diag(rng.uniform(0.6, 1.4, size=2))
        b = rng.uniform(-0.5, 0.5, size=2)
        maps.append(AffineTransform(a, b))
        levels = a @ base + b[:, None]

        readings = np.empty((cycles, HEATER_STEPS))
        readings[:, :LOW_TEMPERATURE_STEPS] = levels[0][:, None] + step_shape
        readings[:, LOW_TEMPERATURE_STEPS:] = levels[1][:, None] + step_shape
        readings += noise * rng.standard_normal(readings.shape)

        starts = np.arange(cycles) * HEATER_STEPS * STEP_INTERVAL_MS + 37 * s
        times = starts[:, None] + np.arange(HEATER_STEPS) * STEP_INTERVAL_MS
        frames.append(pd.DataFrame({
            "sensor_id": s + 1,
            "timestamp_ms": times.reshape(-1),
            "heater_step": np.tile(np.arange(1, HEATER_STEPS + 1), cycles),
            "raw_value": readings.reshape(-1),
            "label": label,
        }))

    board = pd.concat(frames, ignore_index=True)
    board.to_csv(path, index=False, float_format="%.17g", compression="infer")
    logger.info(f"Wrote synthetic board: {sensors} sensors x {cycles} cycles to {path}")
    return maps
