"""
Command orchestration for Sensor Calibration Tools.
"""

import sys
import time
from pathlib import Path
from typing import Optional

import pandas as pd

from .config import CliConfig
from .errors import AlignmentError, CalibrationError, ContractViolationError
from .logger import get_logger
from ..dataset.board import aggregate, evaluate_board, ingest, normalize_featurewise, SensorSamples
from ..estimation.augment import apply_transform
from ..estimation.estimators import fit_gleser_watson, fit_hybrid, fit_least_squares
from ..estimation.models import EstimatorVariant
from ..formats.experiments import (
    discover_experiments,
    expand_experiment_variations,
    experiment_to_config,
    load_experiment,
)
from ..formats.tables import read_data_csv, write_data_csv
from ..reporting.generator import ReportGenerator
from ..reporting.storage import dumps, load_transform, save_transform
from ..simulation.montecarlo import McConfig, run_monte_carlo

EXIT_OK = 0
EXIT_NUMERICAL = 3

# Defaults of the standard simulation protocol
DEFAULT_RUNS = 1000
DEFAULT_SAMPLES = 1000


class CalibrationPipeline:
    """Runs one CLI command and maps failures to exit codes."""

    def __init__(self, config: CliConfig):
        """
        Initialize the pipeline with configuration.

        Args:
            config: Configuration object
        """
        self.config = config
        self.logger = get_logger(__name__)
        self.generator = ReportGenerator()

    def run(self) -> int:
        """
        Run the configured command.

        Returns:
            0 on success, 2 for usage and input errors, 3 for numerical errors
        """
        commands = {
            "simulate": self._cmd_simulate,
            "calibrate": self._cmd_calibrate,
            "apply": self._cmd_apply,
            "evaluate-board": self._cmd_evaluate_board,
            "normalize": self._cmd_normalize,
        }
        start_time = time.time()
        try:
            self.config.validate_paths()
        except CalibrationError as e:
            self.logger.error(str(e))
            return e.exit_code

        if self.config.verbosity >= 1:
            self.logger.info(f"Running {self.config.command}")
        try:
            commands[self.config.command]()
        except CalibrationError as e:
            self.logger.error(str(e))
            # Board data and fit problems are reported as model errors
            if self.config.command == "evaluate-board":
                return EXIT_NUMERICAL
            return e.exit_code

        if self.config.verbosity >= 1:
            self.logger.info(f"{self.config.command} finished in {time.time() - start_time:.2f} seconds")
        return EXIT_OK

    def _emit(self, text: str, path: Optional[Path]) -> None:
        """Write command output to a file, or to stdout."""
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        with open(path, "w", newline="") as f:
            f.write(text)
        if self.config.verbosity >= 1:
            self.logger.info(f"Wrote {path}")

    def _simulation_configs(self):
        cfg = self.config
        overrides = {
            "runs": cfg.runs,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "sigmas": cfg.sigmas,
            "denoise_rank": cfg.denoise_rank,
            "jobs": cfg.jobs,
            "gram_direct_max_n": cfg.gram_direct_max_n,
            "retain_raw": cfg.retain_raw or None,
        }
        if cfg.experiment is not None:
            experiments = []
            paths = discover_experiments(cfg.experiment) if cfg.experiment.is_dir() else [cfg.experiment]
            if not paths:
                raise ContractViolationError(f"no experiment descriptors (*.yaml) under {cfg.experiment}")
            for path in paths:
                for desc in load_experiment(path):
                    experiments.extend(expand_experiment_variations(desc))
            if cfg.variants:
                overrides["methods"] = [EstimatorVariant.parse(v) for v in cfg.variants]
            configs = []
            for desc in experiments:
                seed = cfg.seed if cfg.seed is not None or "seed" in desc else cfg.effective_seed
                configs.append((desc["name"], experiment_to_config(desc, **{**overrides, "seed": seed})))
            return configs

        if cfg.sigmas is None:
            raise ContractViolationError("simulate needs --sigmas or --experiment")
        mc = McConfig(
            runs=cfg.runs or DEFAULT_RUNS,
            samples=cfg.samples or DEFAULT_SAMPLES,
            sigmas=cfg.sigmas,
            methods=[EstimatorVariant.parse(v) for v in cfg.selected_variants],
            seed=cfg.effective_seed,
            denoise_rank=cfg.denoise_rank,
            gram_direct_max_n=cfg.gram_direct_max_n,
            retain_raw=cfg.retain_raw,
            jobs=cfg.jobs,
        )
        return [("simulate", mc)]

    def _cmd_simulate(self) -> None:
        runs = self._simulation_configs()
        fmt = self.config.output_format
        reports = []
        for name, mc in runs:
            if self.config.verbosity >= 1:
                self.logger.info(f"Experiment {name}: {mc.runs} runs, n={mc.samples}, "
                                 f"sigmas={mc.sigmas}, methods={[m.value for m in mc.methods]}")
            report = run_monte_carlo(mc)
            if len(runs) > 1:
                report.config["experiment"] = name
            reports.append((name, report))

        if len(reports) == 1:
            self._emit(self.generator.render_error_report(reports[0][1], fmt), self.config.output)
        elif fmt == "json":
            self._emit(dumps({"experiments": [{"name": name, **report.to_dict()}
                                              for name, report in reports]}), self.config.output)
        elif fmt == "csv":
            # One table with an experiment column
            frames = []
            for name, report in reports:
                frame = report.to_frame()
                frame.insert(0, "experiment", name)
                frames.append(frame)
            self._emit(self.generator.render_frame(pd.concat(frames, ignore_index=True)), self.config.output)
        else:
            self._emit("\n".join(f"<!-- {name} -->\n" + self.generator.render_error_report(report, fmt)
                                 for name, report in reports), self.config.output)

    def _cmd_calibrate(self) -> None:
        cfg = self.config
        x, _ = read_data_csv(cfg.source)
        y, _ = read_data_csv(cfg.target)
        if x.n != y.n or x.q != y.q:
            raise AlignmentError(f"source and target are not aligned: {x.n}x{x.q} vs {y.n}x{y.q} "
                                 "(samples x features)")

        if cfg.method == "gw":
            result = fit_gleser_watson(x, y, denoise=cfg.effective_denoise,
                                       gram_direct_max_n=cfg.gram_direct_max_n)
        elif cfg.method == "ls":
            result = fit_least_squares(x, y)
        else:
            result = fit_hybrid(x, y, denoise_rank=cfg.denoise_rank,
                                gram_direct_max_n=cfg.gram_direct_max_n)

        diag = result.diagnostics
        sys.stderr.write(
            f"method={result.method.value} denoise={result.denoise} "
            f"augmentation_row_deviation={diag.get('augmentation_row_deviation', 0.0):.3e} "
            f"gram_condition={diag.get('gram_condition', float('nan')):.3e}\n"
        )
        if cfg.verbosity >= 2:
            self.logger.info(f"Diagnostics: {diag}")
        self._emit(save_transform(result, None), cfg.output)

    def _cmd_apply(self) -> None:
        cfg = self.config
        transform, meta = load_transform(cfg.transform)
        data, columns = read_data_csv(cfg.input, apply_only=True)
        if cfg.verbosity >= 2:
            self.logger.info(f"Applying {meta.get('method') or 'affine'} transform (q={transform.q}) "
                             f"to {data.n} samples")
        mapped = apply_transform(transform, data)
        self._emit(write_data_csv(None, mapped, columns), cfg.output)

    def _load_board(self) -> list:
        cfg = self.config
        recordings = ingest(cfg.board, fmt=cfg.board_format, sensor_count=cfg.sensor_count)
        return [aggregate(rec) for rec in recordings]

    def _cmd_evaluate_board(self) -> None:
        cfg = self.config
        samples = self._load_board()
        dropped = {s.sensor_id: s.incomplete_cycles for s in samples if s.incomplete_cycles}
        if dropped:
            self.logger.warning(f"Incomplete heater cycles dropped per sensor: {dropped}")
        if cfg.verbosity >= 1:
            self.logger.info(f"Board: {len(samples)} sensors, n={[s.n for s in samples]}")

        tables = evaluate_board(
            samples,
            [EstimatorVariant.parse(v) for v in cfg.selected_variants],
            denoise_rank=cfg.denoise_rank,
            holdout_fraction=cfg.holdout_fraction,
            include_baseline=cfg.include_baseline,
            jobs=cfg.jobs,
            gram_direct_max_n=cfg.gram_direct_max_n,
        )
        if cfg.output_dir is not None:
            files = ReportGenerator(cfg.output_dir).generate_board_reports(tables, cfg.output_format)
            if cfg.verbosity >= 1:
                self.logger.info(f"Wrote {len(files)} files to {cfg.output_dir}")
            if cfg.output is None:
                return
        self._emit(self.generator.render_board_summary(tables, cfg.output_format), cfg.output)

    def _cmd_normalize(self) -> None:
        cfg = self.config
        if cfg.board is not None:
            samples = {s.sensor_id: s for s in self._load_board()}
            if cfg.sensor not in samples:
                raise ContractViolationError(f"sensor {cfg.sensor} not found in {cfg.board}")
            sensor = samples[cfg.sensor]
            columns = ["feature_200C", "feature_400C"]
        else:
            data, columns = read_data_csv(cfg.input, apply_only=True)
            sensor = SensorSamples(sensor_id=1, samples=data)

        normalized = normalize_featurewise(sensor)
        if cfg.bounds_out is not None:
            with open(cfg.bounds_out, "w", newline="") as f:
                f.write(dumps({"columns": columns, **normalized.bounds.to_dict()}))
        self._emit(write_data_csv(None, normalized.samples, columns), cfg.output)
