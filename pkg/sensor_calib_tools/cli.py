"""
Command-line interface for Sensor Calibration Tools.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Allow running this file directly without packaging by setting up sys.path
_THIS_DIR = Path(__file__).resolve().parent
_REPO_ROOT = _THIS_DIR.parent
if str(_THIS_DIR) not in sys.path:
    sys.path.insert(0, str(_THIS_DIR))
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

# Prefer absolute imports; fall back to the package path when run as a script
try:
    from sensor_calib_tools.core.config import CliConfig, parse_sigmas, parse_variants
    from sensor_calib_tools.core.errors import CalibrationError
    from sensor_calib_tools.core.logger import setup_logger
    from sensor_calib_tools.core.pipeline import CalibrationPipeline
except Exception:  # noqa: BLE001 - broad to allow script-mode fallback
    from core.config import CliConfig, parse_sigmas, parse_variants
    from core.errors import CalibrationError
    from core.logger import setup_logger
    from core.pipeline import CalibrationPipeline

EXIT_USAGE = 2


def _sigmas(text: str) -> List[float]:
    try:
        return parse_sigmas(text)
    except CalibrationError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _variants(text: str) -> List[str]:
    try:
        return parse_variants(text)
    except CalibrationError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", type=Path, default=None,
                        help="Output file (default: stdout)")
    common.add_argument("--verbosity", "-v", type=int, choices=[0, 1, 2, 3], default=0,
                        help="Output verbosity level (0=minimal, 1=progress, 2=details, 3=debug)")
    common.add_argument("--log-file", type=Path,
                        help="Log file path")
    return common


def _estimation_options() -> argparse.ArgumentParser:
    estimation = argparse.ArgumentParser(add_help=False)
    estimation.add_argument("--denoise-rank", type=int, default=None,
                            help="Rank of the origin projection used by the hybrid method "
                                 "(default: q+1)")
    estimation.add_argument("--gram-direct-max-n", type=int, default=512,
                            help="Largest sample count for which the n x n Gram matrix is "
                                 "decomposed directly (default: 512)")
    return estimation


def create_parser() -> argparse.ArgumentParser:
    """Create command-line argument parser."""
    common = _common_options()
    estimation = _estimation_options()

    parser = argparse.ArgumentParser(
        prog="sensor-calib",
        description="Sensor Calibration Tools - affine calibration transfer between noisy sensors",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Monte Carlo comparison of the estimators
  sensor-calib simulate --sigmas 1..15:2 --runs 200 --samples 200

  # Same, from an experiment descriptor
  sensor-calib simulate --experiment experiments/table1.yaml --format md

  # Fit a transform and use it
  sensor-calib calibrate --source x.csv --target y.csv --method gw -o t.json
  sensor-calib apply --transform t.json --input x_new.csv

  # Pairwise transfer errors on a gas-sensor board
  sensor-calib evaluate-board --board board.csv --output-dir results/
        """
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    # simulate
    simulate = sub.add_parser("simulate", parents=[common, estimation],
                              help="Monte Carlo error study over a noise grid")
    simulate.add_argument("--experiment", type=Path, default=None,
                          help="YAML experiment descriptor, or a directory of them (command-line options override them)")
    simulate.add_argument("--sigmas", type=_sigmas, default=None,
                          help="Noise grid, e.g. '1..15:2' or '1,5,15'")
    simulate.add_argument("--runs", type=int, default=None,
                          help="Trials per noise level (default: 1000)")
    simulate.add_argument("--samples", type=int, default=None,
                          help="Samples per trial (default: 1000)")
    simulate.add_argument("--methods", type=_variants, default=None,
                          help="'all' or a comma list of gleser-watson,alg1,alg2,alg3")
    simulate.add_argument("--seed", type=int, default=None,
                          help="Master seed (default: $SENSOR_CALIB_SEED or 0)")
    simulate.add_argument("--jobs", type=int, default=None,
                          help="Parallel trial workers (default: auto)")
    simulate.add_argument("--retain-raw", action="store_true",
                          help="Keep per-trial errors in the json report")
    simulate.add_argument("--format", dest="output_format", choices=["csv", "json", "md"], default="csv",
                          help="Report format (default: csv)")

    # calibrate
    calibrate = sub.add_parser("calibrate", parents=[common, estimation],
                               help="Fit a transform from paired sample tables")
    calibrate.add_argument("--source", type=Path, required=True,
                           help="System-1 samples (CSV, one sample per row)")
    calibrate.add_argument("--target", type=Path, required=True,
                           help="System-2 samples, row-aligned with --source")
    calibrate.add_argument("--method", choices=["gw", "ls", "hybrid"], default="gw",
                           help="Estimator (default: gw)")
    denoise = calibrate.add_mutually_exclusive_group()
    denoise.add_argument("--denoise", dest="denoise", action="store_true", default=None,
                         help="Project the origins onto the fitted subspace (gw default)")
    denoise.add_argument("--no-denoise", dest="denoise", action="store_false",
                         help="Keep the raw system-1 samples as origins (gw only)")

    # apply
    apply = sub.add_parser("apply", parents=[common],
                           help="Map samples through a saved transform")
    apply.add_argument("--transform", type=Path, required=True,
                       help="Transform JSON written by calibrate")
    apply.add_argument("--input", type=Path, required=True,
                       help="Samples to map (CSV, one sample per row)")

    # evaluate-board
    board = sub.add_parser("evaluate-board", parents=[common, estimation],
                           help="Pairwise calibration transfer on a sensor board")
    board.add_argument("--board", type=Path, required=True,
                       help="Board recording")
    board.add_argument("--board-format", choices=["csv", "bmerawdata"], default="csv",
                       help="Recording format (default: csv)")
    board.add_argument("--sensors", dest="sensor_count", type=int, default=8,
                       help="Sensors on the board (default: 8)")
    board.add_argument("--methods", type=_variants, default=None,
                       help="'all' or a comma list of gleser-watson,alg1,alg2,alg3")
    board.add_argument("--holdout", dest="holdout_fraction", type=float, default=0.0,
                       help="Fraction of cycles held out for scoring (default: 0, score in sample)")
    board.add_argument("--no-baseline", dest="include_baseline", action="store_false",
                       help="Skip the uncalibrated baseline table")
    board.add_argument("--jobs", type=int, default=None,
                       help="Parallel pair workers (default: auto)")
    board.add_argument("--output-dir", type=Path, default=None,
                       help="Write one table per method plus a summary here")
    board.add_argument("--format", dest="output_format", choices=["csv", "json", "md"], default="csv",
                       help="Report format (default: csv)")

    # normalize
    normalize = sub.add_parser("normalize", parents=[common],
                               help="Feature-wise min-max normalization")
    source = normalize.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path,
                        help="Sample table (CSV, one sample per row)")
    source.add_argument("--board", type=Path,
                        help="Board recording; use with --sensor")
    normalize.add_argument("--sensor", type=int, default=None,
                           help="Sensor id to normalize from --board")
    normalize.add_argument("--board-format", choices=["csv", "bmerawdata"], default="csv",
                           help="Recording format (default: csv)")
    normalize.add_argument("--sensors", dest="sensor_count", type=int, default=8,
                           help="Sensors on the board (default: 8)")
    normalize.add_argument("--bounds-out", type=Path, default=None,
                           help="Write the per-feature bounds as JSON")

    return parser


def build_config(args: argparse.Namespace) -> CliConfig:
    """
    Translate parsed arguments into a CliConfig.

    Raises:
        ContractViolationError: inconsistent option combination
    """
    options = vars(args).copy()
    if "methods" in options:
        options["variants"] = options.pop("methods")
    fields = set(CliConfig.__dataclass_fields__)
    return CliConfig(**{k: v for k, v in options.items() if k in fields})


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)

    try:
        config = build_config(args)
    except CalibrationError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    # Setup logging
    setup_logger(
        log_file=config.log_file,
        verbosity=config.verbosity
    )

    # Create and run pipeline
    pipeline = CalibrationPipeline(config)
    return pipeline.run()


if __name__ == "__main__":
    sys.exit(main())
