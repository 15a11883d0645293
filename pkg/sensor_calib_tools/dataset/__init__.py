"""
Gas-sensor board data for Sensor Calibration Tools.
"""

from .board import (
    PairwiseErrorTable, RawRecording, SensorSamples, aggregate, align_cycles, evaluate_board,
    ingest, normalize_featurewise, pairwise_error, synthesize_board,
)

__all__ = [
    "PairwiseErrorTable", "RawRecording", "SensorSamples", "aggregate", "align_cycles",
    "evaluate_board", "ingest", "normalize_featurewise", "pairwise_error", "synthesize_board",
]
