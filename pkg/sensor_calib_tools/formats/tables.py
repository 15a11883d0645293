"""
Sample-table CSV files: one sample per row, one feature per column, header
required. The in-memory layout is the transpose (one sample per column).
"""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..core.errors import DataFormatError, EmptyInputError
from ..estimation.models import DataMatrix

FLOAT_FORMAT = "%.17g"


def _looks_numeric(name: str) -> bool:
    try:
        float(name)
    except ValueError:
        return False
    return True


def _cell_to_float(cell: str) -> float:
    try:
        return float(cell)
    except (TypeError, ValueError):
        return float("nan")


def parse_float_cells(cells: pd.Series) -> pd.Series:
    """
    Convert text cells to float64 with correctly rounded decimal parsing, so
    values written with ``%.17g`` read back bit for bit. Unparsable cells
    become NaN.
    """
    return cells.map(_cell_to_float).astype(np.float64)


def read_data_csv(path: Union[str, Path], apply_only: bool = False) -> Tuple[DataMatrix, List[str]]:
    """
    Read a sample table.

    Args:
        path: CSV file (``.gz`` is decompressed)
        apply_only: Skip the n >= 2(q+1) estimation bound

    Returns:
        (data, column names)

    Raises:
        EmptyInputError: no header or no rows
        DataFormatError: missing header or a non-numeric cell (with its line)
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, compression="infer")
    except pd.errors.EmptyDataError as e:
        raise EmptyInputError(f"{path}: file is empty") from e
    except pd.errors.ParserError as e:
        raise DataFormatError(str(e), path=str(path)) from e
    except (OSError, UnicodeDecodeError) as e:
        raise DataFormatError(f"cannot read file: {e}", path=str(path)) from e

    columns = [str(c) for c in frame.columns]
    if any(_looks_numeric(c) for c in columns):
        raise DataFormatError("header row required (first row is numeric)", line=1, path=str(path))
    if frame.empty:
        raise EmptyInputError(f"{path}: no data rows")

    numeric = frame.apply(parse_float_cells)
    bad = ~np.isfinite(numeric.to_numpy()).all(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise DataFormatError(f"non-numeric or non-finite value in '{','.join(frame.iloc[row].astype(str))}'",
                              line=row + 2, path=str(path))

    data = DataMatrix.from_samples(numeric.to_numpy(dtype=np.float64), apply_only=apply_only)
    return data, columns


def write_data_csv(path: Optional[Union[str, Path]], data: DataMatrix,
                   columns: Optional[Sequence[str]] = None) -> str:
    """
    Write a sample table with full-precision floats.

    Args:
        path: Output file, or None to only return the text
        data: Samples to write
        columns: Header names, default f1..fq

    Returns:
        The CSV text
    """
    names = list(columns) if columns is not None else [f"f{i + 1}" for i in range(data.q)]
    frame = pd.DataFrame(data.to_samples(), columns=names)
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if path is not None:
        with open(path, "w", newline="") as f:
            f.write(text)
    return text
