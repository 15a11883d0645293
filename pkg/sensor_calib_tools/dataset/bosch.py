"""
Converter for BME688 development-kit exports (``.bmerawdata``).

The export is a JSON document whose ``rawDataBody`` holds a column list
(``dataColumns``, each with a ``name`` and a 1-based ``colId``) and the rows
(``dataBlock``). Sensor and heater-step indices are 0-based in the export and
1-based in the canonical board format.
"""

import json
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

from ..core.errors import DataFormatError, EmptyInputError
from ..core.logger import get_logger

logger = get_logger(__name__)

CANONICAL_COLUMNS = ["sensor_id", "timestamp_ms", "heater_step", "raw_value", "label"]

# Export column name -> canonical column
EXPORT_COLUMNS = {
    "Sensor Index": "sensor_id",
    "Time Since PowerOn": "timestamp_ms",
    "Heater Profile Step Index": "heater_step",
    "Resistance Gassensor": "raw_value",
    "Label Tag": "label",
}
ZERO_BASED = ("sensor_id", "heater_step")


def _column_positions(columns: List[Dict[str, Any]], path: Path) -> Dict[str, int]:
    positions = {}
    for order, column in enumerate(columns):
        name = column.get("name")
        if name in EXPORT_COLUMNS:
            positions[EXPORT_COLUMNS[name]] = int(column.get("colId", order + 1)) - 1
    missing = [name for name, key in EXPORT_COLUMNS.items()
               if key not in positions and key != "label"]
    if missing:
        raise DataFormatError(f"export lacks columns: {', '.join(missing)}", path=str(path))
    return positions


def convert_bmerawdata(path: Path) -> pd.DataFrame:
    """
    Convert a ``.bmerawdata`` export into canonical board rows.

    Args:
        path: Export file

    Returns:
        DataFrame with CANONICAL_COLUMNS as strings, one row per data-block row

    Raises:
        DataFormatError: invalid JSON or missing columns
        EmptyInputError: the data block is empty
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            document = json.load(f)
        body = document["rawDataBody"]
        columns = body["dataColumns"]
        block = body["dataBlock"]
    except json.JSONDecodeError as e:
        raise DataFormatError(f"invalid JSON: {e.msg}", line=e.lineno, path=str(path)) from e
    except (KeyError, TypeError) as e:
        raise DataFormatError(f"not a bmerawdata export (missing {e})", path=str(path)) from e

    if not block:
        raise EmptyInputError(f"{path}: export holds no data rows")

    positions = _column_positions(columns, path)
    rows = []
    for index, entry in enumerate(block):
        try:
            row = {key: entry[pos] for key, pos in positions.items()}
        except (IndexError, TypeError) as e:
            raise DataFormatError(f"short data row: {e}", line=index + 1, path=str(path)) from e
        for key in ZERO_BASED:
            try:
                row[key] = int(row[key]) + 1
            except (TypeError, ValueError):
                pass  # left as-is; the board reader reports the row
        rows.append(row)

    frame = pd.DataFrame(rows).reindex(columns=CANONICAL_COLUMNS)
    frame["label"] = frame["label"].fillna("")
    logger.debug(f"{path}: converted {len(frame)} export rows")
    return frame.astype(str)
