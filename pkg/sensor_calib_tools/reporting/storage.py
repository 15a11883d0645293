"""
Storage and retrieval of transforms, and the shared JSON text form.

JSON floats are written with their shortest round-trip representation, so a
saved transform loads back bit for bit.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from ..core.errors import ContractViolationError, DataFormatError
from ..estimation.models import AffineTransform, CalibrationResult

PathLike = Union[str, Path]


def dumps(data: Any) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def _read_json(path: PathLike) -> Any:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DataFormatError(f"invalid JSON: {e.msg}", line=e.lineno, path=str(path)) from e


def _write_text(path: Optional[PathLike], text: str) -> str:
    if path is not None:
        with open(path, "w", newline="") as f:
            f.write(text)
    return text


def transform_document(item: Union[CalibrationResult, AffineTransform]) -> Dict[str, Any]:
    """Transform JSON document: {q, a, b, method, denoise_rank, denoise}."""
    if isinstance(item, CalibrationResult):
        return item.to_dict()
    data = item.to_dict()
    data.update(method=None, denoise_rank=None, denoise=None)
    return data


def save_transform(item: Union[CalibrationResult, AffineTransform], path: Optional[PathLike]) -> str:
    """
    Save a transform document.

    Args:
        item: Fit result (method metadata included) or a bare transform
        path: Output file, or None to only return the text

    Returns:
        The JSON text
    """
    return _write_text(path, dumps(transform_document(item)))


def load_transform(path: PathLike) -> Tuple[AffineTransform, Dict[str, Any]]:
    """
    Load a transform document.

    Returns:
        (transform, metadata) where metadata holds method, denoise_rank and denoise

    Raises:
        DataFormatError: the file is not valid JSON
        ContractViolationError / ShapeMismatchError: the document is incomplete
    """
    data = _read_json(path)
    if not isinstance(data, dict):
        raise ContractViolationError(f"{path}: transform document must be a JSON object")
    transform = AffineTransform.from_dict(data)
    meta = {key: data.get(key) for key in ("method", "denoise_rank", "denoise")}
    return transform, meta

