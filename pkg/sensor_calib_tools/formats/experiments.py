"""
Monte Carlo experiment descriptors (YAML).

A descriptor names one experiment; a ``variations`` list expands it into
several, each overriding fields of the base. Several descriptors may share a
file, separated by ``---``.

    name: table1
    runs: 1000
    samples: 1000
    dim: 2
    transform:
      a: [[0.3430, 0.3430], [0.1715, 0.8575]]
      b: [52, -58]
    sigmas: "1..15:2"
    methods: all
    seed: 0
    origin_box: [0, 100]
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import yaml

from ..core.config import parse_sigmas, parse_variants
from ..core.errors import ContractViolationError, DataFormatError
from ..estimation.models import AffineTransform, EstimatorVariant
from ..simulation.montecarlo import McConfig

REQUIRED_FIELDS = ["name", "sigmas"]
KNOWN_FIELDS = {
    "name", "description", "runs", "samples", "dim", "transform", "sigmas", "methods",
    "seed", "origin_box", "denoise_rank", "gram_direct_max_n", "retain_raw", "variations",
}


def _normalize_transform(value: Any) -> Dict[str, Any]:
    try:
        a = np.array(value["a"], dtype=np.float64)
        b = np.array(value["b"], dtype=np.float64).reshape(-1)
    except (KeyError, TypeError, ValueError) as e:
        raise ContractViolationError(f"transform needs numeric 'a' (q x q) and 'b' (q): {e}") from e
    if a.ndim == 1:
        q = int(round(np.sqrt(a.size)))
        a = a.reshape(q, q) if q * q == a.size else a
    return AffineTransform(a, b).to_dict()


def _validate_and_normalize_experiment(desc: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate and normalize a single experiment dictionary.

    Args:
        desc: Experiment dictionary to validate

    Returns:
        Validated and normalized experiment dictionary
    """
    if not isinstance(desc, dict):
        raise ContractViolationError("experiment must be a mapping")
    for field_name in REQUIRED_FIELDS:
        if field_name not in desc:
            raise ContractViolationError(f"Missing required field: {field_name}")
    unknown = sorted(set(desc) - KNOWN_FIELDS)
    if unknown:
        raise ContractViolationError(f"Unknown fields: {', '.join(unknown)}")

    desc = dict(desc)
    sigmas = desc["sigmas"]
    if isinstance(sigmas, (list, tuple)):
        desc["sigmas"] = parse_sigmas(",".join(str(s) for s in sigmas))
    else:
        desc["sigmas"] = parse_sigmas(str(sigmas))

    methods = desc.get("methods", "all")
    if isinstance(methods, (list, tuple)):
        methods = ",".join(str(m) for m in methods)
    desc["methods"] = parse_variants(str(methods))

    if "transform" in desc:
        desc["transform"] = _normalize_transform(desc["transform"])
    if "origin_box" in desc:
        box = list(desc["origin_box"])
        if len(box) != 2:
            raise ContractViolationError(f"origin_box must be [low, high], got {box}")
        desc["origin_box"] = [float(box[0]), float(box[1])]
    return desc


def load_experiment(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """
    Load and validate YAML experiment(s) from a file.

    Args:
        path: Path to YAML experiment file

    Returns:
        List of validated experiment dictionaries (one per YAML document)
    """
    try:
        with open(path, "r") as f:
            documents = list(yaml.safe_load_all(f))
    except yaml.YAMLError as e:
        raise DataFormatError(f"invalid YAML: {e}", path=str(path)) from e

    documents = [doc for doc in documents if doc is not None]
    if not documents:
        raise ContractViolationError(f"No experiments found in {path}")

    experiments = []
    for i, doc in enumerate(documents):
        try:
            experiments.append(_validate_and_normalize_experiment(doc))
        except ContractViolationError as e:
            raise ContractViolationError(f"Error validating experiment {i + 1} in {path}: {e}") from e
    return experiments


def expand_experiment_variations(desc: Dict[str, Any]) -> List[Dict[str, Any]]:
    """
    Expand an experiment with variations into several experiments.

    Variations without a name are called ``<base>_var_<index>``.
    """
    if "variations" not in desc:
        return [desc]

    base = {k: v for k, v in desc.items() if k != "variations"}
    expanded = []
    for index, variation in enumerate(desc["variations"] or []):
        merged = dict(base)
        merged.update(variation)
        merged["name"] = variation.get("name", f"{base['name']}_var_{index}")
        merged = _validate_and_normalize_experiment(merged)
        merged["_base_name"] = base["name"]
        expanded.append(merged)
    return expanded


def discover_experiments(experiments_dir: Union[str, Path]) -> List[Path]:
    """All ``*.yaml``/``*.yml`` files under a directory, sorted."""
    found = []
    for root, _, files in os.walk(experiments_dir):
        for name in files:
            if name.endswith((".yaml", ".yml")):
                found.append(Path(root) / name)
    return sorted(found)


def experiment_to_config(desc: Dict[str, Any], **overrides: Any) -> McConfig:
    """
    Build an McConfig from a normalized experiment; keyword overrides that are
    not None win over the descriptor.
    """
    data: Dict[str, Any] = {
        "sigmas": desc["sigmas"],
        "methods": [EstimatorVariant.parse(m) for m in desc["methods"]],
    }
    for key in ("runs", "samples", "dim", "seed", "denoise_rank", "gram_direct_max_n", "retain_raw"):
        if key in desc:
            data[key] = desc[key]
    if "transform" in desc:
        data["transform"] = AffineTransform.from_dict(desc["transform"])
        data.setdefault("dim", data["transform"].q)
    if "origin_box" in desc:
        data["box_low"], data["box_high"] = desc["origin_box"]

    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return McConfig(**data)
