"""Helper utility functions."""

import json
import math
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np

SIGNIFICANT_DIGITS = 12


def format_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Format a float with a fixed number of significant digits.

    Args:
        value: Number to format
        digits: Significant digits

    Returns:
        Decimal string, e.g. ``0.333333333333`` for 1/3
    """
    text = f"{float(value):.{digits}g}"
    # Negative zero is written as zero so outputs stay byte-stable
    return "0" if text == "-0" else text


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round a float to ``digits`` significant digits."""
    return float(format_sig(value, digits))


def to_serializable(obj: Any) -> Any:
    """Convert numpy containers and floats into JSON-ready values.

    Floats are rounded to twelve significant digits; non-finite floats
    become ``None``.

    Args:
        obj: Nested structure of dicts, sequences, numpy arrays and scalars

    Returns:
        Structure made only of dicts, lists, str, int, float, bool and None
    """
    if isinstance(obj, dict):
        return {str(key): to_serializable(value) for key, value in obj.items()}
    if isinstance(obj, np.ndarray):
        return to_serializable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [to_serializable(item) for item in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return round_sig(value)
    return obj


def write_json(data: Any, path: Union[str, Path]) -> Path:
    """Write ``data`` as deterministic, indented JSON.

    Args:
        data: Structure accepted by :func:`to_serializable`
        path: Output file path; parent directories are created

    Returns:
        The written path
    """
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        json.dump(to_serializable(data), f, indent=2, sort_keys=False)
        f.write("\n")
    return out


def read_json(path: Union[str, Path]) -> Any:
    """Read a JSON file written by :func:`write_json`."""
    with open(Path(path), "r", encoding="utf-8") as f:
        return json.load(f)


def parse_float_list(text: str, expected: int) -> Sequence[float]:
    """Parse a comma-separated list of floats.

    Args:
        text: e.g. ``"0.3078,0.3078,0.3078,0.442,0.452"``
        expected: Required number of values

    Returns:
        List of floats

    Raises:
        ValueError: If the count is wrong or a value is not a number
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != expected:
        raise ValueError(
            f"expected {expected} comma-separated values, got {len(parts)}"
        )
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise ValueError(f"invalid number in '{text}': {e}") from e
