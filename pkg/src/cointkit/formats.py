"""Shared rendering helpers: 12-significant-digit machine numbers, stars."""

from __future__ import annotations

import json
import math
from typing import Any


def fmt12s(value: float) -> str:
    """Machine string form of a float: 12 significant digits."""
    return f"{float(value):.12g}"


def fmt12(value: float) -> float:
    """Float rounded to the 12-significant-digit machine precision."""
    return float(fmt12s(value))


def round_floats(obj: Any) -> Any:
    """Recursively round every float in a JSON-able structure to 12 digits.

    Non-finite values (infinite t-ratios from perfect fits) become null:
    JSON has no representation for them and emitting text like ``Infinity``
    would break strict parsers.
    """
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return fmt12(obj) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def json_dumps(obj: Any) -> str:
    """Deterministic JSON text: rounded floats, fixed separators, newline end."""
    return json.dumps(round_floats(obj), indent=2, sort_keys=False, allow_nan=False) + "\n"


def significance_stars(statistic: float, critical_values: dict[int, float]) -> str:
    """Table-note stars: *** at 1 percent, ** at 5, * at 10."""
    if statistic < critical_values[1]:
        return "***"
    if statistic < critical_values[5]:
        return "**"
    if statistic < critical_values[10]:
        return "*"
    return ""
