"""
Report emission: JSON documents with a fixed field order and optional CSV tables.

Complex numbers become [re, im] pairs, infinities the strings "inf" / "-inf", exact
rationals "p/q" strings, Hecke elements lists of {word, coeff}. Field order is the
insertion order of the dicts built by the callers, so identical inputs give
byte-identical output.
"""
import dataclasses
import io
import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from core.errors import UsageError
from core.hecke import HeckeElement
from core.laurent import LaurentPoly
from core.weyl import WeylElement

logger = logging.getLogger(__name__)


def _float(x: float) -> Any:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def to_jsonable(value: Any) -> Any:
    """Converts report values into plain JSON types."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return [_float(float(value.real)), _float(float(value.imag))]
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, WeylElement):
        return value.to_dict()
    if isinstance(value, HeckeElement):
        return value.to_dict()
    if isinstance(value, LaurentPoly):
        return value.to_dict()
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()] if value.dtype != object else [to_jsonable(v) for v in value]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        out = {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
        for name in ("passed", "ok", "margin", "decreasing"):
            attr = getattr(type(value), name, None)
            if isinstance(attr, property):
                out[name] = to_jsonable(getattr(value, name))
        return out
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_report(report: Mapping[str, Any]) -> str:
    return json.dumps(to_jsonable(report), indent=2) + "\n"


def write_report(report: Mapping[str, Any], path: Optional[str] = None) -> str:
    """
    Renders a report and writes it to `path` when given.

    Returns:
        str: The rendered JSON text.

    Raises:
        UsageError: If the file cannot be written.
    """
    text = render_report(report)
    if path:
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            logger.error("Could not write report %s: %s", path, e)
            raise UsageError(f"cannot write {path}: {e}") from e
        logger.info("Report written to %s", path)
    return text


def table_frame(rows: Sequence[Mapping[str, Any]]) -> pd.DataFrame:
    """One row per mapping; nested values are flattened to their JSON text."""
    flat: List[Dict[str, Any]] = []
    for row in rows:
        item = {}
        for key, value in to_jsonable(dict(row)).items():
            item[key] = json.dumps(value) if isinstance(value, (list, dict)) else value
        flat.append(item)
    return pd.DataFrame(flat)


def write_csv(rows: Sequence[Mapping[str, Any]], path: Optional[str] = None) -> str:
    """Writes a table with pandas; returns the CSV text."""
    stream = io.StringIO()
    table_frame(rows).to_csv(stream, index=False)
    text = stream.getvalue()
    if path:
        try:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            logger.error("Could not write table %s: %s", path, e)
            raise UsageError(f"cannot write {path}: {e}") from e
        logger.info("Table written to %s (%d rows)", path, len(rows))
    return text
