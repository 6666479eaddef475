"""Safe serialization of arbitrary values for log payloads.

Does NOT truncate strings. Large arrays are summarized by shape because a
sampled adjacency matrix can hold millions of entries.
"""

import traceback
import uuid
from dataclasses import asdict, is_dataclass
from datetime import date, datetime
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np


def safe_serialize(obj: Any, max_depth: int = 10, current_depth: int = 0) -> Any:
    """JSON-serializable representation of ``obj``.

    Handles primitives, numpy scalars and arrays, Fractions (as ``p/q`` text),
    enums, dates, paths, dataclasses, containers and objects with a
    ``summary()`` method. Anything else becomes ``str(obj)``.
    """
    if current_depth > max_depth:
        return f"<max depth {max_depth} exceeded>"

    if obj is None or isinstance(obj, (str, int, float, bool)):
        return obj

    if isinstance(obj, Fraction):
        return str(obj)

    if isinstance(obj, np.generic):
        return obj.item()

    if isinstance(obj, np.ndarray):
        return {"ndarray": list(obj.shape), "dtype": str(obj.dtype)}

    if isinstance(obj, (datetime, date)):
        return obj.isoformat()

    if isinstance(obj, (Path, uuid.UUID)):
        return str(obj)

    if isinstance(obj, Enum):
        return obj.value

    summary = getattr(obj, "summary", None)
    if callable(summary) and not isinstance(obj, type):
        try:
            return safe_serialize(summary(), max_depth, current_depth + 1)
        except Exception:
            pass

    if is_dataclass(obj) and not isinstance(obj, type):
        try:
            return safe_serialize(asdict(obj), max_depth, current_depth + 1)
        except Exception:
            return str(obj)

    if isinstance(obj, dict):
        return {
            str(safe_serialize(k, max_depth, current_depth + 1)): safe_serialize(
                v, max_depth, current_depth + 1
            )
            for k, v in obj.items()
        }

    if isinstance(obj, (list, tuple)):
        return [safe_serialize(item, max_depth, current_depth + 1) for item in obj]

    if isinstance(obj, (set, frozenset)):
        return [safe_serialize(item, max_depth, current_depth + 1) for item in sorted(obj, key=str)]

    if isinstance(obj, type):
        return f"<class {obj.__name__}>"

    try:
        return str(obj)
    except Exception:
        return f"<unserializable: {type(obj).__name__}>"


def extract_error_info(exception: Exception) -> dict:
    """Error details for an error log record."""
    return {
        "error_type": type(exception).__name__,
        "error_message": str(exception),
        "error_module": type(exception).__module__,
        "stack_trace": traceback.format_exc(),
        "details": safe_serialize(getattr(exception, "details", {})),
    }
