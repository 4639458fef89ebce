"""Deterministic JSON rendering.

Floats are written with 17 significant digits so that equal inputs give
byte-identical output, and complex numbers become ``{"re": .., "im": ..}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format_float(x)


def format_float(x: float) -> str:
    """17 significant digits, always recognisable as a float."""
    if not math.isfinite(x):
        return str(x)
    s = format(x, ".17g")
    return s if any(c in s for c in ".en") else s + ".0"


def plain(obj):
    """Convert numpy scalars, complex numbers and dataclasses to JSON types."""
    if hasattr(obj, "as_dict"):
        return plain(obj.as_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _render(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (k, v) in enumerate(items):
            out.append(f"{pad}{json.dumps(k)}: ")
            _render(v, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _render(v, indent, level + 1, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _render(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, str)):
        out.append(json.dumps(obj))
    else:
        out.append(json.dumps(str(obj)))


def dumps(obj, indent=2) -> str:
    out = []
    _render(plain(obj), indent, 0, out)
    return "".join(out) + "\n"
