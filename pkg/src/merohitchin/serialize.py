"""Deterministic JSON output: floats at 17 significant digits, rationals as "p/q"
strings, complex numbers as {"re", "im"}."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .algebra.poly import ExactPoly, fraction_str


def _float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} cannot be serialised")
    s = format(x, ".17g")
    if s == "-0":
        s = "0"
    return s


def to_plain(obj):
    """Convert library values into JSON-ready Python values (floats kept as floats)."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return {"re": z.real, "im": z.imag}
    if isinstance(obj, ExactPoly):
        return obj.to_json()
    if isinstance(obj, np.ndarray):
        return [to_plain(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(x) for x in obj]
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [_emit(x, indent, level + 1) for x in obj]
        return "[\n" + ",\n".join(pad + s for s in items) + "\n" + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [json.dumps(k, ensure_ascii=False) + ": " + _emit(v, indent, level + 1) for k, v in obj.items()]
        return "{\n" + ",\n".join(pad + s for s in items) + "\n" + end + "}"
    raise TypeError(f"unexpected value {obj!r}")


def dumps(obj, indent: int = 2) -> str:
    return _emit(to_plain(obj), indent, 0)
