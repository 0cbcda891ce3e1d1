"""JSON and CSV exchange formats.

Matrices travel as {"rows": [[...], ...]}, complex numbers as [re, im].
Floats are written with ``repr``, the shortest decimal that round-trips, so
output bytes are a pure function of the values.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex number must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return complex(value)


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(m) -> dict:
    arr = np.asarray(m)
    if np.iscomplexobj(arr):
        return {"rows": [[complex_pair(z) for z in row] for row in arr]}
    return {"rows": [[float(x) for x in row] for row in arr]}


def matrix_from_json(data) -> np.ndarray:
    if isinstance(data, dict):
        data = data["rows"]
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2:
        raise ValueError("matrix JSON must be a list of rows")
    return arr


def _plain(value):
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, complex):
        return complex_pair(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError("non-finite number in output")
    return value


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2, allow_nan=False) + "\n"


def format_cell(value) -> str:
    value = _plain(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def flatten(obj: dict, prefix: str = "") -> dict:
    """Nested dict/list to a single CSV row: {"u": [1, 0]} -> {"u_0": 1, "u_1": 0}."""
    out = {}
    for key, value in _plain(obj).items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(flatten(value, name + "_"))
        elif isinstance(value, list):
            for i, v in enumerate(value):
                if isinstance(v, list):
                    out.update(flatten({str(i): v}, name + "_"))
                else:
                    out[f"{name}_{i}"] = v
        else:
            out[name] = value
    return out
