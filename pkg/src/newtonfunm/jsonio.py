"""JSON encodings shared by the CLI.

A complex number is ``[re, im]`` (a bare real is accepted on input).
Matrix: ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` row-major.
Vector: ``{"len": n, "data": [[re, im], ...]}``.
Spectrum: ``[[re, im], ...]``.
"""
import json
import math

import numpy as np


class FormatError(ValueError):
    """Malformed JSON payload; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def complex_from_json(x, field="value"):
    if isinstance(x, bool):
        raise FormatError(field, f"expected a number or [re, im], got {x!r}")
    if isinstance(x, (int, float)):
        z = complex(x)
    elif isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in x
    ):
        z = complex(x[0], x[1])
    else:
        raise FormatError(field, f"expected a number or [re, im], got {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise FormatError(field, "non-finite entry")
    return z


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def matrix_from_json(obj, field="matrix"):
    if not isinstance(obj, dict):
        raise FormatError(field, "expected an object with rows, cols, data")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise FormatError(f"{field}.{exc.args[0]}", "missing") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise FormatError(f"{field}.rows", "rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError(f"{field}.data", f"expected {rows * cols} entries")
    flat = [complex_from_json(x, f"{field}.data[{i}]") for i, x in enumerate(data)]
    return np.array(flat, dtype=complex).reshape(rows, cols)


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [complex_to_json(z) for z in m.ravel()],
    }


def vector_from_json(obj, field="vector"):
    if not isinstance(obj, dict):
        raise FormatError(field, "expected an object with len, data")
    try:
        n, data = obj["len"], obj["data"]
    except KeyError as exc:
        raise FormatError(f"{field}.{exc.args[0]}", "missing") from None
    if not isinstance(n, int) or not isinstance(data, list) or len(data) != n:
        raise FormatError(f"{field}.data", f"expected {n} entries")
    return np.array([complex_from_json(x, f"{field}.data[{i}]") for i, x in enumerate(data)],
                    dtype=complex)


def vector_to_json(v):
    v = np.asarray(v, dtype=complex)
    return {"len": int(v.shape[0]), "data": [complex_to_json(z) for z in v]}


def spectrum_from_json(obj, field="spectrum"):
    if not isinstance(obj, list) or not obj:
        raise FormatError(field, "expected a non-empty list of [re, im] pairs")
    return [complex_from_json(x, f"{field}[{i}]") for i, x in enumerate(obj)]


def spectrum_to_json(values):
    return [complex_to_json(z) for z in values]


def load(path):
    with open(path) as fh:
        return json.load(fh)


def dump(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
