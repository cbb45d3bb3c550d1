"""Matrix file format: JSON documents with explicit shape and [re, im] pairs.

One matrix per file:

    {"rows": 2, "cols": 2,
     "data": [[1.0, 0.0], [0.0, 0.0], [0.0, -1.0], [2.5, 0.0]]}

``data`` is row-major, one [real, imaginary] pair per entry. Writing floats
through ``repr`` round-trips exactly, so write-then-read is bit-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import as_operator

__all__ = ["matrix_to_doc", "doc_to_matrix", "write_matrix", "read_matrix"]


def matrix_to_doc(a) -> dict:
    a = as_operator(a)
    rows, cols = a.shape
    flat = a.reshape(-1)
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def doc_to_matrix(doc: dict) -> np.ndarray:
    if not isinstance(doc, dict):
        raise ValueError("matrix document must be a JSON object")
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise ValueError(f"matrix document missing field {key!r}")
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    if not isinstance(rows, int) or not isinstance(cols, int):
        raise ValueError("rows and cols must be integers")
    if rows < 1 or cols < 1:
        raise ValueError(f"invalid shape ({rows}, {cols})")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(
            f"data length {len(data) if isinstance(data, list) else 'n/a'} "
            f"does not match rows*cols = {rows * cols}"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            raise ValueError(f"entry {i} is not a [re, im] pair: {pair!r}")
        out[i] = complex(pair[0], pair[1])
    matrix = out.reshape(rows, cols)
    return as_operator(matrix)


def write_matrix(path: str | Path, a) -> None:
    doc = matrix_to_doc(a)
    Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")


def read_matrix(path: str | Path) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    return doc_to_matrix(doc)
