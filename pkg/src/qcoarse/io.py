"""State files and serialisation helpers.

A state file is UTF-8 JSON::

    {"dim": 4, "kind": "vector", "data": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}

``kind`` is ``"vector"`` (``data`` is a list of ``[re, im]`` pairs) or
``"density"`` (``data`` is a list of rows of ``[re, im]`` pairs).  Amplitudes
are in computational-basis order with qubit 1 as the most significant bit.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .wigner import QuantumState

__all__ = ["StateFileError", "parse_state_file", "load_state", "dump_state", "dumps_json"]

NORM_TOL = 1e-8


class StateFileError(ValueError):
    """Raised for unreadable or invalid state files."""


def _complex(pair, where: str) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise StateFileError(f"parse error: {where} must be an [re, im] pair")
    try:
        return complex(float(pair[0]), float(pair[1]))
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"parse error: {where} is not numeric") from exc


def load_state(doc: dict) -> QuantumState:
    """Validate an already-decoded state document."""
    if not isinstance(doc, dict):
        raise StateFileError("parse error: top level must be an object")
    for key in ("dim", "kind", "data"):
        if key not in doc:
            raise StateFileError(f"parse error: missing key {key!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 2 or dim & (dim - 1):
        raise StateFileError("dimension must be 2^N")
    kind, data = doc["kind"], doc["data"]
    if kind == "vector":
        if not isinstance(data, list) or len(data) != dim:
            raise StateFileError(f"parse error: expected {dim} amplitudes")
        arr = np.array([_complex(p, f"data[{i}]") for i, p in enumerate(data)])
        if abs(np.vdot(arr, arr).real - 1) > NORM_TOL:
            raise StateFileError("state not normalized")
    elif kind == "density":
        if not isinstance(data, list) or len(data) != dim or any(
            not isinstance(r, list) or len(r) != dim for r in data
        ):
            raise StateFileError(f"parse error: expected a {dim}x{dim} matrix")
        arr = np.array(
            [[_complex(p, f"data[{i}][{j}]") for j, p in enumerate(row)] for i, row in enumerate(data)]
        )
        if abs(np.trace(arr).real - 1) > NORM_TOL:
            raise StateFileError("state not normalized")
    else:
        raise StateFileError(f"parse error: unknown kind {kind!r}")
    try:
        return QuantumState(arr, atol=NORM_TOL)
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc


def parse_state_file(path: str | os.PathLike) -> QuantumState:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise StateFileError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}\n  {line}"
        ) from exc
    return load_state(doc)


def dump_state(state, kind: str | None = None) -> dict:
    """State document for a vector or density matrix."""
    arr = np.asarray(state.vector if isinstance(state, QuantumState) and state.vector is not None
                     else getattr(state, "density", state), dtype=complex)
    if kind is None:
        kind = "vector" if arr.ndim == 1 else "density"
    if kind == "vector":
        data = [[float(z.real), float(z.imag)] for z in arr]
    else:
        data = [[[float(z.real), float(z.imag)] for z in row] for row in arr]
    return {"dim": int(arr.shape[0]), "kind": kind, "data": data}


def dumps_json(doc) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
