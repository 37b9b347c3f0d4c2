"""JSON formats for complex numbers, matrices, games and circuits.

A complex number is the pair ``[re, im]``; a ket is a list of pairs; a
matrix is a list of rows of pairs. Floats are written with Python's
shortest round-trip ``repr``, so parsing a written file gives back the
same bits.
"""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .classical import Game
from .csd import Circuit, ControlledGate
from .exceptions import GameFormatError

__all__ = [
    "complex_to_json",
    "complex_from_json",
    "ket_to_json",
    "ket_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "circuit_to_json",
    "circuit_from_json",
    "load_json",
    "load_game",
    "load_matrix",
    "dumps",
    "write_atomic",
    "sig12",
]


def complex_to_json(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(value, path="$"):
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise GameFormatError(path, "expected a [re, im] pair of numbers")
    z = complex(float(value[0]), float(value[1]))
    if not np.isfinite(z.real) or not np.isfinite(z.imag):
        raise GameFormatError(path, "non-finite complex number")
    return z


def ket_to_json(vec):
    return [complex_to_json(z) for z in np.asarray(vec).ravel()]


def ket_from_json(value, path="$"):
    if not isinstance(value, list) or not value:
        raise GameFormatError(path, "expected a list of [re, im] pairs")
    return np.array([complex_from_json(v, f"{path}[{i}]") for i, v in enumerate(value)])


def matrix_to_json(mat):
    return [[complex_to_json(z) for z in row] for row in np.asarray(mat)]


def matrix_from_json(value, path="$", shape=None):
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise GameFormatError(path, "expected a list of rows")
    width = len(value[0])
    rows = []
    for i, row in enumerate(value):
        if len(row) != width:
            raise GameFormatError(f"{path}[{i}]", f"expected {width} entries, got {len(row)}")
        rows.append([complex_from_json(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    mat = np.array(rows, dtype=complex)
    if shape is not None and mat.shape != tuple(shape):
        raise GameFormatError(path, f"expected a {shape[0]}x{shape[1]} matrix, got {mat.shape[0]}x{mat.shape[1]}")
    return mat


def circuit_to_json(circuit: Circuit):
    return [
        {
            "control_wire": g.control_wire,
            "control_value": g.control_value,
            "target_wire": g.target_wire,
            "gate": matrix_to_json(g.gate),
        }
        for g in circuit
    ]


def circuit_from_json(value, path="$"):
    if not isinstance(value, list):
        raise GameFormatError(path, "expected a list of gates")
    gates = []
    for i, item in enumerate(value):
        where = f"{path}[{i}]"
        if not isinstance(item, dict):
            raise GameFormatError(where, "expected an object")
        for key in ("control_wire", "control_value", "target_wire", "gate"):
            if key not in item:
                raise GameFormatError(f"{where}.{key}", "missing required field")
        gate = matrix_from_json(item["gate"], f"{where}.gate", shape=(2, 2))
        try:
            gates.append(
                ControlledGate(int(item["control_wire"]), int(item["control_value"]), int(item["target_wire"]), gate)
            )
        except ValueError as exc:
            raise GameFormatError(where, str(exc)) from exc
    return Circuit(gates)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise GameFormatError(str(path), f"cannot read file: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise GameFormatError(str(path), f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_game(path):
    doc = load_json(path)
    try:
        return Game.from_dict(doc)
    except GameFormatError as exc:
        raise GameFormatError(f"{path}:{exc.path}", exc.reason) from exc
    except ValueError as exc:
        raise GameFormatError(str(path), str(exc)) from exc


def load_matrix(path, shape=(4, 4)):
    """A matrix file holds either the bare matrix or ``{"matrix": ...}``."""
    doc = load_json(path)
    key = "$"
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise GameFormatError(f"{path}:matrix", "missing required field")
        doc, key = doc["matrix"], "matrix"
    try:
        return matrix_from_json(doc, key, shape)
    except GameFormatError as exc:
        raise GameFormatError(f"{path}:{exc.path}", exc.reason) from exc


def sig12(x):
    """Decimal string with 12 significant digits."""
    return format(float(x), ".12g")


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qugame-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
