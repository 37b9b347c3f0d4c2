"""Input validation helpers.

Every public function funnels user input through one of these so that
arrays come out as read-only numpy arrays with a known dtype and shape.
"""
from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, NonUnitaryInput, NotUnitKet

NORM_TOL = 1e-9
UNITARY_TOL = 1e-10


def _frozen(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


def check_ket(amplitudes, dim=None, *, atol=NORM_TOL, name="ket"):
    """Return ``amplitudes`` as a read-only complex vector of unit norm.

    Parameters
    ----------
    amplitudes : array-like of complex
    dim : int, optional
        Required length. ``None`` accepts 2 or 4.
    atol : float
        Allowed deviation of the squared norm from 1.
    """
    arr = np.asarray(amplitudes, dtype=complex)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {arr.shape}")
    if dim is None:
        if arr.shape[0] not in (2, 4):
            raise DimensionMismatch(f"{name} must have dimension 2 or 4, got {arr.shape[0]}")
    elif arr.shape[0] != dim:
        raise DimensionMismatch(f"{name} must have dimension {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NotUnitKet(f"{name} has non-finite amplitudes")
    norm2 = float(np.vdot(arr, arr).real)
    if abs(norm2 - 1.0) > atol:
        raise NotUnitKet(f"{name} has squared norm {norm2!r}, expected 1")
    return _frozen(arr)


def check_unitary(matrix, dim=None, *, atol=UNITARY_TOL, name="matrix"):
    """Return ``matrix`` as a read-only complex array, raising unless it is unitary."""
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NonUnitaryInput(f"{name} must be square, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise NonUnitaryInput(f"{name} must be {dim}x{dim}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonUnitaryInput(f"{name} has non-finite entries")
    err = unitarity_error(arr)
    if err >= atol:
        raise NonUnitaryInput(f"{name} is not unitary: max|U^H U - I| = {err:.3e}")
    return _frozen(arr)


def unitarity_error(matrix):
    matrix = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def check_distribution(weights, length=None, *, atol=NORM_TOL, name="distribution"):
    """Return ``weights`` as a read-only probability vector."""
    arr = np.asarray(weights, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"{name} must have length {length}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite weights")
    if np.any(arr < -atol) or np.any(arr > 1 + atol):
        raise ValueError(f"{name} has weights outside [0, 1]: {arr.tolist()}")
    if abs(arr.sum() - 1.0) > atol:
        raise ValueError(f"{name} sums to {arr.sum()!r}, expected 1")
    return _frozen(arr)
