"""Cosine-sine decomposition of two-qubit unitaries and its six-gate circuit.

Every 4x4 unitary factors as::

    U = (L0 (+) L1) . [[C, -S], [S, C]] . (R0 (+) R1)^H

with ``C = diag(cos t1, cos t2)`` and ``S = diag(sin t1, sin t2)``. Blocks
are indexed by wire 1, the most significant qubit. Read right to left, the
factors become a circuit of three multiplexed single-qubit stages:

1. ``R0^H`` / ``R1^H`` on wire 2, controlled by wire 1 being 0 / 1;
2. ``Ry(2 t1)`` / ``Ry(2 t2)`` on wire 1, controlled by wire 2 being 0 / 1;
3. ``L0`` / ``L1`` on wire 2, controlled by wire 1 being 0 / 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import UNITARY_TOL, _frozen, check_unitary, unitarity_error

__all__ = [
    "CSDFactors",
    "ControlledGate",
    "Circuit",
    "ry",
    "csd4",
    "cs_middle",
    "factors_to_circuit",
    "circuit_to_unitary",
    "multiplexer",
    "phase_aligned_error",
]

WIRES = (1, 2)


def ry(angle):
    """``[[cos a/2, -sin a/2], [sin a/2, cos a/2]]``."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return _frozen(np.array([[c, -s], [s, c]], dtype=complex))


def cs_middle(theta1, theta2):
    c = np.diag([np.cos(theta1), np.cos(theta2)])
    s = np.diag([np.sin(theta1), np.sin(theta2)])
    return _frozen(np.block([[c, -s], [s, c]]).astype(complex))


def _block_diag(a, b):
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = a
    out[2:, 2:] = b
    return out


@dataclass(frozen=True, eq=False)
class CSDFactors:
    L0: np.ndarray
    L1: np.ndarray
    R0: np.ndarray
    R1: np.ndarray
    theta1: float
    theta2: float

    def __post_init__(self):
        for name in ("L0", "L1", "R0", "R1"):
            object.__setattr__(self, name, check_unitary(getattr(self, name), 2, name=name))
        for name in ("theta1", "theta2"):
            t = float(getattr(self, name))
            if not -1e-12 <= t <= np.pi / 2 + 1e-12:
                raise ValueError(f"{name}={t} outside [0, pi/2]")
            object.__setattr__(self, name, t)

    def unitary(self):
        """Multiply the factors back together."""
        left = _block_diag(self.L0, self.L1)
        right = _block_diag(self.R0, self.R1)
        return left @ cs_middle(self.theta1, self.theta2) @ right.conj().T


@dataclass(frozen=True, eq=False)
class ControlledGate:
    """``gate`` on ``target_wire`` when ``control_wire`` holds ``control_value``."""

    control_wire: int
    control_value: int
    target_wire: int
    gate: np.ndarray

    def __post_init__(self):
        if self.control_wire not in WIRES or self.target_wire not in WIRES:
            raise ValueError(f"wires must be 1 or 2, got {self.control_wire}, {self.target_wire}")
        if self.control_wire == self.target_wire:
            raise ValueError("control and target must be different wires")
        if self.control_value not in (0, 1):
            raise ValueError(f"control value must be 0 or 1, got {self.control_value}")
        object.__setattr__(self, "gate", check_unitary(self.gate, 2, name="gate"))

    def matrix(self):
        """The 4x4 matrix of this gate (wire 1 most significant)."""
        proj = np.zeros((2, 2), dtype=complex)
        proj[self.control_value, self.control_value] = 1
        rest = np.eye(2) - proj
        if self.control_wire == 1:
            return np.kron(proj, self.gate) + np.kron(rest, np.eye(2))
        return np.kron(self.gate, proj) + np.kron(np.eye(2), rest)


@dataclass(frozen=True, eq=False)
class Circuit:
    """Controlled gates in application order (first element acts first)."""

    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def multiplexer(control_wire, target_wire, gate0, gate1):
    """The pair of gates applying ``gate0`` / ``gate1`` for control value 0 / 1."""
    return [
        ControlledGate(control_wire, 0, target_wire, gate0),
        ControlledGate(control_wire, 1, target_wire, gate1),
    ]


def _complement(col):
    # unit vector orthogonal to ``col`` in C^2
    return np.array([-np.conj(col[1]), np.conj(col[0])])


def csd4(u):
    """Cosine-sine decomposition of a 4x4 unitary.

    The top-left block's SVD fixes ``L0``, ``R0`` and the cosines; sines are
    the column norms of ``U10 R0`` and ``theta = atan2(s, c)``. ``L1`` takes
    its best-determined column (largest sine) from ``U10 R0``. Its other
    column is the orthogonal complement, phased to agree with ``U10 R0``.
    Each row of ``R1^H`` comes from whichever relation is better
    conditioned: ``U11 = L1 C R1^H`` when the cosine dominates, else
    ``U01 = -L0 S R1^H``. Nothing is divided by a small sine or cosine.
    This covers the degenerate angles 0 and pi/2 without special cases.

    Raises :class:`~qugame.exceptions.NonUnitaryInput`.
    """
    u = check_unitary(u, 4, name="U")
    u00, u01, u10, u11 = u[:2, :2], u[:2, 2:], u[2:, :2], u[2:, 2:]

    l0, c, r0h = np.linalg.svd(u00)
    r0 = r0h.conj().T
    y = u10 @ r0
    s = np.linalg.norm(y, axis=0)
    theta = np.arctan2(s, c)
    cos, sin = np.cos(theta), np.sin(theta)

    big = int(np.argmax(s))
    small = 1 - big
    l1 = np.zeros((2, 2), dtype=complex)
    if s[big] > 0:
        l1[:, big] = y[:, big] / s[big]
    else:
        l1[:, big] = np.eye(2)[big]
    comp = _complement(l1[:, big])
    overlap = np.vdot(comp, y[:, small])
    if abs(overlap) > 0:
        comp = comp * (overlap / abs(overlap))
    l1[:, small] = comp

    r1h = np.zeros((2, 2), dtype=complex)
    from_cos = l1.conj().T @ u11
    from_sin = -(l0.conj().T @ u01)
    for j in range(2):
        if cos[j] >= sin[j]:
            r1h[j] = from_cos[j] / cos[j]
        else:
            r1h[j] = from_sin[j] / sin[j]
    r1 = _polish(r1h.conj().T)

    return CSDFactors(l0, l1, r0, r1, theta[0], theta[1])


def _polish(m):
    # nearest unitary; removes rounding drift only
    w, _, vh = np.linalg.svd(m)
    return w @ vh


def factors_to_circuit(factors: CSDFactors):
    """Six multiplexed gates realising the factorisation."""
    gates = []
    gates += multiplexer(1, 2, factors.R0.conj().T, factors.R1.conj().T)
    gates += multiplexer(2, 1, ry(2 * factors.theta1), ry(2 * factors.theta2))
    gates += multiplexer(1, 2, factors.L0, factors.L1)
    return Circuit(gates)


def circuit_to_unitary(circuit: Circuit):
    out = np.eye(4, dtype=complex)
    for gate in circuit:
        out = gate.matrix() @ out
    return out


def phase_aligned_error(a, b):
    """``min_phi max|a - e^{i phi} b|`` approximated by aligning on the trace overlap."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    z = np.vdot(b, a)
    phase = z / abs(z) if abs(z) > 0 else 1.0
    return float(np.max(np.abs(a - phase * b)))


def is_unitary(m, atol=UNITARY_TOL):
    return unitarity_error(m) < atol
