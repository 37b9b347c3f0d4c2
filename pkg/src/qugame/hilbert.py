"""Kets, the Fubini-Study distance and closest-point projection.

Kets are plain read-only numpy vectors of dimension 2 or 4. Projective
equality (equality up to a global phase) lives only in :func:`same_ray`
and :func:`dist`; the stored amplitudes are never canonicalised.

Two-qubit kets use the ordering ``(|00>, |01>, |10>, |11>)`` with the first
tensor factor most significant, so ``basis(4, 1)`` is ``|01>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import NORM_TOL, UNITARY_TOL, _frozen, check_ket
from .exceptions import DimensionMismatch, ZeroProjection

__all__ = [
    "ket",
    "basis",
    "inner_product",
    "dist",
    "same_ray",
    "tensor",
    "measure",
    "Subspace",
    "project_closest",
    "random_ket",
    "random_unitary",
]

# below this norm a projection is treated as zero
PROJECTION_FLOOR = 1e-12


def ket(amplitudes, dim=None):
    """Validate and freeze a unit ket."""
    return check_ket(amplitudes, dim)


def basis(dim, index):
    """The computational basis ket ``e_index`` (zero-based)."""
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return _frozen(vec)


def _pair(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def inner_product(a, b):
    """``<a, b>``, conjugate-linear in ``a``."""
    a, b = _pair(a, b)
    return complex(np.vdot(a, b))


def _canonical_phase(v):
    # rotate so the largest component is real and positive; done in real
    # arithmetic so that exact phases (+-1, +-i) give bit-identical results
    x, y = v.real, v.imag
    m = int(np.argmax(x * x + y * y))
    r = np.hypot(x[m], y[m])
    if r == 0:
        return v
    u, w = x[m] / r, y[m] / r
    return (x * u + y * w) + 1j * (y * u - x * w)


def dist(a, b):
    """Fubini-Study distance ``arccos |<a, b>|`` in ``[0, pi/2]``."""
    a, b = _pair(a, b)
    a, b = _canonical_phase(a), _canonical_phase(b)
    z = np.vdot(a, b)
    overlap = abs(z)
    if overlap < 0.5:
        return float(np.arccos(min(overlap, 1.0)))
    # arccos is ill-conditioned near 1; use the phase-aligned chord instead
    chord = np.linalg.norm(b - (z / overlap) * a)
    return float(2.0 * np.arcsin(min(1.0, chord / 2.0)))


def same_ray(a, b, atol=NORM_TOL):
    """True when ``a`` and ``b`` differ only by a global phase."""
    a, b = _pair(a, b)
    return abs(np.vdot(a, b)) > 1.0 - atol


def tensor(x, y):
    """``x (x) y`` for two qubit kets, ordered ``(x1y1, x1y2, x2y1, x2y2)``."""
    x = check_ket(x, 2, name="x")
    y = check_ket(y, 2, name="y")
    return _frozen(np.kron(x, y))


def measure(q):
    """Born-rule probabilities ``|c_i|^2`` of a unit ket."""
    q = check_ket(q)
    return _frozen(np.abs(q) ** 2)


def _orthonormal_columns(vectors, rank_tol=1e-10):
    """Orthonormal basis (as columns) for the span of ``vectors``."""
    mat = np.asarray(vectors, dtype=complex)
    if mat.ndim == 1:
        mat = mat[None, :]
    u, s, _ = np.linalg.svd(mat.T, full_matrices=False)
    rank = int(np.sum(s > rank_tol * max(1.0, s[0] if s.size else 0.0)))
    return u[:, :rank]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace given by an orthonormal basis.

    ``basis_matrix`` holds one basis ket per row.
    """

    basis_matrix: np.ndarray

    def __post_init__(self):
        mat = np.atleast_2d(np.asarray(self.basis_matrix, dtype=complex))
        if mat.shape[0] == 0:
            raise ValueError("a subspace needs at least one basis ket")
        gram = mat.conj() @ mat.T
        if np.max(np.abs(gram - np.eye(mat.shape[0]))) >= NORM_TOL:
            raise ValueError("basis kets are not orthonormal")
        object.__setattr__(self, "basis_matrix", _frozen(mat))

    @classmethod
    def span(cls, vectors):
        """Subspace spanned by arbitrary (not necessarily orthonormal) vectors."""
        cols = _orthonormal_columns(vectors)
        if cols.shape[1] == 0:
            raise ValueError("vectors span the zero subspace")
        return cls(cols.T)

    @property
    def ambient_dimension(self):
        return self.basis_matrix.shape[1]

    @property
    def dimension(self):
        return self.basis_matrix.shape[0]

    def __len__(self):
        return self.dimension

    def from_coordinates(self, coords):
        """Map coordinates w.r.t. the basis to an ambient vector."""
        return np.asarray(coords, dtype=complex) @ self.basis_matrix


def project_closest(subspace, target):
    """Closest unit ket of ``subspace`` to ``target`` and its distance.

    The minimiser is the normalised orthogonal projection. Raises
    :class:`ZeroProjection` when ``target`` is orthogonal to the subspace,
    in which case every unit ket of the subspace sits at ``pi/2``.
    """
    target = check_ket(target, subspace.ambient_dimension, name="target")
    coords = subspace.basis_matrix.conj() @ target
    norm = float(np.linalg.norm(coords))
    if norm <= PROJECTION_FLOOR:
        raise ZeroProjection("target is orthogonal to the subspace")
    closest = _frozen(subspace.from_coordinates(coords / norm))
    return closest, dist(closest, target)


def _rng(seed):
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def random_ket(dim, seed):
    """Seeded Haar-random unit ket."""
    rng = _rng(seed)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return _frozen(vec / np.linalg.norm(vec))


def random_unitary(dim, seed):
    """Seeded Haar-random unitary from the QR of a complex Gaussian matrix.

    The diagonal of ``R`` is divided out so the distribution is Haar and not
    biased by LAPACK's sign convention.
    """
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    assert np.max(np.abs(q.conj().T @ q - np.eye(dim))) < UNITARY_TOL
    return _frozen(q)
