"""EWL quantization of 2x2 games.

Two independent constructions of the quantized state are provided:

* :func:`ewl_formula` evaluates the closed-form amplitudes ``c_1..c_4`` of
  the EWL family, with ``eta = exp(i pi/4)``.
* :func:`ewl_circuit` runs the circuit ``E^H (A (x) B) E |00>``.

They are not assumed to agree; :func:`compare_formula_vs_circuit` measures
how far apart they are.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import NORM_TOL, _frozen, check_ket, check_unitary
from .classical import Game
from .exceptions import NormalizationFailure
from .hilbert import dist, same_ray

__all__ = [
    "ETA",
    "IDENTITY",
    "FLIP",
    "ENTANGLER_J",
    "local_unitary",
    "strategy_from_angles",
    "ewl_formula_raw",
    "ewl_formula",
    "EWLCircuitSpec",
    "ewl_circuit",
    "compare_formula_vs_circuit",
    "basis_payoffs",
    "strategy_grid",
    "ewl_equilibrium_scan",
    "scan_stability",
]

ETA = (1 + 1j) / np.sqrt(2)
IDENTITY = _frozen(np.eye(2, dtype=complex))
FLIP = _frozen(np.array([[0, -1], [1, 0]], dtype=complex))
_X = np.array([[0, 1], [1, 0]], dtype=complex)
ENTANGLER_J = _frozen((np.eye(4) + 1j * np.kron(_X, _X)) / np.sqrt(2))

RAW_NORM = 2.0
RAW_NORM_TOL = 1e-6


def local_unitary(alpha):
    """SU(2) matrix whose first column is ``alpha``: ``[[a1, -conj(a2)], [a2, conj(a1)]]``."""
    a1, a2 = check_ket(alpha, 2, name="alpha")
    return _frozen(np.array([[a1, -np.conj(a2)], [a2, np.conj(a1)]]))


def strategy_from_angles(theta, phi, chi=0.0):
    """``(e^{i chi} cos(theta/2), e^{i phi} sin(theta/2))``."""
    return _frozen(
        np.array([np.exp(1j * chi) * np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    )


def _raw(a1, a2, b1, b2):
    # vectorised over broadcastable complex arrays
    ca1, ca2, cb1, cb2 = np.conj(a1), np.conj(a2), np.conj(b1), np.conj(b2)
    eta, ceta = ETA, np.conj(ETA)
    c1 = (a1 * b1 + a2 * b2) + (ca1 * cb1 + ca2 * cb2)
    c2 = -eta * (-a1 * cb2 + a2 * cb1) + ceta * (-ca2 * b1 + ca1 * b2)
    c3 = ceta * (-a1 * cb2 + a2 * cb1) - eta * (-ca2 * b1 + ca1 * b2)
    c4 = -1j * (a1 * b1 + a2 * b2) + 1j * (ca2 * cb2 + ca1 * cb1)
    return np.stack(np.broadcast_arrays(c1, c2, c3, c4), axis=-1)


def ewl_formula_raw(alpha, beta):
    """The four printed EWL amplitudes, unnormalised (norm 2 for unit inputs)."""
    alpha = check_ket(alpha, 2, name="alpha")
    beta = check_ket(beta, 2, name="beta")
    return _frozen(_raw(alpha[0], alpha[1], beta[0], beta[1]))


def ewl_formula(alpha, beta):
    """EWL amplitudes scaled by 1/2 onto the unit sphere of ``H_4``.

    Raises :class:`NormalizationFailure` if the raw norm is not 2.
    """
    raw = ewl_formula_raw(alpha, beta)
    norm = float(np.linalg.norm(raw))
    if abs(norm - RAW_NORM) > RAW_NORM_TOL:
        raise NormalizationFailure(f"raw EWL amplitudes have norm {norm!r}, expected 2")
    return _frozen(raw / RAW_NORM)


@dataclass(frozen=True, eq=False)
class EWLCircuitSpec:
    """Entangler plus the two players' local gates."""

    player_one_gate: np.ndarray
    player_two_gate: np.ndarray
    entangler: np.ndarray = ENTANGLER_J

    def __post_init__(self):
        object.__setattr__(self, "entangler", check_unitary(self.entangler, 4, name="entangler"))
        object.__setattr__(
            self, "player_one_gate", check_unitary(self.player_one_gate, 2, name="player I gate")
        )
        object.__setattr__(
            self, "player_two_gate", check_unitary(self.player_two_gate, 2, name="player II gate")
        )

    @classmethod
    def from_strategies(cls, alpha, beta, entangler=ENTANGLER_J):
        return cls(local_unitary(alpha), local_unitary(beta), entangler)


def ewl_circuit(spec: EWLCircuitSpec):
    """``E^H (A (x) B) E |00>``."""
    e = spec.entangler
    state = e.conj().T @ np.kron(spec.player_one_gate, spec.player_two_gate) @ e[:, 0]
    return _frozen(state)


def compare_formula_vs_circuit(alpha, beta, entangler=ENTANGLER_J):
    """Distance between the formula state and the circuit state for the same strategies."""
    formula = ewl_formula(alpha, beta)
    circuit = ewl_circuit(EWLCircuitSpec.from_strategies(alpha, beta, entangler))
    d = dist(formula, circuit)
    return {"distance": d, "match": bool(d < NORM_TOL), "formula": formula, "circuit": circuit}


def basis_payoffs(game: Game, entangler=ENTANGLER_J):
    """Payoff of each player at each two-qubit basis ket.

    When the pure profiles ``{I, FLIP}^2`` land on the four basis kets
    bijectively, the ket reached by profile ``(i, j)`` carries that profile's
    payoffs, so restricting both players to ``{I, FLIP}`` gives back the
    classical game. With ``J`` this swaps the two off-diagonal kets:
    ``(I, FLIP)`` ends on ``|10>``. Otherwise (or with ``entangler=None``)
    ``|ij>`` carries the payoffs of profile ``(i, j)``.
    """
    if game.n_players != 2 or game.shape != (2, 2):
        raise ValueError("EWL quantization needs a two-player 2x2 game")
    ket_profile = {k: (k >> 1, k & 1) for k in range(4)}
    if entangler is not None:
        landing = _pure_landing(entangler)
        if landing is not None:
            ket_profile = {k: profile for profile, k in landing.items()}
    return _frozen(np.array([[game.payoff(ket_profile[k], p) for k in range(4)] for p in range(2)]))


def strategy_grid(density, full_phase=False):
    """Grid over local strategies modulo a global phase.

    Returns ``(params, strategies)`` with one row per grid point. The default
    grid has ``density**2`` points ``(theta, phi)``; ``full_phase`` adds the
    phase ``chi`` of the first amplitude for ``density**3`` points.
    """
    if density < 2:
        raise ValueError(f"grid density must be at least 2, got {density}")
    thetas = np.linspace(0.0, np.pi, density)
    phis = np.linspace(0.0, 2 * np.pi, density, endpoint=False)
    axes = [thetas, phis] + ([phis] if full_phase else [])
    params = np.array(list(itertools.product(*axes)))
    chi = params[:, 2] if full_phase else 0.0
    strategies = np.stack(
        [
            np.exp(1j * chi) * np.cos(params[:, 0] / 2),
            np.exp(1j * params[:, 1]) * np.sin(params[:, 0] / 2),
        ],
        axis=1,
    )
    return params, strategies


def _states(strat_one, strat_two, construction, entangler):
    """Quantized states for every pair of strategies, shape ``(m1, m2, 4)``."""
    if construction == "formula":
        a = strat_one[:, None, :]
        b = strat_two[None, :, :]
        return _raw(a[..., 0], a[..., 1], b[..., 0], b[..., 1]) / RAW_NORM
    if construction != "circuit":
        raise ValueError(f"unknown construction {construction!r}")
    e = np.asarray(entangler, dtype=complex)
    start = e[:, 0].reshape(2, 2)

    def gates(s):
        return np.stack([np.stack([s[:, 0], -np.conj(s[:, 1])], 1), np.stack([s[:, 1], np.conj(s[:, 0])], 1)], 1)

    ga = gates(strat_one)
    gb = gates(strat_two)
    # (A (x) B) v  ==  A V B^T  with v reshaped to 2x2
    mid = np.einsum("iab,bc,jdc->ijad", ga, start, gb).reshape(len(ga), len(gb), 4)
    return mid @ e.conj()  # row-vector form of E^H applied to each state


def ewl_equilibrium_scan(
    payoffs,
    grid_density,
    *,
    full_phase=False,
    entangler=ENTANGLER_J,
    construction="circuit",
    strategies=None,
    tol=1e-9,
):
    """Grid probe for Nash equilibria of the quantized game.

    Each player's expected payoff is computed from the measured state; a
    profile is a candidate when neither player can gain more than ``tol``
    by switching to another grid strategy. ``strategies`` replaces the grid
    with a user-chosen restricted class (rows of unit ``(a1, a2)``).

    ``payoffs`` has shape ``(2, 4)``: each player's value at ``|00>..|11>``.
    """
    payoffs = np.asarray(payoffs, dtype=float)
    if payoffs.shape != (2, 4):
        raise ValueError(f"payoffs must have shape (2, 4), got {payoffs.shape}")
    entangler = check_unitary(entangler, 4, name="entangler")
    if strategies is None:
        params, strats = strategy_grid(grid_density, full_phase)
    else:
        strats = np.asarray(strategies, dtype=complex)
        if strats.ndim != 2 or strats.shape[1] != 2:
            raise ValueError("strategies must be an (m, 2) array")
        if np.max(np.abs(np.linalg.norm(strats, axis=1) - 1)) > NORM_TOL:
            raise ValueError("strategies must be unit vectors")
        params = None

    states = _states(strats, strats, construction, entangler)
    probs = np.abs(states) ** 2
    value_one = probs @ payoffs[0]
    value_two = probs @ payoffs[1]
    best_one = value_one.max(axis=0)  # over player I's deviations, per column
    best_two = value_two.max(axis=1)
    arg_one = value_one.argmax(axis=0)
    arg_two = value_two.argmax(axis=1)

    m = len(strats)
    profiles = []
    candidates = []
    for i in range(m):
        for j in range(m):
            gain_one = float(best_one[j] - value_one[i, j])
            gain_two = float(best_two[i] - value_two[i, j])
            is_candidate = gain_one <= tol and gain_two <= tol
            entry = {
                "index": [i, j],
                "expectations": [float(value_one[i, j]), float(value_two[i, j])],
                "candidate": bool(is_candidate),
            }
            if not is_candidate:
                if gain_one >= gain_two:
                    entry["best_deviation"] = {"player": 0, "strategy": int(arg_one[j]), "gain": gain_one}
                else:
                    entry["best_deviation"] = {"player": 1, "strategy": int(arg_two[i]), "gain": gain_two}
            profiles.append(entry)
            if is_candidate:
                candidates.append([i, j])
    return {
        "construction": construction,
        "grid_density": int(grid_density) if strategies is None else None,
        "full_phase": bool(full_phase),
        "n_strategies": m,
        "n_profiles": m * m,
        "strategy_params": None if params is None else params.tolist(),
        "strategies": [[[s.real, s.imag] for s in row] for row in strats],
        "candidates": candidates,
        "profiles": profiles,
    }


def scan_stability(payoffs, density, *, fine_density=None, **kwargs):
    """Run the scan at two densities and compare candidate payoff pairs.

    A coarse candidate is ``stable`` when the fine scan has a candidate with
    the same expectation pair (within ``1e-9``).
    """
    fine_density = fine_density or 2 * density - 1
    coarse = ewl_equilibrium_scan(payoffs, density, **kwargs)
    fine = ewl_equilibrium_scan(payoffs, fine_density, **kwargs)

    def values(report):
        lookup = {tuple(p["index"]): p["expectations"] for p in report["profiles"]}
        return [lookup[tuple(c)] for c in report["candidates"]]

    coarse_vals = values(coarse)
    fine_vals = np.array(values(fine)).reshape(-1, 2)
    stable = [
        bool(fine_vals.size and np.min(np.max(np.abs(fine_vals - np.asarray(v)), axis=1)) < 1e-9)
        for v in coarse_vals
    ]
    return {
        "densities": [density, fine_density],
        "coarse_candidate_values": coarse_vals,
        "fine_candidate_values": fine_vals.tolist(),
        "stable": stable,
    }


def pure_profile_states(entangler=ENTANGLER_J):
    """Circuit states for the four classical profiles ``{I, FLIP}^2``."""
    gates = (IDENTITY, FLIP)
    return {
        (i, j): ewl_circuit(EWLCircuitSpec(gates[i], gates[j], entangler))
        for i in range(2)
        for j in range(2)
    }


def _pure_landing(entangler, atol=NORM_TOL):
    # profile -> basis index, or None when the map is not a bijection
    eye = np.eye(4)
    landing = {}
    for profile, state in pure_profile_states(entangler).items():
        match = [k for k in range(4) if same_ray(state, eye[k], atol)]
        if len(match) != 1:
            return None
        landing[profile] = match[0]
    return landing if sorted(landing.values()) == [0, 1, 2, 3] else None


def recovers_classical_game(entangler=ENTANGLER_J, atol=NORM_TOL):
    """True when the pure profiles land on the four basis kets bijectively."""
    return _pure_landing(entangler, atol) is not None
