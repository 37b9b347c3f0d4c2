"""Quantum games with distance-based preferences.

A :class:`LocalUnitaryGame` sends the players' qubit strategies ``x`` and
``y`` to ``U (x (x) y)``. Each player wants the resulting state to be as
close as possible, in Fubini-Study distance, to their own target ket.

Best responses have a closed form. For fixed ``y`` the state is linear in
``x``: ``<t, U(x (x) y)> = sum_i x_i w_i`` with ``w_i = <t, U(e_i (x) y)>``.
By Cauchy-Schwarz, ``x = conj(w) / |w|`` attains the maximum overlap
``|w|``. That makes it the global minimiser of the distance.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import _frozen, check_ket, check_unitary
from .exceptions import Indifferent
from .hilbert import Subspace, basis, dist, project_closest, tensor

__all__ = [
    "DistancePreference",
    "LocalUnitaryGame",
    "EquilibriumCandidate",
    "NashCheck",
    "IterationResult",
    "play",
    "prefers",
    "best_response",
    "best_response_I",
    "best_response_II",
    "nash_check",
    "nash_iterate",
    "overlap_matrices",
    "exact_equilibria",
    "optimality_check",
    "closest_in_image",
    "CONVERGED",
    "CYCLED",
    "MAX_ITER",
]

PREFERENCE_MARGIN = 1e-12
INDIFFERENCE_FLOOR = 1e-12
SLACK_TOL = 1e-9

CONVERGED = "converged"
CYCLED = "cycled"
MAX_ITER = "max_iter"


@dataclass(frozen=True, eq=False)
class DistancePreference:
    """One target ket per player; closer to the target is better.

    The default targets are ``|01>`` for player I and ``|10>`` for player II
    (``b_2`` and ``b_3``), a strictly competitive pair.
    """

    targets: tuple = field(default_factory=lambda: (basis(4, 1), basis(4, 2)))

    def __post_init__(self):
        targets = tuple(check_ket(t, 4, name=f"target {i}") for i, t in enumerate(self.targets))
        if len(targets) != 2:
            raise ValueError("exactly two targets are required")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def from_indices(cls, index_one, index_two):
        """Targets given as basis indices ``1..4`` (``b_1..b_4``)."""
        for idx in (index_one, index_two):
            if not 1 <= idx <= 4:
                raise ValueError(f"basis index must be in 1..4, got {idx}")
        return cls((basis(4, index_one - 1), basis(4, index_two - 1)))


@dataclass(frozen=True, eq=False)
class LocalUnitaryGame:
    unitary: np.ndarray
    preference: DistancePreference = field(default_factory=DistancePreference)

    def __post_init__(self):
        object.__setattr__(self, "unitary", check_unitary(self.unitary, 4, name="U"))

    def target(self, player):
        return self.preference.targets[player]


@dataclass(frozen=True, eq=False)
class EquilibriumCandidate:
    x_star: np.ndarray
    y_star: np.ndarray
    Q: np.ndarray
    distances: tuple

    def to_dict(self):
        from .io import ket_to_json

        return {
            "x_star": ket_to_json(self.x_star),
            "y_star": ket_to_json(self.y_star),
            "Q": ket_to_json(self.Q),
            "distances": list(self.distances),
        }


@dataclass(frozen=True)
class NashCheck:
    is_equilibrium: bool
    slack_I: float
    slack_II: float


@dataclass(frozen=True, eq=False)
class IterationResult:
    status: str
    candidate: EquilibriumCandidate
    iterations: int
    trace: list

    @property
    def converged(self):
        return self.status == CONVERGED


def play(game: LocalUnitaryGame, x, y):
    """``U (x (x) y)``."""
    return _frozen(game.unitary @ tensor(x, y))


def prefers(preference: DistancePreference, player, q, p):
    """Does ``player`` strictly prefer state ``q`` to state ``p``?"""
    target = preference.targets[player]
    return dist(q, target) < dist(p, target) - PREFERENCE_MARGIN


def _response_weights(game, player, other):
    # w_i = <t, U(e_i (x) y)> for player I, <t, U(x (x) e_i)> for player II
    target = game.target(player)
    eye = np.eye(2)
    if player == 0:
        images = [game.unitary @ np.kron(eye[i], other) for i in range(2)]
    else:
        images = [game.unitary @ np.kron(other, eye[i]) for i in range(2)]
    return np.array([np.vdot(target, img) for img in images])


def best_response(game: LocalUnitaryGame, player, other):
    """Globally optimal reply of ``player`` to the opponent's ``other``.

    Returns ``(strategy, distance)``. Raises :class:`Indifferent` when the
    target cannot be approached at all (every reply sits at ``pi/2``).
    """
    other = check_ket(other, 2, name="opponent strategy")
    w = _response_weights(game, player, other)
    norm = float(np.linalg.norm(w))
    if norm <= INDIFFERENCE_FLOOR:
        raise Indifferent(f"player {player} cannot reach the target against this strategy")
    strategy = _frozen(np.conj(w) / norm)
    if player == 0:
        q = game.unitary @ np.kron(strategy, other)
    else:
        q = game.unitary @ np.kron(other, strategy)
    return strategy, dist(q, game.target(player))


def best_response_I(game, y):
    return best_response(game, 0, y)


def best_response_II(game, x):
    return best_response(game, 1, x)


def _best_distance(game, player, other):
    try:
        return best_response(game, player, other)[1]
    except Indifferent:
        return np.pi / 2


def nash_check(game: LocalUnitaryGame, x_star, y_star, tol=SLACK_TOL):
    """Exact equilibrium test; slack is achieved minus best attainable distance."""
    q = play(game, x_star, y_star)
    slack_one = dist(q, game.target(0)) - _best_distance(game, 0, y_star)
    slack_two = dist(q, game.target(1)) - _best_distance(game, 1, x_star)
    return NashCheck(bool(slack_one <= tol and slack_two <= tol), float(slack_one), float(slack_two))


def _candidate(game, x, y):
    q = play(game, x, y)
    return EquilibriumCandidate(
        _frozen(np.array(x)), _frozen(np.array(y)), q, (dist(q, game.target(0)), dist(q, game.target(1)))
    )


def _moved(a, b):
    return 1.0 - abs(np.vdot(a, b))


def nash_iterate(game: LocalUnitaryGame, x0, y0, max_iter=1000, tol=1e-8, slack_tol=SLACK_TOL):
    """Alternating best-response dynamics.

    One round replaces ``x`` by player I's best response to ``y`` and then
    ``y`` by player II's best response to the new ``x``. An indifferent
    player keeps the current strategy. The run is ``converged`` when
    neither strategy moves by more than ``tol`` (as ``1 - |<new, old>|``)
    and :func:`nash_check` confirms both slacks are within ``slack_tol``.
    It is ``cycled`` when a state from two or more rounds back reappears.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    x = check_ket(x0, 2, name="x0")
    y = check_ket(y0, 2, name="y0")
    history = [(x, y)]
    trace = []
    status = MAX_ITER
    for it in range(1, max_iter + 1):
        try:
            x_new = best_response(game, 0, y)[0]
        except Indifferent:
            x_new = x
        try:
            y_new = best_response(game, 1, x_new)[0]
        except Indifferent:
            y_new = y
        q = play(game, x_new, y_new)
        move = max(_moved(x_new, x), _moved(y_new, y))
        trace.append(
            {
                "round": it,
                "distances": [dist(q, game.target(0)), dist(q, game.target(1))],
                "move": move,
            }
        )
        x, y = x_new, y_new
        if move < tol:
            check = nash_check(game, x, y, slack_tol)
            if check.is_equilibrium:
                status = CONVERGED
                break
        elif any(_moved(x, hx) < tol and _moved(y, hy) < tol for hx, hy in history[:-1]):
            status = CYCLED
            break
        history.append((x, y))
    return IterationResult(status, _candidate(game, x, y), it, trace)


def overlap_matrices(game: LocalUnitaryGame):
    """``A[i, j] = <t_I, U(e_i (x) e_j)>`` and the same ``B`` for player II.

    Player I's overlap is ``|x^T A y|`` and player II's is ``|x^T B y|``.
    """
    a = (game.target(0).conj() @ game.unitary).reshape(2, 2)
    b = (game.target(1).conj() @ game.unitary).reshape(2, 2)
    return a, b


def exact_equilibria(game: LocalUnitaryGame, tol=SLACK_TOL):
    """Equilibria read off the eigenvectors of ``B^H A``.

    A full best-response round maps ``y`` to a multiple of ``B^H A y``, so
    every fixed point has ``y`` an eigenvector of ``B^H A``. Each eigenvector
    (paired with player I's best response to it) is kept when
    :func:`nash_check` accepts it.

    With orthogonal targets ``B^H A`` is traceless. Its eigenvalues are then
    ``+-lambda``, so :func:`nash_iterate` started off an eigenvector
    alternates with period two and never settles.
    """
    a, b = overlap_matrices(game)
    _, vecs = np.linalg.eig(b.conj().T @ a)
    found = []
    for k in range(vecs.shape[1]):
        y = vecs[:, k] / np.linalg.norm(vecs[:, k])
        try:
            x = best_response(game, 0, y)[0]
        except Indifferent:
            x = np.array([1.0, 0.0], dtype=complex)
        if nash_check(game, x, y, tol).is_equilibrium and not any(
            _moved(x, c.x_star) < tol and _moved(y, c.y_star) < tol for c in found
        ):
            found.append(_candidate(game, x, y))
    return found


def optimality_check(game: LocalUnitaryGame, candidate: EquilibriumCandidate, tol=SLACK_TOL):
    """Necessary condition: each achieved distance equals the best attainable one."""
    q = play(game, candidate.x_star, candidate.y_star)
    players = []
    for player, other in ((0, candidate.y_star), (1, candidate.x_star)):
        achieved = dist(q, game.target(player))
        best = _best_distance(game, player, other)
        players.append({"achieved": achieved, "best_response": best, "pass": bool(achieved - best <= tol)})
    return {"pass": all(p["pass"] for p in players), "players": players}


def closest_in_image(linear_map, domain: Subspace, target):
    """Closest point of the image of ``domain`` under ``linear_map`` to ``target``.

    The image of a subspace under a linear map is a subspace, so the
    minimiser exists and is unique unless the target is orthogonal to it.
    """
    m = np.asarray(linear_map, dtype=complex)
    images = domain.basis_matrix @ m.T
    return project_closest(Subspace.span(images), target)
