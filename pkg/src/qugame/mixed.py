"""Mixed extensions of 2x2 games and stochastic games over the 3-simplex.

Distributions over the four outcomes of a 2x2 game are written in the
order produced by :func:`mixed_play`::

    ((p, 1-p), (q, 1-q))  ->  (pq, (1-p)q, p(1-q), (1-p)(1-q))

so component ``k`` belongs to profile ``VERTEX_PROFILES[k]`` (player I's
strategy index first). All value vectors in this module follow that order.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import _frozen, check_distribution
from .classical import Game
from .exceptions import DimensionMismatch

__all__ = [
    "VERTEX_PROFILES",
    "expectation",
    "mixed_play",
    "simplex_values",
    "MixedExtension",
    "recover_game",
    "mixed_nash_2x2",
    "is_mixed_equilibrium",
    "ExpectationPreference",
    "stochastic_game_value",
    "DegenerateGameWarning",
]

VERTEX_PROFILES = ((0, 0), (1, 0), (0, 1), (1, 1))

BR_TOL = 1e-9


class DegenerateGameWarning(UserWarning):
    pass


def expectation(p, values):
    """Expected value ``sum_i p_i a_i``."""
    p = check_distribution(p)
    values = np.asarray(values, dtype=float)
    if values.shape != p.shape:
        raise DimensionMismatch(f"length mismatch: {p.shape[0]} weights, {values.shape[0]} values")
    return float(p @ values)


def mixed_play(p_one, p_two):
    """Product distribution of two independent mixed strategies."""
    p_one = check_distribution(p_one, 2, name="player I strategy")
    p_two = check_distribution(p_two, 2, name="player II strategy")
    p, q = p_one[0], p_two[0]
    return _frozen(np.array([p * q, (1 - p) * q, p * (1 - q), (1 - p) * (1 - q)]))


def _require_2x2(game):
    if game.n_players != 2 or game.shape != (2, 2):
        raise ValueError(f"expected a two-player 2x2 game, got shape {game.shape}")


def simplex_values(game: Game, player):
    """``player``'s payoff at each simplex vertex, in :func:`mixed_play` order."""
    _require_2x2(game)
    return _frozen(np.array([game.payoff(prof, player) for prof in VERTEX_PROFILES]))


@dataclass(frozen=True)
class MixedExtension:
    """The map ``Delta_1 x Delta_1 -> Delta_3`` built on top of a 2x2 game."""

    game: Game

    def __post_init__(self):
        _require_2x2(self.game)

    @property
    def vertex_outcomes(self):
        return tuple(self.game.outcome(prof) for prof in VERTEX_PROFILES)

    def __call__(self, p_one, p_two):
        return mixed_play(p_one, p_two)

    def value(self, p_one, p_two, player):
        return expectation(self(p_one, p_two), simplex_values(self.game, player))


def recover_game(extension: MixedExtension):
    """Rebuild the underlying game by restricting to degenerate distributions."""
    game = extension.game
    pure = (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    table = {}
    for i in range(2):
        for j in range(2):
            dist = extension(pure[i], pure[j])
            vertex = int(np.flatnonzero(dist == 1.0)[0])
            table[(i, j)] = extension.vertex_outcomes[vertex]
    return Game(game.players, game.strategies, table, game.payoffs, name=game.name)


def _payoff_matrices(game):
    return game.payoff_array(0), game.payoff_array(1)


def is_mixed_equilibrium(game: Game, p_one, p_two, tol=BR_TOL):
    """Best-response check of a mixed profile against every pure deviation."""
    a, b = _payoff_matrices(game)
    x = np.asarray(p_one, dtype=float)
    y = np.asarray(p_two, dtype=float)
    value_one = x @ a @ y
    value_two = x @ b @ y
    return bool(np.max(a @ y) <= value_one + tol and np.max(x @ b) <= value_two + tol)


def mixed_nash_2x2(game: Game):
    """All equilibria of a 2x2 game found by support enumeration.

    Pure profiles are tested directly; the fully mixed profile comes from
    the two indifference equations and is kept when it lies strictly inside
    the unit square. Strategies are returned as ``(p, 1-p)`` arrays where
    ``p`` weights the first strategy.
    """
    _require_2x2(game)
    a, b = _payoff_matrices(game)
    found = []
    eye = np.eye(2)
    for i in range(2):
        for j in range(2):
            if is_mixed_equilibrium(game, eye[i], eye[j]):
                found.append((_frozen(eye[i]), _frozen(eye[j])))

    # q makes player I indifferent; p makes player II indifferent
    den_q = a[0, 0] - a[0, 1] - a[1, 0] + a[1, 1]
    den_p = b[0, 0] - b[1, 0] - b[0, 1] + b[1, 1]
    if den_q == 0 or den_p == 0:
        warnings.warn(
            "indifference system is singular; only pure-support equilibria reported",
            DegenerateGameWarning,
            stacklevel=2,
        )
    else:
        q = (a[1, 1] - a[0, 1]) / den_q
        p = (b[1, 1] - b[1, 0]) / den_p
        if 0 < p < 1 and 0 < q < 1:
            x = np.array([p, 1 - p])
            y = np.array([q, 1 - q])
            if is_mixed_equilibrium(game, x, y):
                found.append((_frozen(x), _frozen(y)))
    if not found:
        raise RuntimeError("support enumeration found no equilibrium; this is a bug")
    return found


@dataclass(frozen=True)
class ExpectationPreference:
    """Per-player values over the four simplex vertices, with no game behind them."""

    values: tuple

    def __post_init__(self):
        vals = tuple(tuple(float(v) for v in row) for row in self.values)
        if any(len(row) != 4 for row in vals):
            raise DimensionMismatch("each player needs exactly four vertex values")
        object.__setattr__(self, "values", vals)


def stochastic_game_value(p_one, p_two, preference: ExpectationPreference, player):
    """Expected value to ``player`` of the product distribution."""
    return expectation(mixed_play(p_one, p_two), preference.values[player])
