"""Finite normal-form games, pure Nash equilibria and Pareto optimality."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exceptions import GameFormatError

__all__ = [
    "Game",
    "pure_nash_equilibria",
    "pareto_optimal_outcomes",
    "builtin_games",
    "PD_PAYOFFS",
]

# Prisoner's Dilemma default payoffs (temptation, reward, punishment, sucker).
# Any T > R > P > S works; these are the textbook values.
PD_PAYOFFS = {"T": 5.0, "R": 3.0, "P": 1.0, "S": 0.0}


@dataclass(frozen=True)
class Game:
    """A finite game ``S_1 x ... x S_n -> O`` with numeric payoffs per outcome.

    ``outcome_table`` maps every strategy profile (a tuple of strategy
    indices) to an outcome id, and ``payoffs`` maps each outcome id to one
    value per player. Larger values are preferred. Only the order of a
    player's values matters for pure-strategy analysis.
    """

    players: tuple
    strategies: tuple
    outcome_table: Mapping[tuple, str]
    payoffs: Mapping[str, tuple]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        players = tuple(str(p) for p in self.players)
        strategies = tuple(tuple(str(s) for s in ss) for ss in self.strategies)
        if not players:
            raise ValueError("a game needs at least one player")
        if len(strategies) != len(players):
            raise ValueError("one strategy list per player is required")
        if any(len(ss) == 0 for ss in strategies):
            raise ValueError("every player needs at least one strategy")
        table = {tuple(int(i) for i in k): str(v) for k, v in dict(self.outcome_table).items()}
        payoffs = {str(k): tuple(float(x) for x in v) for k, v in dict(self.payoffs).items()}
        for profile in itertools.product(*(range(len(ss)) for ss in strategies)):
            if profile not in table:
                raise ValueError(f"outcome_table has no entry for profile {profile}")
        if len(table) != int(np.prod([len(ss) for ss in strategies])):
            raise ValueError("outcome_table has profiles outside the strategy sets")
        for outcome in table.values():
            if outcome not in payoffs:
                raise ValueError(f"outcome {outcome!r} has no payoffs")
            if len(payoffs[outcome]) != len(players):
                raise ValueError(f"outcome {outcome!r} needs {len(players)} payoffs")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "strategies", strategies)
        object.__setattr__(self, "outcome_table", table)
        object.__setattr__(self, "payoffs", payoffs)

    @property
    def n_players(self):
        return len(self.players)

    @property
    def shape(self):
        return tuple(len(ss) for ss in self.strategies)

    def profiles(self):
        """All strategy profiles in lexicographic order."""
        return list(itertools.product(*(range(n) for n in self.shape)))

    def outcome(self, profile):
        return self.outcome_table[tuple(profile)]

    def payoff(self, profile, player):
        return self.payoffs[self.outcome(profile)][player]

    def payoff_array(self, player):
        """Payoffs of ``player`` as an array indexed by strategy profile."""
        arr = np.empty(self.shape)
        for profile in self.profiles():
            arr[profile] = self.payoff(profile, player)
        return arr

    def reachable_outcomes(self):
        """Outcome ids that some profile produces, in ``payoffs`` order."""
        reached = set(self.outcome_table.values())
        return [o for o in self.payoffs if o in reached]

    def profile_names(self, profile):
        return [self.strategies[i][s] for i, s in enumerate(profile)]

    def with_payoffs(self, payoffs):
        return Game(self.players, self.strategies, self.outcome_table, payoffs, self.name)

    # -- file format ------------------------------------------------------

    def to_dict(self):
        def nest(prefix):
            depth = len(prefix)
            if depth == self.n_players:
                return self.outcome_table[tuple(prefix)]
            return [nest(prefix + [i]) for i in range(self.shape[depth])]

        doc = {}
        if self.name:
            doc["name"] = self.name
        doc["players"] = list(self.players)
        doc["strategies"] = [list(ss) for ss in self.strategies]
        doc["outcomes"] = nest([])
        doc["payoffs"] = {k: list(v) for k, v in self.payoffs.items()}
        return doc

    @classmethod
    def from_dict(cls, doc):
        """Build a game from the JSON document layout.

        Raises :class:`GameFormatError` naming the offending location.
        """
        if not isinstance(doc, dict):
            raise GameFormatError("$", "expected a JSON object")
        for key in ("players", "strategies", "outcomes", "payoffs"):
            if key not in doc:
                raise GameFormatError(key, "missing required field")
        players = doc["players"]
        if not isinstance(players, list) or not players or not all(isinstance(p, str) for p in players):
            raise GameFormatError("players", "expected a non-empty list of names")
        strategies = doc["strategies"]
        if not isinstance(strategies, list) or len(strategies) != len(players):
            raise GameFormatError("strategies", f"expected {len(players)} strategy lists")
        for i, ss in enumerate(strategies):
            if not isinstance(ss, list) or not ss or not all(isinstance(s, str) for s in ss):
                raise GameFormatError(f"strategies[{i}]", "expected a non-empty list of names")
        shape = [len(ss) for ss in strategies]

        table = {}

        def walk(node, prefix):
            path = "outcomes" + "".join(f"[{i}]" for i in prefix)
            depth = len(prefix)
            if depth == len(shape):
                if not isinstance(node, str):
                    raise GameFormatError(path, "expected an outcome id string")
                table[tuple(prefix)] = node
                return
            if not isinstance(node, list) or len(node) != shape[depth]:
                raise GameFormatError(path, f"expected a list of length {shape[depth]}")
            for i, child in enumerate(node):
                walk(child, prefix + [i])

        walk(doc["outcomes"], [])

        payoffs = doc["payoffs"]
        if not isinstance(payoffs, dict):
            raise GameFormatError("payoffs", "expected an object mapping outcome id to values")
        for outcome, values in payoffs.items():
            path = f"payoffs.{outcome}"
            if not isinstance(values, list) or len(values) != len(players):
                raise GameFormatError(path, f"expected {len(players)} numbers")
            for j, v in enumerate(values):
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
                    raise GameFormatError(f"{path}[{j}]", "expected a finite number")
        for profile, outcome in table.items():
            if outcome not in payoffs:
                path = "outcomes" + "".join(f"[{i}]" for i in profile)
                raise GameFormatError(path, f"outcome {outcome!r} has no entry in payoffs")
        name = doc.get("name", "")
        return cls(players, strategies, table, payoffs, name=name if isinstance(name, str) else "")


def _deviations(shape, profile, player):
    for alt in range(shape[player]):
        if alt != profile[player]:
            dev = list(profile)
            dev[player] = alt
            yield tuple(dev)


def pure_nash_equilibria(game: Game):
    """Profiles where no player gains strictly by a unilateral deviation.

    Ties do not break an equilibrium. Returned in lexicographic order.
    """
    arrays = [game.payoff_array(p) for p in range(game.n_players)]
    found = []
    for profile in game.profiles():
        stable = True
        for player, arr in enumerate(arrays):
            current = arr[profile]
            if any(arr[dev] > current for dev in _deviations(game.shape, profile, player)):
                stable = False
                break
        if stable:
            found.append(profile)
    return found


def pareto_optimal_outcomes(game: Game):
    """Reachable outcomes not Pareto-dominated by another reachable outcome.

    Under this (standard) definition every outcome of a zero-sum game is
    Pareto optimal, Matching Pennies included.
    """
    outcomes = game.reachable_outcomes()
    values = {o: np.asarray(game.payoffs[o]) for o in outcomes}
    optimal = []
    for o in outcomes:
        dominated = any(
            np.all(values[other] >= values[o]) and np.any(values[other] > values[o])
            for other in outcomes
            if other != o
        )
        if not dominated:
            optimal.append(o)
    return optimal


def _two_by_two(name, strategies, payoffs: Sequence[Sequence[float]]):
    # Outcome layout shared by all builtins: o1=(0,0), o2=(1,0), o3=(0,1), o4=(1,1).
    table = {(0, 0): "o1", (1, 0): "o2", (0, 1): "o3", (1, 1): "o4"}
    pay = {f"o{i + 1}": tuple(v) for i, v in enumerate(payoffs)}
    return Game(("I", "II"), strategies, table, pay, name=name)


def builtin_games():
    """The catalogue: ``G`` (dove/hawk), Matching Pennies and Prisoner's Dilemma.

    ``G`` stores the rank encoding of the ordinal preferences
    I: o2 > o1 > o4 > o3 and II: o3 > o1 > o4 > o2.
    """
    t, r, p, s = (PD_PAYOFFS[k] for k in "TRPS")
    return {
        "G": _two_by_two(
            "G",
            (("D", "H"), ("D", "H")),
            [(2, 2), (3, 0), (0, 3), (1, 1)],
        ),
        "matching_pennies": _two_by_two(
            "matching_pennies",
            (("H", "T"), ("H", "T")),
            [(1, -1), (-1, 1), (-1, 1), (1, -1)],
        ),
        "prisoners_dilemma": _two_by_two(
            "prisoners_dilemma",
            (("C", "D"), ("C", "D")),
            [(r, r), (t, s), (s, t), (p, p)],
        ),
    }
