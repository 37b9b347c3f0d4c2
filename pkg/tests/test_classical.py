import itertools

import numpy as np
import pytest

from qugame.classical import Game, builtin_games, pareto_optimal_outcomes, pure_nash_equilibria
from qugame.exceptions import GameFormatError

GAMES = builtin_games()


def _brute_force_is_nash(game, profile):
    for player in range(game.n_players):
        for alt in range(game.shape[player]):
            dev = list(profile)
            dev[player] = alt
            if game.payoff(tuple(dev), player) > game.payoff(profile, player):
                return False
    return True


def _random_game(rng, shape, n_values=4):
    strategies = [[f"s{i}" for i in range(n)] for n in shape]
    table = {}
    payoffs = {}
    for k, profile in enumerate(itertools.product(*(range(n) for n in shape))):
        table[profile] = f"o{k}"
        payoffs[f"o{k}"] = tuple(rng.integers(0, n_values, size=len(shape)).astype(float))
    return Game([f"P{i}" for i in range(len(shape))], strategies, table, payoffs)


def test_builtin_g_outcome_table():
    g = GAMES["G"]
    names = {tuple(g.profile_names(p)): g.outcome(p) for p in g.profiles()}
    assert names == {("D", "D"): "o1", ("D", "H"): "o3", ("H", "D"): "o2", ("H", "H"): "o4"}


def test_builtin_g_ordinal_ranks():
    g = GAMES["G"]
    rank_one = sorted(g.payoffs, key=lambda o: -g.payoffs[o][0])
    rank_two = sorted(g.payoffs, key=lambda o: -g.payoffs[o][1])
    assert rank_one == ["o2", "o1", "o4", "o3"]
    assert rank_two == ["o3", "o1", "o4", "o2"]


def test_g_solution():
    g = GAMES["G"]
    assert [g.profile_names(p) for p in pure_nash_equilibria(g)] == [["H", "H"]]
    assert "o1" in pareto_optimal_outcomes(g)
    assert "o4" not in pareto_optimal_outcomes(g)


def test_matching_pennies():
    mp = GAMES["matching_pennies"]
    assert pure_nash_equilibria(mp) == []
    for o, (u1, u2) in mp.payoffs.items():
        assert u1 == -u2 and abs(u1) == 1
    # zero-sum: every outcome is Pareto optimal under the standard definition
    assert pareto_optimal_outcomes(mp) == ["o1", "o2", "o3", "o4"]


def test_prisoners_dilemma():
    pd = GAMES["prisoners_dilemma"]
    assert [pd.profile_names(p) for p in pure_nash_equilibria(pd)] == [["D", "D"]]
    assert sorted(pareto_optimal_outcomes(pd)) == ["o1", "o2", "o3"]


def test_single_profile_game():
    g = Game(["A", "B"], [["x"], ["y"]], {(0, 0): "o"}, {"o": (0, 0)})
    assert pure_nash_equilibria(g) == [(0, 0)]


def test_identical_payoffs_make_everything_pareto():
    g = Game(["A", "B"], [["a", "b"], ["c", "d"]],
             {(0, 0): "w", (0, 1): "x", (1, 0): "y", (1, 1): "z"},
             {"w": (1, 1), "x": (2, 2), "y": (2, 2), "z": (3, 3)})
    # identical across players, but not across outcomes: only z survives
    assert pareto_optimal_outcomes(g) == ["z"]
    flat = g.with_payoffs({k: (5, 5) for k in "wxyz"})
    assert pareto_optimal_outcomes(flat) == ["w", "x", "y", "z"]


def test_strict_dominance_pareto():
    g = Game(["A", "B"], [["a", "b"], ["c"]], {(0, 0): "good", (1, 0): "bad"}, {"good": (1, 1), "bad": (0, 0)})
    assert pareto_optimal_outcomes(g) == ["good"]


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("shape", [(2, 2), (3, 2), (2, 2, 2), (3, 3)])
def test_equilibria_match_brute_force(seed, shape):
    rng = np.random.default_rng(seed)
    g = _random_game(rng, shape)
    expected = [p for p in g.profiles() if _brute_force_is_nash(g, p)]
    assert pure_nash_equilibria(g) == expected
    assert pareto_optimal_outcomes(g)


@pytest.mark.parametrize("seed", range(10))
def test_nash_set_is_ordinal(seed):
    rng = np.random.default_rng(100 + seed)
    g = _random_game(rng, (3, 3))
    base = pure_nash_equilibria(g)
    transforms = [np.exp, lambda v: v**3, lambda v: 7 * v - 2, np.arctan, lambda v: np.log1p(v + 1)]
    for player in range(2):
        for f in transforms:
            pay = {o: tuple(f(v) if i == player else v for i, v in enumerate(vals)) for o, vals in g.payoffs.items()}
            assert pure_nash_equilibria(g.with_payoffs(pay)) == base


def test_round_trip_through_dict():
    for g in GAMES.values():
        again = Game.from_dict(g.to_dict())
        assert again == g


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d.pop("players"), "players"),
        (lambda d: d.__setitem__("strategies", [["D", "H"]]), "strategies"),
        (lambda d: d["outcomes"][1].pop(), "outcomes[1]"),
        (lambda d: d["outcomes"][0].__setitem__(1, 3), "outcomes[0][1]"),
        (lambda d: d["payoffs"].pop("o4"), "outcomes[1][1]"),
        (lambda d: d["payoffs"].__setitem__("o1", [1]), "payoffs.o1"),
        (lambda d: d["payoffs"].__setitem__("o1", [1, "x"]), "payoffs.o1[1]"),
    ],
)
def test_parse_errors_name_the_location(mutate, where):
    doc = GAMES["G"].to_dict()
    mutate(doc)
    with pytest.raises(GameFormatError) as info:
        Game.from_dict(doc)
    assert info.value.path == where
