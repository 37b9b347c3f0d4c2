"""Classical, mixed, quantized and quantum two-player games."""

__version__ = "0.1.0"

from .classical import Game, builtin_games, pareto_optimal_outcomes, pure_nash_equilibria
from .csd import CSDFactors, Circuit, ControlledGate, circuit_to_unitary, csd4, factors_to_circuit
from .engine import (
    DistancePreference,
    LocalUnitaryGame,
    best_response_I,
    best_response_II,
    closest_in_image,
    exact_equilibria,
    nash_check,
    nash_iterate,
    optimality_check,
    play,
    prefers,
)
from .estimators import CSDTransformer, MixedNashSolver, QuantumNashSolver
from .ewl import ewl_circuit, ewl_equilibrium_scan, ewl_formula, ewl_formula_raw
from .exceptions import (
    GameFormatError,
    Indifferent,
    NonUnitaryInput,
    NormalizationFailure,
    QugameError,
    ZeroProjection,
)
from .hilbert import Subspace, dist, inner_product, measure, project_closest, random_ket, random_unitary, tensor
from .mechanism import synthesize_for_equilibrium
from .mixed import expectation, mixed_nash_2x2, mixed_play, recover_game, stochastic_game_value

__all__ = [
    "best_response_I",
    "best_response_II",
    "builtin_games",
    "Circuit",
    "circuit_to_unitary",
    "closest_in_image",
    "ControlledGate",
    "csd4",
    "CSDFactors",
    "CSDTransformer",
    "dist",
    "DistancePreference",
    "ewl_circuit",
    "ewl_equilibrium_scan",
    "ewl_formula",
    "ewl_formula_raw",
    "exact_equilibria",
    "expectation",
    "factors_to_circuit",
    "Game",
    "GameFormatError",
    "Indifferent",
    "inner_product",
    "LocalUnitaryGame",
    "measure",
    "mixed_nash_2x2",
    "mixed_play",
    "MixedNashSolver",
    "nash_check",
    "nash_iterate",
    "NonUnitaryInput",
    "NormalizationFailure",
    "optimality_check",
    "pareto_optimal_outcomes",
    "play",
    "prefers",
    "project_closest",
    "pure_nash_equilibria",
    "QuantumNashSolver",
    "QugameError",
    "random_ket",
    "random_unitary",
    "recover_game",
    "stochastic_game_value",
    "Subspace",
    "synthesize_for_equilibrium",
    "tensor",
    "ZeroProjection",
]
