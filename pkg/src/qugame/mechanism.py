"""Mechanism design for quantum games: decompose ``U`` and look for equilibria."""
from __future__ import annotations

import numpy as np

from ._validation import check_ket, check_unitary
from .config import DEFAULT_SEED
from .csd import circuit_to_unitary, csd4, factors_to_circuit
from .engine import (
    DistancePreference,
    LocalUnitaryGame,
    exact_equilibria,
    nash_check,
    nash_iterate,
    optimality_check,
)
from .hilbert import random_ket
from .io import circuit_to_json, matrix_to_json

__all__ = ["seed_strategies", "synthesize_for_equilibrium", "candidate_report"]


def seed_strategies(n_seeds, seed=DEFAULT_SEED):
    """``n_seeds`` deterministic pairs of random qubit strategies."""
    base = int(seed) * 1_000_003
    return [(random_ket(2, base + 2 * k), random_ket(2, base + 2 * k + 1)) for k in range(n_seeds)]


def candidate_report(game, candidate):
    check = nash_check(game, candidate.x_star, candidate.y_star)
    return {
        "candidate": candidate.to_dict(),
        "nash_check": {
            "is_equilibrium": check.is_equilibrium,
            "slack_I": check.slack_I,
            "slack_II": check.slack_II,
        },
        "optimality": optimality_check(game, candidate),
    }


def synthesize_for_equilibrium(
    target_one, target_two, unitary, *, n_seeds=4, seed=DEFAULT_SEED, max_iter=1000, tol=1e-8
):
    """Decompose ``unitary`` into the six-gate circuit and search for equilibria.

    Best-response iteration runs from ``n_seeds`` seeded starting points.
    The equilibria of :func:`~qugame.engine.exact_equilibria` are reported
    next to those runs.
    """
    unitary = check_unitary(unitary, 4, name="U")
    pref = DistancePreference((check_ket(target_one, 4), check_ket(target_two, 4)))
    game = LocalUnitaryGame(unitary, pref)
    factors = csd4(unitary)
    circuit = factors_to_circuit(factors)
    rebuilt = circuit_to_unitary(circuit)

    runs = []
    for k, (x0, y0) in enumerate(seed_strategies(n_seeds, seed)):
        result = nash_iterate(game, x0, y0, max_iter=max_iter, tol=tol)
        entry = {"seed_index": k, "status": result.status, "iterations": result.iterations}
        entry.update(candidate_report(game, result.candidate))
        runs.append(entry)

    return {
        "factors": {
            "theta1": factors.theta1,
            "theta2": factors.theta2,
            "L0": matrix_to_json(factors.L0),
            "L1": matrix_to_json(factors.L1),
            "R0": matrix_to_json(factors.R0),
            "R1": matrix_to_json(factors.R1),
        },
        "circuit": circuit_to_json(circuit),
        "reconstruction_error": float(np.max(np.abs(rebuilt - unitary))),
        "runs": runs,
        "exact_equilibria": [candidate_report(game, c) for c in exact_equilibria(game)],
    }
