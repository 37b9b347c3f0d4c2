"""scikit-learn style wrappers around the solvers.

The estimators follow the usual contract: constructor arguments are
hyper-parameters only, ``fit`` returns ``self`` and stores results in
attributes with a trailing underscore, and ``get_params`` / ``set_params``
come from :class:`sklearn.base.BaseEstimator`.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_ket, check_unitary
from .classical import Game
from .config import DEFAULT_SEED
from .csd import circuit_to_unitary, csd4, factors_to_circuit
from .engine import DistancePreference, LocalUnitaryGame, exact_equilibria, nash_iterate
from .mechanism import seed_strategies
from .mixed import mixed_nash_2x2

__all__ = ["MixedNashSolver", "QuantumNashSolver", "CSDTransformer"]


def _check_kets(X, dim):
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    if X.ndim != 2 or X.shape[1] != dim:
        raise ValueError(f"expected an array of shape (n, {dim}), got {X.shape}")
    return np.stack([check_ket(row, dim, name=f"row {i}") for i, row in enumerate(X)])


class MixedNashSolver(BaseEstimator):
    """Support enumeration for 2x2 games.

    Attributes
    ----------
    equilibria_ : list of (ndarray, ndarray)
    """

    def fit(self, game: Game, y=None):
        self.equilibria_ = mixed_nash_2x2(game)
        self.n_equilibria_ = len(self.equilibria_)
        return self


class QuantumNashSolver(BaseEstimator):
    """Equilibria of ``(x, y) -> U (x (x) y)`` under distance-to-target preferences.

    Parameters
    ----------
    target_I, target_II : int
        Basis indices ``1..4`` of the players' preferred kets.
    n_seeds : int
        Number of seeded best-response runs.
    max_iter, tol : iteration limits passed to :func:`~qugame.engine.nash_iterate`.
    random_state : int
        Seed for the starting strategies.
    """

    def __init__(self, target_I=2, target_II=3, n_seeds=4, max_iter=1000, tol=1e-8, random_state=DEFAULT_SEED):
        self.target_I = target_I
        self.target_II = target_II
        self.n_seeds = n_seeds
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def fit(self, U, y=None):
        pref = DistancePreference.from_indices(self.target_I, self.target_II)
        self.game_ = LocalUnitaryGame(check_unitary(U, 4, name="U"), pref)
        self.runs_ = [
            nash_iterate(self.game_, x0, y0, max_iter=self.max_iter, tol=self.tol)
            for x0, y0 in seed_strategies(self.n_seeds, self.random_state)
        ]
        self.equilibria_ = exact_equilibria(self.game_)
        return self

    def predict(self, X):
        """Player I's best reply to each row of opponent strategies ``X``."""
        from .engine import Indifferent, best_response

        check_is_fitted(self, "game_")
        out = []
        for row in _check_kets(X, 2):
            try:
                out.append(best_response(self.game_, 0, row)[0])
            except Indifferent:
                out.append(np.full(2, np.nan, dtype=complex))
        return np.array(out)


class CSDTransformer(TransformerMixin, BaseEstimator):
    """Fit a cosine-sine circuit to a 4x4 unitary and apply it to kets.

    ``transform`` runs rows of ``X`` (shape ``(n, 4)``) through the fitted
    circuit; ``inverse_transform`` undoes it.
    """

    def fit(self, U, y=None):
        self.factors_ = csd4(U)
        self.circuit_ = factors_to_circuit(self.factors_)
        self.unitary_ = circuit_to_unitary(self.circuit_)
        self.reconstruction_error_ = float(np.max(np.abs(self.unitary_ - np.asarray(U))))
        return self

    def transform(self, X):
        check_is_fitted(self, "unitary_")
        return _check_kets(X, 4) @ self.unitary_.T

    def inverse_transform(self, X):
        check_is_fitted(self, "unitary_")
        return _check_kets(X, 4) @ self.unitary_.conj()
