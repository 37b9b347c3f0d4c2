import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from qugame.classical import builtin_games
from qugame.engine import nash_check
from qugame.estimators import CSDTransformer, MixedNashSolver, QuantumNashSolver
from qugame.hilbert import random_ket, random_unitary


def test_mixed_solver():
    est = MixedNashSolver().fit(builtin_games()["matching_pennies"])
    assert est.n_equilibria_ == 1
    p, q = est.equilibria_[0]
    np.testing.assert_allclose(p, [0.5, 0.5])
    np.testing.assert_allclose(q, [0.5, 0.5])


def test_quantum_solver_params_and_clone():
    est = QuantumNashSolver(target_I=1, n_seeds=2)
    assert est.get_params()["target_I"] == 1
    est.set_params(target_II=4)
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est


def test_quantum_solver_fit_predict():
    u = random_unitary(4, 5)
    est = QuantumNashSolver(n_seeds=3).fit(u)
    assert len(est.runs_) == 3
    for cand in est.equilibria_:
        assert nash_check(est.game_, cand.x_star, cand.y_star).is_equilibrium
    ys = np.stack([random_ket(2, s) for s in range(4)])
    xs = est.predict(ys)
    assert xs.shape == (4, 2)
    np.testing.assert_allclose(np.linalg.norm(xs, axis=1), 1)


def test_quantum_solver_predict_indifferent():
    est = QuantumNashSolver().fit(np.eye(4))
    assert np.isnan(est.predict([[1, 0]])).all()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        QuantumNashSolver().predict([[1, 0]])
    with pytest.raises(NotFittedError):
        CSDTransformer().transform([[1, 0, 0, 0]])


def test_csd_transformer_roundtrip():
    u = random_unitary(4, 8)
    est = CSDTransformer().fit(u)
    assert est.reconstruction_error_ < 1e-10
    kets = np.stack([random_ket(4, s) for s in range(5)])
    out = est.transform(kets)
    np.testing.assert_allclose(out, kets @ u.T, atol=1e-12)
    np.testing.assert_allclose(est.inverse_transform(out), kets, atol=1e-12)
    with pytest.raises(ValueError):
        est.transform(np.ones((2, 3)))
