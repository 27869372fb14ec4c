"""Sparse solvers: exact recovery, dense-matrix agreement, guards."""

import numpy as np
import pytest

import oracles
from convsense import sequences as seqs
from convsense.operators import (Basis, CirculantOperator, SensingOperator,
                                 random_sampling)
from convsense.recovery import (RecoveryProblem, SOLVERS, fista_lasso, omp,
                                subspace_pursuit)


def _problem(n=64, m=24, k=3, seed=0, basis="identity", snr_db=None):
    rng = np.random.default_rng(seed)
    theta = SensingOperator(
        CirculantOperator.from_spectrum(seqs.fzc(n, 1)),
        random_sampling(n, m, seed), Basis(basis))
    support = rng.choice(n, size=k, replace=False)
    f = np.zeros(n, dtype=np.complex128)
    f[support] = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    y = theta.forward(f)
    if snr_db is not None:
        e = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        e *= np.linalg.norm(y) * 10 ** (-snr_db / 20) / np.linalg.norm(e)
        y = y + e
    return theta, f, support, y


# ---------------------------------------------------------------------------
# greedy solvers
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("solver", [omp, subspace_pursuit])
def test_noiseless_exact_recovery(solver):
    for seed in range(5):
        theta, f, support, y = _problem(seed=seed)
        res = solver(RecoveryProblem(operator=theta, y=y, k=3))
        assert np.linalg.norm(res.f_hat - f) < 1e-8 * np.linalg.norm(f)
        assert set(res.support.tolist()) == set(support.tolist())
        assert res.converged


@pytest.mark.parametrize("solver", [omp, subspace_pursuit])
def test_dense_matrix_input_agrees_with_operator(solver):
    theta, f, support, y = _problem(seed=3)
    dense = theta.dense()
    r_op = solver(RecoveryProblem(operator=theta, y=y, k=3))
    r_mat = solver(RecoveryProblem(operator=dense, y=y, k=3))
    assert np.allclose(r_op.f_hat, r_mat.f_hat, atol=1e-8)
    assert np.array_equal(np.sort(r_op.support), np.sort(r_mat.support))


def test_omp_selects_largest_correlation_first():
    theta, f, support, y = _problem(seed=1, k=1)
    corr = np.abs(theta.adjoint(y))
    res = omp(RecoveryProblem(operator=theta, y=y, k=1))
    assert res.support[0] == int(np.argmax(corr))


def test_omp_refit_matches_lstsq():
    theta, f, support, y = _problem(seed=2, snr_db=20)
    res = omp(RecoveryProblem(operator=theta, y=y, k=3))
    want = oracles.least_squares_on_support(theta.dense(), y, res.support)
    assert np.allclose(res.f_hat, want, atol=1e-7)


def test_sp_refit_matches_lstsq():
    theta, f, support, y = _problem(seed=4, snr_db=20)
    res = subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=3))
    want = oracles.least_squares_on_support(theta.dense(), y, res.support)
    assert np.allclose(res.f_hat, want, atol=1e-7)


def test_results_deterministic():
    theta, f, support, y = _problem(seed=5, snr_db=15)
    a = subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=3))
    b = subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=3))
    assert np.array_equal(a.f_hat, b.f_hat)
    assert np.array_equal(a.support, b.support)
    assert a.iterations == b.iterations


def test_noisy_recovery_stays_close():
    theta, f, support, y = _problem(seed=6, snr_db=30)
    res = subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=3))
    rel = np.linalg.norm(res.f_hat - f) / np.linalg.norm(f)
    assert rel < 0.1


def test_guards():
    theta, f, support, y = _problem()
    with pytest.raises(ValueError):
        omp(RecoveryProblem(operator=theta, y=y, k=25))  # K > M
    with pytest.raises(ValueError):
        subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=13))
    with pytest.raises(ValueError):
        omp(RecoveryProblem(operator=theta, y=y, k=None))


def test_frequency_domain_recovery():
    theta, f, support, y = _problem(basis="inverse_fourier", seed=7)
    res = subspace_pursuit(RecoveryProblem(operator=theta, y=y, k=3))
    assert np.linalg.norm(res.f_hat - f) < 1e-8 * np.linalg.norm(f)


# ---------------------------------------------------------------------------
# FISTA
# ---------------------------------------------------------------------------

def test_fista_recovers_support_and_obeys_kkt():
    theta, f, support, y = _problem(n=64, m=32, k=3, seed=8)
    lam = 1e-3 * float(np.max(np.abs(theta.adjoint(y))))
    res = fista_lasso(RecoveryProblem(operator=theta, y=y, lam=lam))
    assert set(support.tolist()) <= set(res.support.tolist())
    # KKT for lasso: |Theta^*(y - Theta f)| <= lam + slack off-support,
    # = lam on the support (up to solver tolerance)
    grad = theta.adjoint(y - theta.forward(res.f_hat))
    assert np.max(np.abs(grad)) <= lam * 1.05 + 1e-8


def test_fista_null_condition():
    theta, f, support, y = _problem(seed=9)
    lam = float(np.max(np.abs(theta.adjoint(y)))) * 1.01
    res = fista_lasso(RecoveryProblem(operator=theta, y=y, lam=lam))
    assert np.allclose(res.f_hat, 0.0)
    assert res.support.size == 0


def test_fista_objective_beats_soft_start():
    theta, f, support, y = _problem(seed=10, snr_db=20)
    lam = 1e-2 * float(np.max(np.abs(theta.adjoint(y))))
    res = fista_lasso(RecoveryProblem(operator=theta, y=y, lam=lam))

    def objective(x):
        r = y - theta.forward(x)
        return 0.5 * np.vdot(r, r).real + lam * np.sum(np.abs(x))

    assert objective(res.f_hat) <= objective(np.zeros_like(res.f_hat))
    assert res.converged


def test_solver_registry():
    assert set(SOLVERS) >= {"omp", "sp", "subspace_pursuit", "fista"}
    assert SOLVERS["sp"] is SOLVERS["subspace_pursuit"]
