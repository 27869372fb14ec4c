"""Sparse recovery solvers: OMP, subspace pursuit, and FISTA.

All three accept either a SensingOperator (applied through FFTs) or an
explicit dense matrix, and run fully in complex arithmetic.  Greedy
solvers take a sparsity K; FISTA minimizes
0.5*||y - Theta f||^2 + lambda*||f||_1.

Deterministic by construction: correlation and magnitude ties always
break to the lowest index, and the FISTA step size comes from a
fixed-seed power iteration, so reruns are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import scipy.linalg

from .operators import SensingOperator

_RIDGE = 1e-12
_OMP_STOP_REL = 1e-6
_SP_STOP_REL = 1e-7
_SP_MAX_ITERS = 50
_FISTA_STOP_REL = 1e-8
_FISTA_MAX_ITERS = 2000


@dataclass(frozen=True)
class RecoveryProblem:
    """Measurements plus either a sparsity K (greedy) or lambda (LASSO)."""

    operator: Union[SensingOperator, np.ndarray]
    y: np.ndarray
    k: Optional[int] = None
    lam: Optional[float] = None

    def __post_init__(self):
        y = np.ascontiguousarray(self.y, dtype=np.complex128)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class RecoveryResult:
    f_hat: np.ndarray
    support: np.ndarray
    iterations: int
    residual_norm: float
    converged: bool


class _OpAdapter:
    """Uniform forward/adjoint/column access over a SensingOperator or a
    dense matrix."""

    def __init__(self, operator):
        if isinstance(operator, SensingOperator):
            self.op = operator
            self.mat = None
            self.m, self.n = operator.m, operator.n
        else:
            mat = np.asarray(operator, dtype=np.complex128)
            if mat.ndim != 2:
                raise ValueError("dense operator must be a 2-D matrix")
            self.op = None
            self.mat = mat
            self.m, self.n = mat.shape

    def forward(self, f: np.ndarray) -> np.ndarray:
        if self.mat is not None:
            return self.mat @ f
        return self.op.forward(f)

    def adjoint(self, r: np.ndarray) -> np.ndarray:
        if self.mat is not None:
            return self.mat.conj().T @ r
        return self.op.adjoint(r)

    def columns(self, idx: np.ndarray) -> np.ndarray:
        if self.mat is not None:
            return self.mat[:, idx]
        block = np.zeros((self.n, len(idx)), dtype=np.complex128)
        block[idx, np.arange(len(idx))] = 1.0
        return self.op.forward_batch(block)


def _least_squares(cols: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Normal equations with a tiny ridge (supports are <= 2K columns)."""
    gram = cols.conj().T @ cols
    gram[np.diag_indices_from(gram)] += _RIDGE
    return scipy.linalg.solve(gram, cols.conj().T @ y, assume_a="her")


def _top_indices(mags: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest magnitudes; ties break to lowest index."""
    order = np.argsort(-mags, kind="stable")
    return order[:k]


def _embed(n: int, support: np.ndarray, coef: np.ndarray) -> np.ndarray:
    f = np.zeros(n, dtype=np.complex128)
    f[support] = coef
    return f


def omp(p: RecoveryProblem) -> RecoveryResult:
    """Orthogonal matching pursuit: K rounds of pick-the-most-correlated
    atom, least-squares refit, stopping early at residual 1e-6*||y||.

    ``converged`` reports whether that residual threshold was reached
    (always true on noiseless solvable instances, false under noise)."""
    if p.k is None or p.k < 1:
        raise ValueError("omp requires a positive sparsity K")
    adapter = _OpAdapter(p.operator)
    if p.k > adapter.m:
        raise ValueError(f"K={p.k} exceeds M={adapter.m}")
    y = p.y
    ynorm = float(np.linalg.norm(y))
    support: list = []
    coef = np.zeros(0, dtype=np.complex128)
    r = y.copy()
    iterations = 0
    for _ in range(p.k):
        if float(np.linalg.norm(r)) <= _OMP_STOP_REL * ynorm:
            break
        mags = np.abs(adapter.adjoint(r))
        if support:
            mags[np.asarray(support)] = -1.0
        support.append(int(np.argmax(mags)))
        cols = adapter.columns(np.asarray(support, dtype=np.int64))
        coef = _least_squares(cols, y)
        r = y - cols @ coef
        iterations += 1
    sup = np.asarray(support, dtype=np.int64)
    order = np.argsort(sup)
    f_hat = _embed(adapter.n, sup[order], coef[order])
    res = float(np.linalg.norm(r))
    return RecoveryResult(f_hat=f_hat, support=np.sort(sup),
                          iterations=iterations, residual_norm=res,
                          converged=res <= _OMP_STOP_REL * ynorm)


def subspace_pursuit(p: RecoveryProblem) -> RecoveryResult:
    """Subspace pursuit: keep a size-K support, each round merge in the
    top-K correlations of the residual (candidate <= 2K), least-squares,
    prune back to K, refit; stop when the residual stops decreasing
    (1e-7 relative) and revert if it increased; at most 50 rounds."""
    if p.k is None or p.k < 1:
        raise ValueError("subspace pursuit requires a positive sparsity K")
    adapter = _OpAdapter(p.operator)
    if 2 * p.k > adapter.m:
        raise ValueError(
            f"candidate least squares needs 2K <= M, got K={p.k} M={adapter.m}")
    y = p.y
    k = p.k
    support = np.sort(_top_indices(np.abs(adapter.adjoint(y)), k)
                      .astype(np.int64))
    cols = adapter.columns(support)
    coef = _least_squares(cols, y)
    r = y - cols @ coef
    rnorm = float(np.linalg.norm(r))
    iterations = 0
    converged = False
    for _ in range(_SP_MAX_ITERS):
        iterations += 1
        cand = np.union1d(support,
                          _top_indices(np.abs(adapter.adjoint(r)), k))
        ccols = adapter.columns(cand)
        ccoef = _least_squares(ccols, y)
        keep = _top_indices(np.abs(ccoef), k)
        new_support = np.sort(cand[keep])
        ncols = adapter.columns(new_support)
        ncoef = _least_squares(ncols, y)
        nres = y - ncols @ ncoef
        nnorm = float(np.linalg.norm(nres))
        if nnorm > rnorm:
            converged = True  # revert and stop: residual went up
            break
        moved = rnorm - nnorm
        support, coef, r, rnorm = new_support, ncoef, nres, nnorm
        if moved <= _SP_STOP_REL * max(rnorm, 1e-300):
            converged = True
            break
    f_hat = _embed(adapter.n, support, coef)
    return RecoveryResult(f_hat=f_hat, support=support,
                          iterations=iterations, residual_norm=rnorm,
                          converged=converged)


def _power_iteration_step_bound(adapter: _OpAdapter) -> float:
    """Largest eigenvalue of Theta^* Theta by 30 power-iteration steps
    (1e-6 relative tolerance, fixed seed), inflated 0.1% so 1/L is a
    safe step."""
    rng = np.random.default_rng(0)
    v = rng.standard_normal(adapter.n) + 1j * rng.standard_normal(adapter.n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(30):
        w = adapter.adjoint(adapter.forward(v))
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 1.0
        new_lam = nw
        v = w / nw
        if lam and abs(new_lam - lam) <= 1e-6 * lam:
            lam = new_lam
            break
        lam = new_lam
    return lam * (1.0 + 1e-3)


def _soft_threshold(u: np.ndarray, tau: float) -> np.ndarray:
    mags = np.abs(u)
    scale = np.maximum(1.0 - tau / np.maximum(mags, 1e-300), 0.0)
    return u * scale


def fista_lasso(p: RecoveryProblem) -> RecoveryResult:
    """FISTA on 0.5||y - Theta f||^2 + lambda ||f||_1 with complex
    soft-thresholding, momentum restart on objective increase, stopping
    at 1e-8 relative objective change or 2000 iterations."""
    if p.lam is None or p.lam <= 0:
        raise ValueError("fista requires lambda > 0")
    adapter = _OpAdapter(p.operator)
    y = p.y
    lam = float(p.lam)
    L = _power_iteration_step_bound(adapter)

    def objective(f, rf):
        return 0.5 * float(np.linalg.norm(y - rf)) ** 2 \
            + lam * float(np.sum(np.abs(f)))

    f = np.zeros(adapter.n, dtype=np.complex128)
    rf = adapter.forward(f)
    obj = objective(f, rf)
    z = f.copy()
    t = 1.0
    iterations = 0
    converged = False
    for _ in range(_FISTA_MAX_ITERS):
        iterations += 1
        grad = adapter.adjoint(adapter.forward(z) - y)
        f_new = _soft_threshold(z - grad / L, lam / L)
        rf_new = adapter.forward(f_new)
        obj_new = objective(f_new, rf_new)
        if obj_new > obj:
            # restart momentum at the last good point
            t = 1.0
            z = f.copy()
            grad = adapter.adjoint(rf - y)
            f_new = _soft_threshold(f - grad / L, lam / L)
            rf_new = adapter.forward(f_new)
            obj_new = objective(f_new, rf_new)
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        z = f_new + ((t - 1.0) / t_new) * (f_new - f)
        rel_drop = abs(obj - obj_new)
        f, rf, t = f_new, rf_new, t_new
        if rel_drop <= _FISTA_STOP_REL * max(obj, 1e-300):
            obj = min(obj, obj_new)
            converged = True
            break
        obj = min(obj, obj_new)
    support = np.flatnonzero(np.abs(f) > 0)
    res = float(np.linalg.norm(y - rf))
    return RecoveryResult(f_hat=f, support=support, iterations=iterations,
                          residual_norm=res, converged=converged)


SOLVERS = {
    "omp": omp,
    "sp": subspace_pursuit,
    "subspace_pursuit": subspace_pursuit,
    "fista": fista_lasso,
}
