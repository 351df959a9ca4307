"""
ADMM inner solvers

- weighted basis pursuit: min sum w|x| - <c, x>  s.t.  Ax = b
- weighted lasso: min lam (sum w|x| - <q, x>) + ||Ax - b||^2 / 2

Both take an optional linear term (``shift``) so that the DCA outer loop can
reuse them, and accept a cached factorization through ``factor=``.

"""

import logging
import time

import numpy as np

from pyErfSparse import common
from pyErfSparse.common import SolverConfig, SolverReport
from pyErfSparse.penalty.l1 import soft_shrink

logger = logging.getLogger(__name__)


def check_problem(A, b):
    A = common.as_matrix(A)
    b = common.as_signal(b)
    if A.shape[0] != b.shape[0]:
        raise common.DimensionMismatch(
            "Matrix has %d rows but measurement has length %d" % (A.shape[0], b.shape[0])
        )
    return A, b


def check_weights(w, n):
    w = common.as_signal(w)
    if w.shape[0] != n:
        raise common.DimensionMismatch("Weight vector of length %d for %d unknowns" % (w.shape[0], n))
    if np.any(w <= 0):
        raise ValueError("Weights must be strictly positive.")
    return w


def _optional(v, n, name):
    if v is None:
        return np.zeros(n)
    v = common.as_signal(v)
    if v.shape[0] != n:
        raise common.DimensionMismatch("%s must have length %d" % (name, n))
    return v.copy()


def bp_factor(A) -> common.LinearSolveOperator:
    """Factorization of A A^T used by the affine projection onto {Ax = b}.

    Raises NotSPD when A is not full row rank, including numerically rank
    deficient matrices for which a Cholesky factor of A A^T still exists.
    """
    A = common.as_matrix(A)
    rank = np.linalg.matrix_rank(A)
    if rank < A.shape[0]:
        raise common.NotSPD("A A^T is singular, A has rank %d < %d rows" % (rank, A.shape[0]))
    try:
        return common.factor_spd(A @ A.T)
    except common.NotSPD as e:
        raise common.NotSPD("A A^T is not positive definite, A is not full row rank (%s)" % e)


class RidgeOperator(object):
    """Solves (A^T A + delta I) y = r.

    For wide matrices the m x m system delta I + A A^T is factorized and
    applied through the Woodbury identity.
    """

    def __init__(self, A, delta):
        m, n = A.shape
        self.A = A
        self.delta = float(delta)
        self.wide = m < n
        if self.wide:
            self._op = common.factor_spd(A @ A.T + self.delta * np.eye(m))
        else:
            self._op = common.factor_spd(A.T @ A + self.delta * np.eye(n))

    def solve(self, r):
        if not self.wide:
            return self._op.solve(r)
        A = self.A
        return (r - A.T @ self._op.solve(A @ r)) / self.delta


def lasso_factor(A, delta) -> RidgeOperator:
    if not delta > 0:
        raise ValueError("delta must be > 0")
    return RidgeOperator(common.as_matrix(A), delta)


def _stopped(r_norm, s_norm, n, primal_scale, dual_scale, cfg) -> bool:
    """Absolute plus relative residual test of the ADMM iterates."""
    root_n = np.sqrt(n)
    eps_pri = root_n * cfg.inner_primal_tol + cfg.inner_rel_tol * primal_scale
    eps_dual = root_n * cfg.inner_dual_tol + cfg.inner_rel_tol * dual_scale
    return r_norm <= eps_pri and s_norm <= eps_dual


def weighted_bp_admm(A, b, w, cfg=None, shift=None, x0=None, u0=None, factor=None) -> SolverReport:
    """Weighted basis pursuit by ADMM on the splitting x = z.

    Iterates

    - x = z - u - A^T (A A^T)^-1 (A(z - u) - b)     (projection onto Ax = b)
    - z = soft_shrink(x + u + c/delta, w/delta)
    - u = u + x - z

    until ||x - z|| <= sqrt(n) inner_primal_tol + inner_rel_tol max(||x||, ||z||)
    and delta ||z+ - z|| <= sqrt(n) inner_dual_tol + inner_rel_tol delta ||u||,
    or max_inner iterations.

    The returned point is the feasible iterate with the smallest weighted
    objective seen, the projected warm start included, so a warm started
    call never ends above its starting objective.

    Args:
        A (ndarray): m x n sensing matrix, full row rank
        b (ndarray): measurements, length m
        w (ndarray): positive weights, length n
        cfg (SolverConfig): iteration caps, tolerances, delta
        shift (ndarray): linear term c, default zero
        x0 (ndarray): warm start for z
        u0 (ndarray): warm start for the scaled dual
        factor (LinearSolveOperator): cached bp_factor(A)

    Returns:
        SolverReport: the best feasible iterate x; ``dual`` holds u at that iterate

    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    A, b = check_problem(A, b)
    n = A.shape[1]
    w = check_weights(w, n)
    c = _optional(shift, n, "shift")
    z = _optional(x0, n, "x0")
    u = _optional(u0, n, "u0")

    if factor is None:
        factor = bp_factor(A)

    def objective(x):
        return float(np.dot(w, np.abs(x)) - np.dot(c, x))

    delta = cfg.bp_delta()
    thresh = w / delta
    c_scaled = c / delta

    best_x = z - A.T @ factor.solve(A @ z - b)
    best_u = u
    best_f = objective(best_x)

    converged = False
    r_norm = s_norm = np.inf
    it = 0
    for it in range(1, cfg.max_inner + 1):
        v = z - u
        x = v - A.T @ factor.solve(A @ v - b)

        z_old = z
        z = soft_shrink(x + u + c_scaled, thresh)
        u = u + x - z

        f = objective(x)
        if f < best_f:
            best_x, best_u, best_f = x, u, f

        r_norm = np.linalg.norm(x - z)
        s_norm = delta * np.linalg.norm(z - z_old)
        scale = max(np.linalg.norm(x), np.linalg.norm(z))
        if _stopped(r_norm, s_norm, n, scale, delta * np.linalg.norm(u), cfg):
            converged = True
            break

    if not converged:
        logger.warning(
            "weighted basis pursuit hit max_inner=%d (primal %.3e, dual %.3e)",
            cfg.max_inner,
            r_norm,
            s_norm,
        )

    return SolverReport(
        solution=best_x,
        objective_trace=[best_f],
        residual_trace=[float(np.linalg.norm(A @ best_x - b))],
        outer_iters=1,
        total_inner_iters=it,
        converged=converged,
        wall_seconds=time.perf_counter() - t0,
        dual=best_u,
    )


def admm_weighted_lasso(A, b, w, cfg=None, shift=None, x0=None, u0=None, factor=None) -> SolverReport:
    """Weighted lasso by ADMM on the splitting x = y.

    Iterates

    - x = soft_shrink(y - u + lam q / delta, (lam / delta) w)
    - y = (A^T A + delta I)^-1 (A^T b + delta x + delta u)
    - u = u + x - y

    until ||x - y|| <= sqrt(n) inner_primal_tol + inner_rel_tol max(||x||, ||y||)
    and delta ||y+ - y|| <= sqrt(n) inner_dual_tol + inner_rel_tol delta ||u||,
    or max_inner iterations. lam is ``cfg.lam``; delta defaults to lam.

    Like weighted_bp_admm(), the iterate with the smallest objective is
    returned, the warm start counting as the first candidate.

    Args:
        A (ndarray): m x n sensing matrix
        b (ndarray): measurements, length m
        w (ndarray): positive weights, length n
        cfg (SolverConfig): iteration caps, tolerances, lam, delta
        shift (ndarray): linear term q, default zero
        x0 (ndarray): warm start for y
        u0 (ndarray): warm start for the scaled dual
        factor (RidgeOperator): cached lasso_factor(A, delta)

    Returns:
        SolverReport: the best sparse iterate x; ``dual`` holds u at that iterate

    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    A, b = check_problem(A, b)
    n = A.shape[1]
    w = check_weights(w, n)
    q = _optional(shift, n, "shift")
    y = _optional(x0, n, "x0")
    u = _optional(u0, n, "u0")

    lam = cfg.lam
    delta = cfg.lasso_delta()
    if factor is None:
        factor = lasso_factor(A, delta)

    def objective(x):
        res = A @ x - b
        return float(lam * (np.dot(w, np.abs(x)) - np.dot(q, x)) + 0.5 * np.dot(res, res))

    Atb = A.T @ b
    thresh = (lam / delta) * w
    q_scaled = (lam / delta) * q

    best_x, best_u, best_f = y, u, objective(y)

    converged = False
    r_norm = s_norm = np.inf
    it = 0
    for it in range(1, cfg.max_inner + 1):
        x = soft_shrink(y - u + q_scaled, thresh)

        y_old = y
        y = factor.solve(Atb + delta * (x + u))
        u = u + x - y

        f = objective(x)
        if f < best_f:
            best_x, best_u, best_f = x, u, f

        r_norm = np.linalg.norm(x - y)
        s_norm = delta * np.linalg.norm(y - y_old)
        scale = max(np.linalg.norm(x), np.linalg.norm(y))
        if _stopped(r_norm, s_norm, n, scale, delta * np.linalg.norm(u), cfg):
            converged = True
            break

    if not converged:
        logger.warning(
            "weighted lasso hit max_inner=%d (primal %.3e, dual %.3e)",
            cfg.max_inner,
            r_norm,
            s_norm,
        )

    return SolverReport(
        solution=best_x,
        objective_trace=[best_f],
        residual_trace=[float(np.linalg.norm(A @ best_x - b))],
        outer_iters=1,
        total_inner_iters=it,
        converged=converged,
        wall_seconds=time.perf_counter() - t0,
        dual=best_u,
    )
