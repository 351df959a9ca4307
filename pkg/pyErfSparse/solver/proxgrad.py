"""
Proximal gradient for the unconstrained ERF model

    x+ = prox_{t lam Phi_sigma}(x - t A^T (Ax - b)),   t = 1 / ||A||_2^2

The prox is applied entrywise by the scalar kernels (numba-compiled when
available). Started from the lasso solution.

"""

import logging
import time

import numpy as np

from pyErfSparse.common import SolverConfig, SolverReport
from pyErfSparse.penalty.erf import erf_objective, erf_prox_vec
from pyErfSparse.solver import admm
from pyErfSparse.solver.irl1 import DESCENT_SLACK

logger = logging.getLogger(__name__)


def pg_erf_unconstrained(A, b, sigma, cfg=None) -> SolverReport:
    """min lam J_sigma(x) + ||Ax - b||^2 / 2 by proximal gradient.

    Runs at most ``cfg.max_inner`` gradient steps, counted as inner
    iterations of a single outer pass, and stops when
    ||x+ - x|| <= outer_tol (1 + ||x||).
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    if not cfg.lam > 0:
        raise ValueError("The unconstrained model needs lam > 0")
    A, b = admm.check_problem(A, b)

    first = admm.admm_weighted_lasso(A, b, np.ones(A.shape[1]), cfg)
    x = first.solution

    lip = np.linalg.norm(A, 2) ** 2
    step = 1.0 / lip if lip > 0 else 1.0
    mu = step * cfg.lam
    Atb = A.T @ b
    AtA = A.T @ A

    def objective(z):
        r = A @ z - b
        return cfg.lam * erf_objective(z, sigma) + 0.5 * float(np.dot(r, r))

    trace = [objective(x)]
    residuals = [float(np.linalg.norm(A @ x - b))]
    converged = rejected = False
    it = 0

    for it in range(1, cfg.max_inner + 1):
        grad = AtA @ x - Atb
        x_new = erf_prox_vec(x - step * grad, mu, sigma, cfg.newton_tol, cfg.newton_max)
        f_new = objective(x_new)

        if cfg.monotone and f_new > trace[-1] + DESCENT_SLACK:
            logger.warning("pg-erf: step %d raised the objective, keeping previous iterate", it)
            rejected = True
            break

        dx = np.linalg.norm(x_new - x)
        tol = cfg.outer_tol * (1.0 + np.linalg.norm(x))
        x = x_new
        trace.append(f_new)
        residuals.append(float(np.linalg.norm(A @ x - b)))

        if dx <= tol:
            converged = True
            break

    if not converged and not rejected:
        logger.warning("pg-erf hit max_inner=%d", cfg.max_inner)

    return SolverReport(
        solution=x,
        objective_trace=trace,
        residual_trace=residuals,
        outer_iters=1,
        total_inner_iters=first.total_inner_iters + it,
        converged=converged,
        wall_seconds=time.perf_counter() - t0,
    )
