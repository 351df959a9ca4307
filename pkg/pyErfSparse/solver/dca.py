"""
L1 - L2 minimization by the difference-of-convex algorithm (DCA)

Each step linearizes -||x||_2 at x^k with q = x^k / ||x^k||_2 (q = 0 at the
origin) and solves an L1 problem with the linear term -<q, x>, which the
ADMM inner solvers absorb as a shift before the shrinkage.

"""

import time

import numpy as np

from pyErfSparse.common import SolverConfig, SolverReport
from pyErfSparse.penalty.l1l2 import l1l2_value, l2_direction
from pyErfSparse.solver import admm
from pyErfSparse.solver.irl1 import reweight_loop


def dca_l1l2_constrained(A, b, cfg=None) -> SolverReport:
    """min ||x||_1 - ||x||_2 s.t. Ax = b, started from L1 basis pursuit."""
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    A, b = admm.check_problem(A, b)
    ones = np.ones(A.shape[1])
    factor = admm.bp_factor(A)

    first = admm.weighted_bp_admm(A, b, ones, cfg, factor=factor)

    def step(x, u):
        return admm.weighted_bp_admm(
            A, b, ones, cfg, shift=l2_direction(x), x0=x, u0=u if cfg.reuse_dual_bp else None, factor=factor
        )

    rep = reweight_loop(step, l1l2_value, first, cfg, "dca-l1l2-constrained", A, b)
    rep.wall_seconds = time.perf_counter() - t0
    return rep


def dca_l1l2_unconstrained(A, b, cfg=None) -> SolverReport:
    """min lam (||x||_1 - ||x||_2) + ||Ax - b||^2 / 2, started from the lasso."""
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    if not cfg.lam > 0:
        raise ValueError("The unconstrained model needs lam > 0")
    A, b = admm.check_problem(A, b)
    ones = np.ones(A.shape[1])
    factor = admm.lasso_factor(A, cfg.lasso_delta())

    first = admm.admm_weighted_lasso(A, b, ones, cfg, factor=factor)

    def step(x, u):
        return admm.admm_weighted_lasso(
            A, b, ones, cfg, shift=l2_direction(x), x0=x, u0=u if cfg.reuse_dual_lasso else None, factor=factor
        )

    def objective(x):
        r = A @ x - b
        return cfg.lam * l1l2_value(x) + 0.5 * float(np.dot(r, r))

    rep = reweight_loop(step, objective, first, cfg, "dca-l1l2", A, b)
    rep.wall_seconds = time.perf_counter() - t0
    return rep
