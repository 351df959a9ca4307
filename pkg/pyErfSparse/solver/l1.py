"""L1 baselines: basis pursuit and lasso, the w = 1 cases of the ADMM inner solvers."""

import numpy as np

from pyErfSparse.common import SolverConfig, SolverReport
from pyErfSparse.solver import admm


def l1_bp(A, b, cfg=None) -> SolverReport:
    """min ||x||_1 s.t. Ax = b."""
    cfg = cfg or SolverConfig()
    A, b = admm.check_problem(A, b)
    return admm.weighted_bp_admm(A, b, np.ones(A.shape[1]), cfg)


def l1_lasso(A, b, cfg=None) -> SolverReport:
    """min lam ||x||_1 + ||Ax - b||^2 / 2."""
    cfg = cfg or SolverConfig()
    A, b = admm.check_problem(A, b)
    return admm.admm_weighted_lasso(A, b, np.ones(A.shape[1]), cfg)
