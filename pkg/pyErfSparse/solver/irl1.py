"""
Iterative reweighted L1 (IRL1)

Each outer step linearizes a concave penalty at the current iterate and
solves the resulting weighted L1 problem with an ADMM inner solver:

- constrained:    x+ = argmin sum w|x|  s.t.  Ax = b
- unconstrained:  x+ = argmin lam sum w|x| + ||Ax - b||^2 / 2

with w = Phi'(|x|). The first iterate is the plain L1 solution (w = 1).

"""

import logging
import time

import numpy as np

from pyErfSparse.common import SolverConfig, SolverReport
from pyErfSparse.penalty import IRL1_KINDS, RegularizerSpec, irl1_weights, penalty_eval
from pyErfSparse.solver import admm

logger = logging.getLogger(__name__)

DESCENT_SLACK = 1e-10


def reweight_loop(step, objective, first: SolverReport, cfg: SolverConfig, name: str, A, b) -> SolverReport:
    """Outer loop shared by the IRL1 and DCA solvers.

    Args:
        step: callable (x, u) -> SolverReport of the next inner solve
        objective: callable x -> objective value traced for descent
        first (SolverReport): report of the initial L1 solve
        cfg (SolverConfig): max_outer, outer_tol, monotone
        name (str): solver name for log records
        A, b: problem data, for the residual trace

    Returns:
        SolverReport: the last accepted iterate

    """
    x = first.solution
    u = first.dual
    inner_ok = first.converged
    trace = [objective(x)]
    residuals = [float(np.linalg.norm(A @ x - b))]
    inner_total = first.total_inner_iters
    converged = False
    outer = 0

    for k in range(1, cfg.max_outer + 1):
        rep = step(x, u)
        inner_total += rep.total_inner_iters
        outer = k

        x_new = rep.solution
        f_new = objective(x_new)

        if cfg.monotone and f_new > trace[-1] + DESCENT_SLACK:
            logger.warning(
                "%s: outer step %d raised the objective %.12g -> %.12g, keeping previous iterate",
                name,
                k,
                trace[-1],
                f_new,
            )
            converged = False
            break

        dx = np.linalg.norm(x_new - x)
        tol = cfg.outer_tol * (1.0 + np.linalg.norm(x))
        x = x_new
        u = rep.dual
        inner_ok = rep.converged
        trace.append(f_new)
        residuals.append(rep.residual_trace[-1] if rep.residual_trace else float(np.linalg.norm(A @ x - b)))

        logger.debug(
            "%s: outer %d objective %.12g step %.3e inner %d", name, k, f_new, dx, rep.total_inner_iters
        )

        if dx <= tol:
            converged = inner_ok
            break

    return SolverReport(
        solution=x,
        objective_trace=trace,
        residual_trace=residuals,
        outer_iters=outer,
        total_inner_iters=inner_total,
        converged=converged,
        dual=u,
    )


def _check_kind(spec: RegularizerSpec, allowed):
    if spec.kind not in allowed:
        raise ValueError("IRL1 does not support the %s penalty" % spec.kind.name)


def _constrained(A, b, spec, cfg, name):
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    A, b = admm.check_problem(A, b)
    n = A.shape[1]
    factor = admm.bp_factor(A)

    first = admm.weighted_bp_admm(A, b, np.ones(n), cfg, factor=factor)

    def step(x, u):
        w = irl1_weights(x, spec)
        return admm.weighted_bp_admm(
            A, b, w, cfg, x0=x, u0=u if cfg.reuse_dual_bp else None, factor=factor
        )

    def objective(x):
        return penalty_eval(x, spec)

    rep = reweight_loop(step, objective, first, cfg, name, A, b)
    rep.wall_seconds = time.perf_counter() - t0
    return rep


def _unconstrained(A, b, spec, cfg, name):
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    if not cfg.lam > 0:
        raise ValueError("The unconstrained model needs lam > 0")
    A, b = admm.check_problem(A, b)
    n = A.shape[1]
    factor = admm.lasso_factor(A, cfg.lasso_delta())

    first = admm.admm_weighted_lasso(A, b, np.ones(n), cfg, factor=factor)

    def step(x, u):
        w = irl1_weights(x, spec)
        return admm.admm_weighted_lasso(
            A, b, w, cfg, x0=x, u0=u if cfg.reuse_dual_lasso else None, factor=factor
        )

    def objective(x):
        r = A @ x - b
        return cfg.lam * penalty_eval(x, spec) + 0.5 * float(np.dot(r, r))

    rep = reweight_loop(step, objective, first, cfg, name, A, b)
    rep.wall_seconds = time.perf_counter() - t0
    return rep


def irl1_erf_constrained(A, b, sigma, cfg=None) -> SolverReport:
    """min J_sigma(x) s.t. Ax = b by IRL1 with weights exp(-(x/sigma)^2).

    The objective trace records J_sigma at every accepted iterate.
    """
    return _constrained(A, b, RegularizerSpec.erf(sigma), cfg, "irl1-erf-constrained")


def irl1_erf_unconstrained(A, b, sigma, cfg=None) -> SolverReport:
    """min lam J_sigma(x) + ||Ax - b||^2 / 2 by IRL1.

    Inner solves warm start at y = x^k with a zero dual unless
    ``cfg.reuse_dual_lasso`` is set.
    """
    return _unconstrained(A, b, RegularizerSpec.erf(sigma), cfg, "irl1-erf")


def irl1_generic_constrained(A, b, spec: RegularizerSpec, cfg=None) -> SolverReport:
    """Constrained IRL1 with the weight rule of a LOGSUM, LP or TL1 spec."""
    _check_kind(spec, IRL1_KINDS)
    return _constrained(A, b, spec, cfg, "irl1-%s-constrained" % spec.label)


def irl1_generic_unconstrained(A, b, spec: RegularizerSpec, cfg=None) -> SolverReport:
    """Unconstrained IRL1 with the weight rule of a LOGSUM, LP or TL1 spec."""
    _check_kind(spec, IRL1_KINDS)
    return _unconstrained(A, b, spec, cfg, "irl1-%s" % spec.label)
