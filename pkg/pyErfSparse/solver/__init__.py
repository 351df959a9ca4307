"""
Sparse recovery solvers

- admm: weighted basis pursuit and weighted lasso inner solvers
- irl1: reweighted L1 outer loops (ERF, log-sum, Lp, TL1)
- dca: L1 - L2 by the difference-of-convex algorithm
- l1: L1 baselines
- proxgrad: proximal gradient for the unconstrained ERF model

"""

from pyErfSparse.common import UnknownPenalty
from pyErfSparse.penalty import IRL1_KINDS, Penalty, RegularizerSpec
from pyErfSparse.solver.admm import admm_weighted_lasso, weighted_bp_admm
from pyErfSparse.solver.dca import dca_l1l2_constrained, dca_l1l2_unconstrained
from pyErfSparse.solver.irl1 import (
    irl1_erf_constrained,
    irl1_erf_unconstrained,
    irl1_generic_constrained,
    irl1_generic_unconstrained,
)
from pyErfSparse.solver.l1 import l1_bp, l1_lasso
from pyErfSparse.solver.proxgrad import pg_erf_unconstrained


def solve(A, b, spec: RegularizerSpec, cfg=None, constrained=True):
    """Run the solver of a penalty spec.

    Args:
        A (ndarray): sensing matrix
        b (ndarray): measurements
        spec (RegularizerSpec): ERF, L1, LOGSUM, LP, TL1 or L1MINUSL2
        cfg (SolverConfig): solver settings
        constrained (bool): Ax = b model if True, lam-weighted model otherwise

    Returns:
        SolverReport: solver outcome

    """
    kind = spec.kind

    if kind is Penalty.L1:
        return l1_bp(A, b, cfg) if constrained else l1_lasso(A, b, cfg)

    if kind is Penalty.L1MINUSL2:
        if constrained:
            return dca_l1l2_constrained(A, b, cfg)
        return dca_l1l2_unconstrained(A, b, cfg)

    if kind is Penalty.ERF:
        if constrained:
            return irl1_erf_constrained(A, b, spec.params.sigma, cfg)
        return irl1_erf_unconstrained(A, b, spec.params.sigma, cfg)

    if kind in IRL1_KINDS:
        if constrained:
            return irl1_generic_constrained(A, b, spec, cfg)
        return irl1_generic_unconstrained(A, b, spec, cfg)

    raise UnknownPenalty("No solver for the %s penalty" % kind.name)
