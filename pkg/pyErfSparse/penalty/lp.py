# ------------------------------------------
# Lp quasi-norm, 0 < p < 1
# smoothed as sum (|x| + epsilon)^p
# ------------------------------------------

import numpy as np

from pyErfSparse import common


def _check(p, epsilon):
    if not 0 < p < 1:
        raise ValueError("p must be in (0, 1), got %r" % (p,))
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")


def lp_weight(x, p, epsilon):
    """IRL1 weight p / (|x| + epsilon)^(1-p)."""
    _check(p, epsilon)
    x = np.asarray(x, dtype=float)
    r = p / (np.abs(x) + epsilon) ** (1.0 - p)
    return common.like_input(r, x)


def lp_value(x, p, epsilon):
    _check(p, epsilon)
    return float(np.sum((np.abs(x) + epsilon) ** p))
