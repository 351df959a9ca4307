# ------------------------------------------
# L0 penalty
# ------------------------------------------

import numpy as np

from pyErfSparse import common


def hard_threshold(v, mu):
    """Keep v where |v| > mu, zero elsewhere."""
    if not mu >= 0:
        raise ValueError("mu must be >= 0")
    v = np.asarray(v, dtype=float)
    r = np.where(np.abs(v) > mu, v, 0.0)
    return common.like_input(r, v)


def l0_value(x, tol=0.0):
    """Number of entries with magnitude above tol."""
    return float(np.count_nonzero(np.abs(x) > tol))
