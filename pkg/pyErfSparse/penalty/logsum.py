# ------------------------------------------
# Log-sum penalty
# sum log(|x| + epsilon)
# ------------------------------------------

import numpy as np

from pyErfSparse import common


def logsum_weight(x, epsilon):
    """IRL1 weight 1/(|x| + epsilon)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    x = np.asarray(x, dtype=float)
    return common.like_input(1.0 / (np.abs(x) + epsilon), x)


def logsum_value(x, epsilon):
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    return float(np.sum(np.log(np.abs(x) + epsilon)))
