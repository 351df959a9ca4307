# ------------------------------------------
# L1 - L2
# ------------------------------------------

import numpy as np


def l1l2_value(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(np.abs(x)) - np.linalg.norm(x))


def l2_direction(x):
    """Subgradient of ||x||_2: x / ||x||_2, or zero at the origin."""
    x = np.asarray(x, dtype=float)
    nrm = np.linalg.norm(x)
    if nrm == 0:
        return np.zeros_like(x)
    return x / nrm
