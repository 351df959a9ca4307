# ------------------------------------------
# L1 penalty
# ------------------------------------------

import numpy as np

from pyErfSparse import common


def soft_shrink(v, mu):
    """Soft shrinkage sign(v) max(|v| - mu, 0), componentwise.

    Args:
        v (float or ndarray): argument
        mu (float or ndarray): threshold(s), >= 0

    Returns:
        float or ndarray: shrunk value(s)

    """
    v = np.asarray(v, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < 0):
        raise ValueError("mu must be >= 0")
    r = np.sign(v) * np.maximum(np.abs(v) - mu, 0.0)
    return common.like_input(r, v)


def l1_value(x):
    return float(np.sum(np.abs(x)))
