# ------------------------------------------
# Capped L1 (CL1)
# min(|x|, a)
# ------------------------------------------

import numpy as np


def cl1_value(x, a):
    if not a > 0:
        raise ValueError("CL1 parameter a must be > 0")
    return float(np.sum(np.minimum(np.abs(x), a)))
