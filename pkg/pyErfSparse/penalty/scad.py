# ------------------------------------------
# Smoothly clipped absolute deviation (SCAD)
# ------------------------------------------

import numpy as np


def scad_phi(x, lam, gamma):
    """SCAD penalty, entrywise.

    - lam |x|                                        |x| <= lam
    - (2 gamma lam |x| - x^2 - lam^2) / (2(gamma-1))   lam < |x| <= gamma lam
    - (gamma + 1) lam^2 / 2                          |x| > gamma lam
    """
    if not lam > 0:
        raise ValueError("SCAD lambda must be > 0")
    if not gamma > 1:
        raise ValueError("SCAD gamma must be > 1")

    ax = np.abs(np.asarray(x, dtype=float))
    mid = (2.0 * gamma * lam * ax - ax ** 2 - lam ** 2) / (2.0 * (gamma - 1.0))
    return np.where(
        ax <= lam,
        lam * ax,
        np.where(ax <= gamma * lam, mid, 0.5 * (gamma + 1.0) * lam ** 2),
    )


def scad_value(x, lam, gamma):
    return float(np.sum(scad_phi(x, lam, gamma)))
