# ------------------------------------------
# Transformed L1 (TL1)
# (a+1)|x| / (a+|x|)
# ------------------------------------------

import numpy as np

from pyErfSparse import common, kernels


def _check_a(a):
    if not (np.isfinite(a) and a > 0):
        raise ValueError("TL1 parameter a must be finite and > 0, got %r" % (a,))


def tl1_phi(x, a):
    """TL1 penalty of a scalar or of each entry of an array."""
    _check_a(a)
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    r = (a + 1.0) * ax / (a + ax)
    return common.like_input(r, x)


def tl1_value(x, a):
    return float(np.sum(tl1_phi(np.asarray(x, dtype=float), a)))


def tl1_weight(x, a):
    """IRL1 weight of TL1, a(a+1)/(a+|x|)^2."""
    _check_a(a)
    x = np.asarray(x, dtype=float)
    r = a * (a + 1.0) / (a + np.abs(x)) ** 2
    return common.like_input(r, x)


def tl1_prox(v, mu, a):
    """Proximal map of mu * tl1_phi at a scalar v.

    Closed form: zero below the threshold

    - mu (a+1)/a                     if mu <= a^2 / (2(a+1))
    - sqrt(2 mu (a+1)) - a/2         otherwise

    and above it sign(v) [2/3 (a+|v|) cos(phi/3) - 2a/3 + |v|/3] with
    phi = arccos(1 - 27 mu a (a+1) / (2 (a+|v|)^3)).

    Args:
        v (float): argument
        mu (float): prox parameter, >= 0
        a (float): TL1 parameter, > 0

    Returns:
        float: prox value

    """
    _check_a(a)
    v = float(v)
    mu = float(mu)
    if not np.isfinite(v):
        raise ValueError("v must be finite")
    if not mu >= 0:
        raise ValueError("mu must be >= 0")

    x, status = kernels.tl1_prox_scalar(v, mu, float(a))
    if status == 2:
        raise common.DomainError("TL1 prox arccos argument out of range (v=%g, mu=%g, a=%g)" % (v, mu, a))
    return float(x)


def tl1_prox_vec(v, mu, a):
    """tl1_prox() applied to each entry of v; mu is a scalar or has v's shape."""
    _check_a(a)
    v = common.as_signal(v)
    mu = np.broadcast_to(np.asarray(mu, dtype=float), v.shape).copy()
    if np.any(mu < 0):
        raise ValueError("mu must be >= 0")

    x, status = kernels.tl1_prox_array(v, mu, float(a))
    if status == 2:
        raise common.DomainError("TL1 prox arccos argument out of range (a=%g)" % a)
    return x
