# ------------------------------------------
# ERF penalty
# Phi_sigma(x) = int_0^|x| exp(-t^2/sigma^2) dt
# ------------------------------------------

import numpy as np
from scipy import special

from pyErfSparse import common, kernels

TINY = np.finfo(float).tiny


def _check_sigma(sigma):
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValueError("sigma must be finite and > 0, got %r" % (sigma,))


def erf_phi(x, sigma):
    """ERF penalty of a scalar or of each entry of an array.

    Equals (sigma sqrt(pi) / 2) erf(|x| / sigma), which lies in
    [0, sigma sqrt(pi) / 2).

    Args:
        x (float or ndarray): argument
        sigma (float): scale, > 0

    Returns:
        float or ndarray: penalty value(s)

    """
    _check_sigma(sigma)
    x = np.asarray(x, dtype=float)
    r = 0.5 * sigma * np.sqrt(np.pi) * special.erf(np.abs(x) / sigma)
    return common.like_input(r, x)


def erf_objective(x, sigma):
    """J_sigma(x), the sum of erf_phi over the coordinates of x."""
    return float(np.sum(erf_phi(np.asarray(x, dtype=float), sigma)))


def erf_weight(x, sigma):
    """Derivative of Phi_sigma at |x|, exp(-x^2/sigma^2).

    The value is clamped below at the smallest positive double, so weights
    stay strictly positive.
    """
    _check_sigma(sigma)
    x = np.asarray(x, dtype=float)
    r = np.maximum(np.exp(-((x / sigma) ** 2)), TINY)
    return common.like_input(r, x)


def erf_bounds(x, sigma):
    """Lower and upper bounds of erf_phi(x, sigma).

    With c = sigma sqrt(pi)/2, a = 1/sigma^2 and b = 4/(pi sigma^2):
    c sqrt(1 - exp(-a x^2)) <= Phi <= c sqrt(1 - exp(-b x^2)).

    Returns:
        (float, float): lower and upper bound (arrays for array input)

    """
    _check_sigma(sigma)
    x = np.asarray(x, dtype=float)
    c = 0.5 * sigma * np.sqrt(np.pi)
    x2 = x * x / (sigma * sigma)
    lower = c * np.sqrt(-np.expm1(-x2))
    upper = c * np.sqrt(-np.expm1(-4.0 / np.pi * x2))
    return common.like_input(lower, x), common.like_input(upper, x)


def erf_prox(v, mu, sigma, newton_tol=1e-12, newton_max=100):
    """Proximal map of mu * Phi_sigma at a scalar v.

    Zero when |v| <= mu. Otherwise the root of
    x + mu exp(-x^2/sigma^2) sign(v) = v with the same sign as v and
    |x| <= |v|. When several roots exist, the one with the smallest value
    of mu Phi_sigma(x) + (x - v)^2 / 2 is returned.

    Args:
        v (float): argument
        mu (float): prox parameter, >= 0
        sigma (float): ERF scale, > 0
        newton_tol (float): root tolerance
        newton_max (int): iteration cap of each root search

    Returns:
        float: prox value

    """
    _check_sigma(sigma)
    v = float(v)
    mu = float(mu)
    if not np.isfinite(v):
        raise ValueError("v must be finite")
    if not mu >= 0:
        raise ValueError("mu must be >= 0")

    x, status = kernels.erf_prox_scalar(v, mu, float(sigma), float(newton_tol), int(newton_max))
    if status == 1:
        raise common.NoConvergence(
            "ERF prox root search did not converge (v=%g, mu=%g, sigma=%g)" % (v, mu, sigma)
        )
    return float(x)


def erf_prox_vec(v, mu, sigma, newton_tol=1e-12, newton_max=100):
    """erf_prox() applied to each entry of v; mu is a scalar or has v's shape."""
    _check_sigma(sigma)
    v = common.as_signal(v)
    mu = np.broadcast_to(np.asarray(mu, dtype=float), v.shape).copy()
    if np.any(mu < 0):
        raise ValueError("mu must be >= 0")

    x, status = kernels.erf_prox_array(v, mu, float(sigma), float(newton_tol), int(newton_max))
    if status == 1:
        raise common.NoConvergence("ERF prox root search did not converge (sigma=%g)" % sigma)
    return x
