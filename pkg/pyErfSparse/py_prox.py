"""
Scalar proximal kernels, pure Python version.

``nb_prox`` holds the same functions compiled with numba; the package uses it
when numba is installed. Both modules return a status code instead of raising,
so that the compiled version stays in nopython mode:

- 0: ok
- 1: root finding did not converge within the iteration cap
- 2: arccos argument out of [-1, 1] beyond rounding slack

"""

import math

import numpy as np

SQRT_PI = math.sqrt(math.pi)
ACOS_SLACK = 1e-12


def _fdf(code, x, t, mu, s2):
    """Function value and derivative of the scalar equations.

    code 0: g(x) = x + mu exp(-x^2/s2) - t (stationarity of the ERF prox)
    code 1: k(x) = 2 mu x / s2 exp(-x^2/s2) - 1 (k = 0 where g' = 0)
    """
    e = math.exp(-x * x / s2)
    if code == 0:
        return x + mu * e - t, 1.0 - 2.0 * mu * x / s2 * e
    return 2.0 * mu * x / s2 * e - 1.0, 2.0 * mu / s2 * e * (1.0 - 2.0 * x * x / s2)


def _safeguarded(code, lo, hi, x0, t, mu, s2, tol, maxit):
    """Newton iteration kept inside a sign-changing bracket [lo, hi].

    Falls back to bisection when the Newton step leaves the bracket or
    does not shrink fast enough.
    """
    flo = _fdf(code, lo, t, mu, s2)[0]
    fhi = _fdf(code, hi, t, mu, s2)[0]
    if flo == 0.0:
        return lo, 0
    if fhi == 0.0:
        return hi, 0

    # xl: f < 0, xh: f > 0
    if flo < 0.0:
        xl, xh = lo, hi
    else:
        xl, xh = hi, lo

    if lo < x0 < hi:
        x = x0
    else:
        x = 0.5 * (lo + hi)

    dxold = abs(hi - lo)
    dx = dxold
    f, df = _fdf(code, x, t, mu, s2)

    for _ in range(maxit):
        if ((x - xh) * df - f) * ((x - xl) * df - f) > 0.0 or abs(2.0 * f) > abs(
            dxold * df
        ):
            dxold = dx
            dx = 0.5 * (xh - xl)
            x = xl + dx
        else:
            dxold = dx
            dx = f / df
            x = x - dx

        if abs(dx) <= tol * (1.0 + abs(x)):
            return x, 0

        f, df = _fdf(code, x, t, mu, s2)
        if f == 0.0:
            return x, 0
        if f < 0.0:
            xl = x
        else:
            xh = x

        if abs(xh - xl) <= tol * (1.0 + abs(x)):
            return x, 0

    return x, 1


def _erf_prox_objective(x, t, mu, sigma):
    return mu * 0.5 * sigma * SQRT_PI * math.erf(x / sigma) + 0.5 * (x - t) ** 2


def erf_prox_scalar(v, mu, sigma, tol, maxit):
    """Proximal map of mu * Phi_sigma at v.

    Returns:
        (float, int): prox value and status code

    """
    t = abs(v)
    if t <= mu:
        return 0.0, 0

    s2 = sigma * sigma

    # g = x + mu exp(-x^2/s2) - t has at most two critical points, both
    # around sigma/sqrt(2) where 2 mu x/s2 exp(-x^2/s2) peaks
    c = sigma / math.sqrt(2.0)
    peak = math.sqrt(2.0) * mu / sigma * math.exp(-0.5)

    pts = np.empty(4)
    pts[0] = 0.0
    npts = 1
    status = 0

    if peak > 1.0:
        xa, st = _safeguarded(1, 0.0, c, 0.5 * c, t, mu, s2, tol, maxit)
        status = max(status, st)

        hi = 2.0 * c
        for _ in range(64):
            if _fdf(1, hi, t, mu, s2)[0] < 0.0:
                break
            hi = 2.0 * hi
        xb, st = _safeguarded(1, c, hi, 0.5 * (c + hi), t, mu, s2, tol, maxit)
        status = max(status, st)

        if xa < t:
            pts[npts] = xa
            npts += 1
        if xb < t:
            pts[npts] = xb
            npts += 1

    pts[npts] = t
    npts += 1

    x0 = t - mu * math.exp(-t * t / s2)
    best = t
    best_val = math.inf

    for i in range(npts - 1):
        lo = pts[i]
        hi = pts[i + 1]
        if hi <= lo:
            continue
        glo = _fdf(0, lo, t, mu, s2)[0]
        ghi = _fdf(0, hi, t, mu, s2)[0]
        if glo < 0.0 <= ghi:
            x, st = _safeguarded(0, lo, hi, x0, t, mu, s2, tol, maxit)
            status = max(status, st)
        elif glo == 0.0 and lo > 0.0:
            x = lo
        else:
            continue

        val = _erf_prox_objective(x, t, mu, sigma)
        if val < best_val:
            best_val = val
            best = x

    return math.copysign(best, v), status


def erf_prox_array(v, mu, sigma, tol, maxit):
    """Apply erf_prox_scalar() to every entry; mu has the shape of v."""
    out = np.empty(v.shape[0])
    status = 0
    for i in range(v.shape[0]):
        x, st = erf_prox_scalar(v[i], mu[i], sigma, tol, maxit)
        out[i] = x
        status = max(status, st)
    return out, status


def _tl1_prox_objective(x, t, mu, a):
    return mu * (a + 1.0) * x / (a + x) + 0.5 * (x - t) ** 2


def tl1_prox_scalar(v, mu, a):
    """Proximal map of mu * (a+1)|x|/(a+|x|) at v.

    Returns:
        (float, int): prox value and status code

    """
    t = abs(v)
    if mu == 0.0:
        return v, 0

    if mu <= a * a / (2.0 * (a + 1.0)):
        thresh = mu * (a + 1.0) / a
    else:
        thresh = math.sqrt(2.0 * mu * (a + 1.0)) - 0.5 * a

    if t <= thresh:
        return 0.0, 0

    arg = 1.0 - 27.0 * mu * a * (a + 1.0) / (2.0 * (a + t) ** 3)
    if arg < -1.0:
        if arg < -1.0 - ACOS_SLACK:
            return math.nan, 2
        arg = -1.0
    elif arg > 1.0:
        if arg > 1.0 + ACOS_SLACK:
            return math.nan, 2
        arg = 1.0

    phi = math.acos(arg)
    x = 2.0 / 3.0 * (a + t) * math.cos(phi / 3.0) - 2.0 * a / 3.0 + t / 3.0
    x = max(x, 0.0)

    if _tl1_prox_objective(x, t, mu, a) > _tl1_prox_objective(0.0, t, mu, a):
        return 0.0, 0

    return math.copysign(x, v), 0


def tl1_prox_array(v, mu, a):
    """Apply tl1_prox_scalar() to every entry; mu has the shape of v."""
    out = np.empty(v.shape[0])
    status = 0
    for i in range(v.shape[0]):
        x, st = tl1_prox_scalar(v[i], mu[i], a)
        out[i] = x
        status = max(status, st)
    return out, status
