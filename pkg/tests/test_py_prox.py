import math

import numpy as np

from pyErfSparse import py_prox


def test_safeguarded_root():
    # mu = 0 turns the stationarity equation into x - t = 0
    x, status = py_prox._safeguarded(0, 0.0, 3.0, 1.0, 2.0, 0.0, 1.0, 1e-12, 100)
    assert status == 0
    assert x == 2.0


def test_critical_points():
    mu, sigma = 1.0, 0.5
    s2 = sigma * sigma
    c = sigma / math.sqrt(2.0)
    xa, st = py_prox._safeguarded(1, 0.0, c, 0.5 * c, 2.0, mu, s2, 1e-12, 100)
    assert st == 0
    assert abs(py_prox._fdf(1, xa, 2.0, mu, s2)[0]) < 1e-9


def test_erf_prox_scalar():
    assert py_prox.erf_prox_scalar(0.5, 1.0, 1.0, 1e-12, 100) == (0.0, 0)

    x, status = py_prox.erf_prox_scalar(-2.0, 1.0, 1.0, 1e-12, 100)
    assert status == 0
    assert x < 0
    assert abs(-x + math.exp(-x * x) - 2.0) < 1e-10

    _, status = py_prox.erf_prox_scalar(1.2, 1.0, 0.5, 1e-12, 1)
    assert status == 1


def test_erf_prox_array():
    v = np.array([0.5, 1.5, -3.0])
    x, status = py_prox.erf_prox_array(v, np.ones(3), 1.0, 1e-12, 100)
    assert status == 0
    assert x[0] == 0.0
    for i in range(3):
        assert x[i] == py_prox.erf_prox_scalar(v[i], 1.0, 1.0, 1e-12, 100)[0]


def test_tl1_prox_scalar():
    assert py_prox.tl1_prox_scalar(0.1, 1.0, 1.0) == (0.0, 0)
    assert py_prox.tl1_prox_scalar(-4.0, 0.0, 1.0) == (-4.0, 0)

    x, status = py_prox.tl1_prox_scalar(3.0, 1.0, 1.0)
    assert status == 0
    # stationarity of mu (a+1) x/(a+x) + (x - t)^2 / 2
    assert abs(x - 3.0 + 2.0 / (1.0 + x) ** 2) < 1e-10


def test_tl1_prox_array():
    v = np.linspace(-3, 3, 13)
    x, status = py_prox.tl1_prox_array(v, np.full(13, 0.5), 2.0)
    assert status == 0
    assert np.all(np.abs(x) <= np.abs(v))
    assert np.all(x * v >= 0)
