"""Recovery metrics and the oracle least-squares benchmark."""

import numpy as np

from pyErfSparse import common


def relative_error(x_hat, x_true) -> float:
    """||x_hat - x_true||_2 / ||x_true||_2."""
    x_hat = common.as_signal(x_hat)
    x_true = common.as_signal(x_true)
    if x_hat.shape != x_true.shape:
        raise common.DimensionMismatch("Estimate and truth differ in length")
    nrm = np.linalg.norm(x_true)
    if nrm == 0:
        raise common.ZeroTruth("Relative error is undefined for a zero ground truth")
    return float(np.linalg.norm(x_hat - x_true) / nrm)


def success(x_hat, x_true, tol) -> bool:
    """True when relative_error() < tol."""
    if not tol > 0:
        raise ValueError("tol must be > 0")
    return relative_error(x_hat, x_true) < tol


def squared_error(x_hat, x_true) -> float:
    """||x_hat - x_true||_2^2, summed over coordinates."""
    d = common.as_signal(x_hat) - common.as_signal(x_true)
    return float(np.dot(d, d))


def _support_columns(A, support):
    A = common.as_matrix(A)
    idx = common.check_support(support, A.shape[1])
    As = A[:, idx]
    if idx.size == 0 or np.linalg.matrix_rank(As) < idx.size:
        raise common.RankDeficient("Columns on the support are not linearly independent")
    return A, idx, As


def oracle_mse(A, support, sigma_noise) -> float:
    """Expected squared error of least squares on the true support.

    sigma^2 tr((A_S^T A_S)^-1)
    """
    _, idx, As = _support_columns(A, support)
    op = common.factor_spd(As.T @ As)
    inv = op.solve(np.eye(idx.size))
    return float(sigma_noise ** 2 * np.trace(inv))


def oracle_least_squares(A, b, support) -> common.Signal:
    """Least-squares fit of b restricted to the columns on the support."""
    A, idx, As = _support_columns(A, support)
    x = np.zeros(A.shape[1])
    x[idx] = np.linalg.lstsq(As, common.as_signal(b), rcond=None)[0]
    return x
