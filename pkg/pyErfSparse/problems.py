"""
Test problem generators

- over-sampled DCT matrices with coherence controlled by F
- Gaussian sensing matrices with zero-mean, unit-norm columns
- real-stacked partial Fourier operators for super-resolution
- sparse signals on supports with a minimum wrap-around separation
- a columnar text format for matrices and signals

"""

import dataclasses
import logging
import math
from typing import Tuple

import numpy as np

from pyErfSparse import common
from pyErfSparse.common import DenseMatrix, Infeasible, RngStream, Signal

logger = logging.getLogger(__name__)

MAX_SUPPORT_DRAWS = 10 ** 4


@dataclasses.dataclass(frozen=True)
class DctSpec:
    m: int = 64
    n: int = 1024
    F: float = 1.0

    def __post_init__(self):
        if not (1 <= self.m < self.n):
            raise ValueError("DCT shape needs 1 <= m < n, got %dx%d" % (self.m, self.n))
        if not self.F > 0:
            raise ValueError("F must be > 0")


@dataclasses.dataclass(frozen=True)
class SuperResSpec:
    N: int = 1000
    fc: int = 31

    def __post_init__(self):
        if self.fc < 0 or not 2 * self.fc + 1 < self.N:
            raise ValueError("Super-resolution spec needs 2 fc + 1 < N, got fc=%d N=%d" % (self.fc, self.N))

    @property
    def rows(self) -> int:
        return 2 * self.fc + 1

    def msf(self, ms) -> float:
        """Minimum separation factor MS * fc / N."""
        return ms * self.fc / self.N


@dataclasses.dataclass
class SpikeTrain:
    N: int
    support: np.ndarray
    coefficients: np.ndarray
    min_separation: float

    @property
    def sparsity(self) -> int:
        return int(self.support.size)

    def signal(self) -> Signal:
        x = np.zeros(self.N)
        x[self.support] = self.coefficients
        return x


def oversampled_dct(spec: DctSpec, rng: RngStream) -> DenseMatrix:
    """Over-sampled DCT matrix.

    Column j (1-based) is cos(2 pi j w / F) / sqrt(m), with w uniform on
    [0, 1]^m drawn once per matrix. Larger F gives more coherent columns.
    """
    w = rng.uniform(0.0, 1.0, size=spec.m)
    j = np.arange(1, spec.n + 1)
    return np.cos(2.0 * np.pi * np.outer(w, j) / spec.F) / np.sqrt(spec.m)


def gaussian_sensing_matrix(m: int, n: int, rng: RngStream) -> DenseMatrix:
    """Standard normal matrix with mean-subtracted, unit-norm columns."""
    if m < 2:
        raise ValueError("Gaussian sensing matrix needs m >= 2")
    G = rng.standard_normal((m, n))
    G -= G.mean(axis=0)
    G /= np.linalg.norm(G, axis=0)
    return G


def partial_fourier_real(spec: SuperResSpec) -> DenseMatrix:
    """Low-pass Fourier measurements of a real signal, as a real operator.

    Rows are cos(2 pi k t / N) / sqrt(N) for k = 0..fc followed by
    -sin(2 pi k t / N) / sqrt(N) for k = 1..fc, so that A x stacks the real
    and imaginary parts of (1/sqrt(N)) sum_t x_t exp(-i 2 pi k t / N).
    """
    t = np.arange(spec.N)
    k_cos = np.arange(0, spec.fc + 1)
    k_sin = np.arange(1, spec.fc + 1)
    cos_rows = np.cos(2.0 * np.pi * np.outer(k_cos, t) / spec.N)
    sin_rows = -np.sin(2.0 * np.pi * np.outer(k_sin, t) / spec.N)
    return np.vstack([cos_rows, sin_rows]) / np.sqrt(spec.N)


def circular_gaps(support, n: int) -> np.ndarray:
    """Wrap-around gaps between consecutive support positions."""
    idx = np.sort(np.asarray(support, dtype=int))
    if idx.size < 2:
        return np.array([n] * idx.size, dtype=int)
    return np.diff(np.append(idx, idx[0] + n))


def min_circular_distance(support, n: int) -> float:
    """Smallest wrap-around distance between two support positions (inf if fewer than 2)."""
    gaps = circular_gaps(support, n)
    if gaps.size < 2:
        return math.inf
    return float(gaps.min())


def min_sep_support(n: int, s: int, min_gap: float, rng: RngStream) -> np.ndarray:
    """Random support of size s with pairwise wrap-around distance >= min_gap.

    The s circular gaps are g plus a random composition of n - s g into s
    non-negative parts (g = ceil(min_gap)), placed from a uniform offset.
    Each draw is verified and redrawn on violation.

    Args:
        n (int): signal length
        s (int): support size
        min_gap (float): minimum separation
        rng (Generator): random stream

    Returns:
        ndarray: strictly increasing indices in [0, n)

    """
    if s < 0:
        raise ValueError("Support size must be >= 0")
    if s == 0:
        return np.array([], dtype=int)

    g = max(1, int(math.ceil(min_gap)))
    if s * g > n:
        raise Infeasible("Cannot place %d indices with separation %g in length %d" % (s, min_gap, n))

    if s == 1:
        return np.array([int(rng.integers(n))])

    slack = n - s * g
    for _ in range(MAX_SUPPORT_DRAWS):
        cuts = np.sort(rng.integers(0, slack + 1, size=s - 1))
        parts = np.diff(np.concatenate([[0], cuts, [slack]]))
        offset = int(rng.integers(n))
        pos = offset + np.concatenate([[0], np.cumsum(g + parts[:-1])])
        support = np.sort(pos % n)

        if np.unique(support).size == s and min_circular_distance(support, n) >= min_gap:
            return support

    raise Infeasible("No valid support after %d draws" % MAX_SUPPORT_DRAWS)


def sparse_gaussian_signal(n: int, support, rng: RngStream) -> Signal:
    """Standard normal values on the support, zeros elsewhere."""
    idx = common.check_support(support, n)
    x = np.zeros(n)
    x[idx] = rng.standard_normal(idx.size)
    return x


def spike_train(spec: SuperResSpec, ms: float, rng: RngStream) -> SpikeTrain:
    """Spikes on the discrete circle of length N with separation >= ms.

    From a uniform offset, integer gaps uniform in [MS, 2 MS] are added
    while the closing wrap-around gap stays >= MS. Coefficients are
    standard normal. The realized number of spikes is SpikeTrain.sparsity.
    """
    g = max(1, int(math.ceil(ms)))
    N = spec.N
    if 2 * g > N:
        raise Infeasible("Separation %g leaves no room for two spikes on %d points" % (ms, N))

    offset = int(rng.integers(N))
    pos = [0]
    total = 0
    while True:
        gap = int(rng.integers(g, 2 * g + 1))
        if N - (total + gap) < g:
            break
        total += gap
        pos.append(total)

    support = np.sort((offset + np.asarray(pos)) % N)
    coef = rng.standard_normal(support.size)
    return SpikeTrain(N=N, support=support, coefficients=coef, min_separation=float(ms))


def add_gaussian_noise(b, sigma_noise: float, rng: RngStream) -> Signal:
    """b + sigma_noise * standard normal noise."""
    if not sigma_noise >= 0:
        raise ValueError("sigma_noise must be >= 0")
    b = common.as_signal(b)
    if sigma_noise == 0:
        return b.copy()
    return b + sigma_noise * rng.standard_normal(b.shape[0])


def _normalized_gram(A) -> np.ndarray:
    A = common.as_matrix(A)
    norms = np.linalg.norm(A, axis=0)
    if np.any(norms == 0):
        raise ValueError("Coherence undefined for zero columns")
    An = A / norms
    G = np.abs(An.T @ An)
    np.fill_diagonal(G, 0.0)
    return G


def mutual_coherence(A) -> float:
    """Largest absolute normalized inner product of two distinct columns."""
    return float(_normalized_gram(A).max())


def mean_coherence(A) -> float:
    """Mean absolute normalized inner product over distinct column pairs."""
    G = _normalized_gram(A)
    n = G.shape[0]
    return float(G.sum() / (n * (n - 1)))


def save_matrix(path, M) -> None:
    """Write a matrix (or a signal, as one column) in the columnar text format.

    The first line is "rows cols", followed by one row per line with
    whitespace-separated entries in scientific notation.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    with open(path, "w") as f:
        f.write("%d %d\n" % M.shape)
        np.savetxt(f, M, fmt="%.17e")


def load_matrix(path) -> DenseMatrix:
    """Read a matrix written by save_matrix()."""
    with open(path) as f:
        header = f.readline().split()
        if len(header) != 2:
            raise ValueError("%s: first line must be 'rows cols'" % path)
        rows, cols = int(header[0]), int(header[1])
        values = np.array(f.read().split(), dtype=float)

    if values.size != rows * cols:
        raise ValueError("%s: expected %d entries, found %d" % (path, rows * cols, values.size))
    return common.as_matrix(values.reshape(rows, cols))


def load_signal(path) -> Signal:
    """Read a signal written by save_matrix(); any one-row or one-column matrix is accepted."""
    M = load_matrix(path)
    if 1 not in M.shape:
        raise common.DimensionMismatch("%s holds a %dx%d matrix, not a signal" % ((path,) + M.shape))
    return M.ravel()


def dct_instance(spec: DctSpec, s: int, rng: RngStream) -> Tuple[DenseMatrix, Signal, Signal]:
    """Exact noise-free DCT instance with a 2F-separated Gaussian support."""
    A = oversampled_dct(spec, rng)
    support = min_sep_support(spec.n, s, 2 * spec.F, rng)
    x = sparse_gaussian_signal(spec.n, support, rng)
    return A, A @ x, x


def noisy_gaussian_instance(m: int, n: int, s: int, sigma_noise: float, rng: RngStream):
    """Gaussian instance with noisy measurements.

    Returns:
        (A, b, x, support)

    """
    A = gaussian_sensing_matrix(m, n, rng)
    support = np.sort(rng.choice(n, size=s, replace=False))
    x = sparse_gaussian_signal(n, support, rng)
    b = add_gaussian_noise(A @ x, sigma_noise, rng)
    return A, b, x, support
