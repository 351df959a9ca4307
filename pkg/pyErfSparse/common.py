"""
Common types and helpers shared by the penalty, solver and experiment modules

- matrices and signals are plain float64 numpy arrays (row-major, dense)
- all randomness goes through seeded_rng() / trial_rng()
- SPD systems are factorized once and reused through LinearSolveOperator

"""

import dataclasses
import hashlib
from typing import Any, List, Mapping, Optional, Sequence

import numpy as np
from scipy import linalg

DenseMatrix = np.ndarray
Signal = np.ndarray
RngStream = np.random.Generator


class ErfSparseError(RuntimeError):
    """Base class of all errors raised by pyErfSparse."""


class DimensionMismatch(ErfSparseError):
    pass


class NotSPD(ErfSparseError):
    pass


class NoConvergence(ErfSparseError):
    pass


class DomainError(ErfSparseError):
    pass


class UnknownPenalty(ErfSparseError):
    pass


class Infeasible(ErfSparseError):
    pass


class ZeroTruth(ErfSparseError):
    pass


class RankDeficient(ErfSparseError):
    pass


def as_matrix(A) -> DenseMatrix:
    """Check and convert input to a dense 2-d float matrix."""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch("Matrix must be 2-d with at least one row and column.")
    if not np.all(np.isfinite(M)):
        raise ValueError("Matrix entries must be finite.")
    return M


def as_signal(x) -> Signal:
    """Check and convert input to a 1-d float vector."""
    v = np.asarray(x, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1:
        raise DimensionMismatch("Signal must be a 1-d vector, got shape %s" % (v.shape,))
    if not np.all(np.isfinite(v)):
        raise ValueError("Signal values must be finite.")
    return v


def like_input(values, x):
    """Return a float for scalar x, the array otherwise."""
    if np.ndim(x) == 0:
        return float(values)
    return values


def matvec(A: DenseMatrix, x: Signal) -> Signal:
    """Dense product A x."""
    if A.shape[1] != x.shape[0]:
        raise DimensionMismatch(
            "Cannot multiply %dx%d matrix by vector of length %d"
            % (A.shape[0], A.shape[1], x.shape[0])
        )
    return A @ x


def matvec_t(A: DenseMatrix, y: Signal) -> Signal:
    """Dense product A^T y."""
    if A.shape[0] != y.shape[0]:
        raise DimensionMismatch(
            "Cannot multiply transpose of %dx%d matrix by vector of length %d"
            % (A.shape[0], A.shape[1], y.shape[0])
        )
    return A.T @ y


class LinearSolveOperator(object):
    """Cholesky factor of a symmetric positive definite matrix.

    The factor is computed once and reused for many right-hand sides. Instances
    are not modified after construction, so they can be shared between workers.
    """

    def __init__(self, M: DenseMatrix):
        self.n = M.shape[0]
        self._M = M
        self._factor = linalg.cho_factor(M, lower=True, check_finite=False)

    def solve(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if r.shape[0] != self.n:
            raise DimensionMismatch(
                "Right-hand side of length %d for %dx%d system" % (r.shape[0], self.n, self.n)
            )
        return linalg.cho_solve(self._factor, r, check_finite=False)

    def residual(self, x, r) -> float:
        """Euclidean norm of M x - r."""
        return float(np.linalg.norm(self._M @ x - r))


def factor_spd(M) -> LinearSolveOperator:
    """Factorize a symmetric positive definite matrix.

    Args:
        M: square matrix, symmetric within 1e-12 (relative to its largest entry)

    Returns:
        LinearSolveOperator: reusable solver for M x = r

    """
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch("Matrix must be square, got %dx%d" % M.shape)

    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(M - M.T)) > 1e-12 * scale:
        raise NotSPD("Matrix is not symmetric.")

    try:
        return LinearSolveOperator(0.5 * (M + M.T))
    except np.linalg.LinAlgError as e:
        raise NotSPD("Cholesky factorization failed: %s" % e)


def seeded_rng(seed: int) -> RngStream:
    """Deterministic random stream for a seed."""
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def grid_hash(key: str) -> int:
    """Stable 32-bit integer of a grid key (independent of PYTHONHASHSEED)."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def trial_rng(seed: int, trial: int, key: str = "") -> RngStream:
    """Random stream owned by one trial of one grid point.

    The stream depends only on (seed, key, trial), so trials give the same
    draws whether they run sequentially or in worker processes.
    """
    entropy = [int(seed) & 0xFFFFFFFF, grid_hash(key), int(trial)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def trial_seed(seed: int, trial: int, key: str = "") -> int:
    """Integer seed recorded next to each trial, derived like trial_rng()."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, grid_hash(key), int(trial)])
    return int(ss.generate_state(1)[0])


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    """Iteration caps, tolerances and model weights of the sparse solvers.

    ``delta=None`` selects the solver default: 1 for basis pursuit, ``lam``
    for the lasso subproblem.
    """

    max_outer: int = 20
    max_inner: int = 5000
    outer_tol: float = 1e-8
    inner_primal_tol: float = 1e-10
    inner_dual_tol: float = 1e-10
    inner_rel_tol: float = 1e-8
    delta: Optional[float] = None
    lam: float = 0.1
    epsilon: float = 0.1
    reuse_dual_bp: bool = True
    reuse_dual_lasso: bool = False
    newton_tol: float = 1e-12
    newton_max: int = 100
    monotone: bool = True

    def __post_init__(self):
        for name in ("max_outer", "max_inner", "newton_max"):
            if int(getattr(self, name)) < 1:
                raise ValueError("%s must be >= 1" % name)
        for name in ("outer_tol", "inner_primal_tol", "inner_dual_tol", "inner_rel_tol", "newton_tol"):
            if not getattr(self, name) > 0:
                raise ValueError("%s must be > 0" % name)
        if self.delta is not None and not self.delta > 0:
            raise ValueError("delta must be > 0")
        if not self.lam >= 0:
            raise ValueError("lam must be >= 0")
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be >= 0")

    def bp_delta(self) -> float:
        return 1.0 if self.delta is None else float(self.delta)

    def lasso_delta(self) -> float:
        if self.delta is not None:
            return float(self.delta)
        return float(self.lam) if self.lam > 0 else 1.0

    def replace(self, **changes) -> "SolverConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any], base: Optional["SolverConfig"] = None) -> "SolverConfig":
        """Build a config from (possibly string) values, e.g. parsed key=value pairs.

        Settings not in ``values`` are taken from ``base`` (or the defaults).
        """
        kwargs = base.to_dict() if base is not None else {}
        fields = {f.name: f for f in dataclasses.fields(cls)}
        for key, raw in values.items():
            key = key.strip()
            if key not in fields:
                raise ValueError("Unknown solver setting: %s" % key)
            kwargs[key] = _coerce(key, raw, fields[key].default)
        return cls(**kwargs)


def _coerce(name: str, raw: Any, default: Any) -> Any:
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    if isinstance(default, bool):
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError("%s expects a boolean, got %r" % (name, raw))
    if isinstance(default, int):
        return int(text)
    if text.lower() == "none":
        return None
    return float(text)


@dataclasses.dataclass
class SolverReport:
    """Outcome of one solver run.

    ``residual_trace`` holds ||Ax - b||_2 next to each objective value.
    ``dual`` is the final scaled ADMM dual of an inner solve, kept so the
    next outer step can warm start from it; it is not part of to_dict().
    """

    solution: Signal
    objective_trace: List[float] = dataclasses.field(default_factory=list)
    outer_iters: int = 0
    total_inner_iters: int = 0
    converged: bool = False
    wall_seconds: float = 0.0
    residual_trace: List[float] = dataclasses.field(default_factory=list)
    dual: Optional[Signal] = None

    def to_dict(self) -> dict:
        return {
            "objective_trace": [float(v) for v in self.objective_trace],
            "residual_trace": [float(v) for v in self.residual_trace],
            "outer_iters": int(self.outer_iters),
            "total_inner_iters": int(self.total_inner_iters),
            "converged": bool(self.converged),
            "wall_seconds": float(self.wall_seconds),
        }


def support_of(x: Signal, tol: float = 0.0) -> np.ndarray:
    """Indices of entries with magnitude above tol, increasing."""
    return np.flatnonzero(np.abs(x) > tol)


def check_support(indices: Sequence[int], n: int) -> np.ndarray:
    """Validate a support set: strictly increasing positions in [0, n)."""
    idx = np.asarray(indices, dtype=int)
    if idx.ndim != 1:
        raise DimensionMismatch("Support must be 1-d.")
    if idx.size and (idx[0] < 0 or idx[-1] >= n or np.any(np.diff(idx) <= 0)):
        raise ValueError("Support must be strictly increasing positions in [0, %d)" % n)
    return idx


