"""
Experiment definitions

ExperimentSpec holds the sweep grid, trial count, seed, methods and solver
settings of one benchmark. ``defaults(kind)`` returns the standard
setup of each benchmark; every field can be overridden from flat
key=value pairs (lists comma-separated, solver fields prefixed with
``solver.``).

"""

import dataclasses
import enum
import math
from typing import Any, Dict, List, Mapping, Tuple

import numpy as np

from pyErfSparse.common import SolverConfig
from pyErfSparse.penalty import Penalty, RegularizerSpec


class ExperimentKind(enum.Enum):
    SIGMA_SWEEP = "sigma_sweep"
    SUCCESS_RATE = "success_rate"
    SUPERRES = "superres"
    NOISY = "noisy"


SPARSITY_GRID = [2, 6, 10, 14, 18, 22, 26, 30]


@dataclasses.dataclass
class ExperimentSpec:
    kind: ExperimentKind
    trials: int = 50
    seed: int = 0

    # noise-free DCT experiments
    m: int = 64
    n: int = 1024
    F: List[float] = dataclasses.field(default_factory=lambda: [1.0, 5.0, 10.0, 20.0])
    sigma: List[float] = dataclasses.field(default_factory=lambda: [0.1, 0.5, 1.0, 2.0, 10.0, 1000.0])
    sigma_by_F: Dict[float, float] = dataclasses.field(
        default_factory=lambda: {1.0: 0.1, 5.0: 0.5, 10.0: 0.5, 20.0: 1.0}
    )
    sparsity: List[int] = dataclasses.field(default_factory=lambda: list(SPARSITY_GRID))
    success_tol: float = 1e-3

    # super-resolution
    N: int = 1000
    ms: float = 20.0
    fc: List[int] = dataclasses.field(default_factory=lambda: list(range(31, 61)))
    erf_sigma_superres: float = 0.5

    # noisy Gaussian
    m_list: List[int] = dataclasses.field(default_factory=lambda: list(range(240, 351, 10)))
    n_noisy: int = 512
    s_noisy: int = 130
    sigma_noise: float = 0.1
    lambda_scale: float = 0.5
    erf_sigma_noisy: float = 0.5
    table_m: List[int] = dataclasses.field(default_factory=lambda: [240, 270, 310, 340])

    # methods and their parameters
    methods: List[str] = dataclasses.field(
        default_factory=lambda: ["logsum", "lp-irl1", "tl1", "l1-l2", "erf", "l1"]
    )
    lp_p: float = 0.5
    lp_epsilon: float = 0.01
    tl1_a: float = 1.0

    solver: SolverConfig = dataclasses.field(default_factory=SolverConfig)

    def __post_init__(self):
        self.kind = ExperimentKind(self.kind)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        grids = {
            ExperimentKind.SIGMA_SWEEP: ("F", "sigma", "sparsity"),
            ExperimentKind.SUCCESS_RATE: ("F", "sparsity", "methods"),
            ExperimentKind.SUPERRES: ("fc", "methods"),
            ExperimentKind.NOISY: ("m_list", "methods"),
        }[self.kind]
        for name in grids:
            if not getattr(self, name):
                raise ValueError("%s grid must not be empty" % name)
        for name in self.methods:
            Penalty.parse(name)
        if not self.success_tol > 0:
            raise ValueError("success_tol must be > 0")

    @classmethod
    def defaults(cls, kind) -> "ExperimentSpec":
        kind = ExperimentKind(kind)
        if kind is ExperimentKind.SIGMA_SWEEP:
            return cls(kind, methods=["erf"])
        if kind is ExperimentKind.SUCCESS_RATE:
            return cls(kind)
        if kind is ExperimentKind.SUPERRES:
            return cls(kind, trials=100, success_tol=1.5e-3, methods=["l1", "l1-l2", "erf"])
        return cls(kind, trials=100, methods=["l1", "l1-l2", "erf", "lp-irl1"])

    def erf_sigma_for(self, F) -> float:
        """ERF scale used for a DCT coherence level F in the method comparison."""
        for key, value in self.sigma_by_F.items():
            if math.isclose(float(key), float(F)):
                return float(value)
        raise ValueError("No ERF sigma configured for F=%g" % F)

    def method_spec(self, name, sigma=None) -> RegularizerSpec:
        """RegularizerSpec of a method name with this spec's parameters."""
        kind = Penalty.parse(name)
        if kind is Penalty.ERF:
            if sigma is None:
                raise ValueError("ERF method needs sigma")
            return RegularizerSpec.erf(sigma)
        if kind is Penalty.LOGSUM:
            return RegularizerSpec.logsum(self.solver.epsilon)
        if kind is Penalty.LP:
            return RegularizerSpec.lp(self.lp_p, self.lp_epsilon)
        if kind is Penalty.TL1:
            return RegularizerSpec.tl1(self.tl1_a)
        if kind is Penalty.L1MINUSL2:
            return RegularizerSpec.l1l2()
        if kind is Penalty.L1:
            return RegularizerSpec.l1()
        raise ValueError("%s is not a benchmark method" % name)

    def noisy_lambda(self) -> float:
        """lam = c sigma_noise sqrt(2 log n)."""
        return self.lambda_scale * self.sigma_noise * math.sqrt(2.0 * math.log(self.n_noisy))

    def updated(self, values: Mapping[str, Any]) -> "ExperimentSpec":
        """Copy with fields overridden by (possibly string) values."""
        changes = {}
        solver_changes = {}
        fields = {f.name: f for f in dataclasses.fields(self)}
        for key, raw in values.items():
            key = key.strip()
            if key.startswith("solver."):
                solver_changes[key[len("solver."):]] = raw
                continue
            if key not in fields or key in ("kind", "solver"):
                raise ValueError("Unknown experiment setting: %s" % key)
            changes[key] = _coerce(key, raw, getattr(self, key), fields[key].type)

        spec = dataclasses.replace(self, **changes)
        if solver_changes:
            spec = dataclasses.replace(spec, solver=SolverConfig.from_mapping(solver_changes, base=spec.solver))
        return spec

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["kind"] = self.kind.value
        out["sigma_by_F"] = {str(k): v for k, v in self.sigma_by_F.items()}
        out["solver"] = self.solver.to_dict()
        return out


def _coerce(name, raw, current, typ):
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    if isinstance(current, dict):
        out = {}
        for item in text.split(","):
            if not item.strip():
                continue
            k, _, v = item.partition(":")
            out[float(k)] = float(v)
        return out
    if isinstance(current, list):
        items = [t.strip() for t in text.split(",") if t.strip()]
        if typ == List[str]:
            return items
        if typ == List[int]:
            return [int(t) for t in items]
        return [float(t) for t in items]
    if isinstance(current, bool):
        return text.lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(text)
    return float(text)


@dataclasses.dataclass
class TrialRecord:
    """Outcome of one method on one trial of one grid point."""

    trial: int
    seed: int
    method: str
    grid_key: str
    rel_err: float = float("nan")
    success: bool = False
    mse: float = float("nan")
    wall_s: float = 0.0
    realized_sparsity: int = 0

    HEADER = ("trial", "seed", "method", "grid_key", "rel_err", "success", "mse", "wall_s")

    def row(self) -> Tuple:
        return (
            self.trial,
            self.seed,
            self.method,
            self.grid_key,
            _fmt(self.rel_err),
            int(self.success),
            _fmt(self.mse),
            "%.6f" % self.wall_s,
        )


def _fmt(value) -> str:
    if value is None or not np.isfinite(value):
        return "nan"
    return "%.10g" % value
