"""
Penalty catalog and dispatch

A RegularizerSpec names a penalty kind with its parameters. The functions in
this module evaluate the penalty, compute IRL1 weights and apply proximal
maps by dispatching to the per-penalty modules.

"""

import dataclasses
import enum
from typing import Union

import numpy as np

from pyErfSparse import common
from pyErfSparse.penalty import cl1, erf, l0, l1, l1l2, logsum, lp, mcp, scad, tl1


class Penalty(enum.Enum):
    ERF = "erf"
    L1 = "l1"
    L0 = "l0"
    LOGSUM = "logsum"
    LP = "lp"
    TL1 = "tl1"
    L1MINUSL2 = "l1-l2"
    CL1 = "cl1"
    SCAD = "scad"
    MCP = "mcp"

    @classmethod
    def parse(cls, name) -> "Penalty":
        """Penalty from its name, label or member; raises UnknownPenalty."""
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        if key == "lp-irl1":
            return cls.LP
        if key in ("l1l2", "l1minusl2"):
            return cls.L1MINUSL2
        for member in cls:
            if member.value == key or member.name.lower() == key:
                return member
        raise common.UnknownPenalty("Unknown penalty: %s" % name)


IRL1_KINDS = (Penalty.ERF, Penalty.L1, Penalty.LOGSUM, Penalty.LP, Penalty.TL1)


@dataclasses.dataclass(frozen=True)
class ErfParams:
    sigma: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("sigma must be finite and > 0, got %r" % (self.sigma,))


@dataclasses.dataclass(frozen=True)
class BaselineParams:
    """Parameters of the non-ERF penalties; each kind reads only its own."""

    a: float = 1.0
    p: float = 0.5
    lambda_pen: float = 1.0
    gamma: float = 3.0
    epsilon: float = 0.1


@dataclasses.dataclass(frozen=True)
class RegularizerSpec:
    kind: Penalty
    params: Union[ErfParams, BaselineParams] = dataclasses.field(default_factory=BaselineParams)

    def __post_init__(self):
        kind = Penalty.parse(self.kind)
        object.__setattr__(self, "kind", kind)
        prm = self.params

        if kind is Penalty.ERF:
            if not isinstance(prm, ErfParams):
                raise ValueError("ERF penalty needs ErfParams")
            return
        if not isinstance(prm, BaselineParams):
            raise ValueError("%s penalty needs BaselineParams" % kind.name)

        if kind in (Penalty.TL1, Penalty.CL1) and not prm.a > 0:
            raise ValueError("a must be > 0")
        if kind is Penalty.LP and not 0 < prm.p < 1:
            raise ValueError("p must be in (0, 1)")
        if kind is Penalty.LP and not prm.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if kind is Penalty.LOGSUM and not prm.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if kind is Penalty.SCAD and not (prm.lambda_pen > 0 and prm.gamma > 1):
            raise ValueError("SCAD needs lambda_pen > 0 and gamma > 1")
        if kind is Penalty.MCP and not (prm.lambda_pen > 0 and prm.gamma > 0):
            raise ValueError("MCP needs lambda_pen > 0 and gamma > 0")

    @property
    def label(self) -> str:
        """Method name written to result files."""
        if self.kind is Penalty.LP:
            return "lp-irl1"
        return self.kind.value

    @property
    def sigma(self) -> float:
        return self.params.sigma if isinstance(self.params, ErfParams) else float("nan")

    @classmethod
    def erf(cls, sigma):
        return cls(Penalty.ERF, ErfParams(float(sigma)))

    @classmethod
    def l1(cls):
        return cls(Penalty.L1)

    @classmethod
    def l0(cls):
        return cls(Penalty.L0)

    @classmethod
    def logsum(cls, epsilon=0.1):
        return cls(Penalty.LOGSUM, BaselineParams(epsilon=float(epsilon)))

    @classmethod
    def lp(cls, p=0.5, epsilon=0.01):
        return cls(Penalty.LP, BaselineParams(p=float(p), epsilon=float(epsilon)))

    @classmethod
    def tl1(cls, a=1.0):
        return cls(Penalty.TL1, BaselineParams(a=float(a)))

    @classmethod
    def l1l2(cls):
        return cls(Penalty.L1MINUSL2)

    @classmethod
    def cl1(cls, a=1.0):
        return cls(Penalty.CL1, BaselineParams(a=float(a)))

    @classmethod
    def scad(cls, lambda_pen=1.0, gamma=3.0):
        return cls(Penalty.SCAD, BaselineParams(lambda_pen=float(lambda_pen), gamma=float(gamma)))

    @classmethod
    def mcp(cls, lambda_pen=1.0, gamma=2.0):
        return cls(Penalty.MCP, BaselineParams(lambda_pen=float(lambda_pen), gamma=float(gamma)))

    def describe(self) -> dict:
        """Kind and parameters as plain values, for reports and manifests."""
        out = {"method": self.label}
        out.update(dataclasses.asdict(self.params))
        return out


def penalty_eval(x, spec: RegularizerSpec) -> float:
    """Value of the penalty named by spec, summed over the coordinates of x.

    LOGSUM and LP return the smoothed surrogates sum log(|x|+eps) and
    sum (|x|+eps)^p, the objectives their IRL1 loops decrease.
    """
    x = np.asarray(x, dtype=float)
    kind = spec.kind
    prm = spec.params

    if kind is Penalty.ERF:
        return erf.erf_objective(x, prm.sigma)
    if kind is Penalty.L1:
        return l1.l1_value(x)
    if kind is Penalty.L0:
        return l0.l0_value(x)
    if kind is Penalty.LOGSUM:
        return logsum.logsum_value(x, prm.epsilon)
    if kind is Penalty.LP:
        return lp.lp_value(x, prm.p, prm.epsilon)
    if kind is Penalty.TL1:
        return tl1.tl1_value(x, prm.a)
    if kind is Penalty.L1MINUSL2:
        return l1l2.l1l2_value(x)
    if kind is Penalty.CL1:
        return cl1.cl1_value(x, prm.a)
    if kind is Penalty.SCAD:
        return scad.scad_value(x, prm.lambda_pen, prm.gamma)
    if kind is Penalty.MCP:
        return mcp.mcp_value(x, prm.lambda_pen, prm.gamma)

    raise common.UnknownPenalty("No evaluator for %s" % kind)


def irl1_weights(x, spec: RegularizerSpec) -> np.ndarray:
    """Weights w_j = Phi'(|x_j|) of the IRL1 linearization at x."""
    x = np.asarray(x, dtype=float)
    kind = spec.kind
    prm = spec.params

    if kind is Penalty.ERF:
        return erf.erf_weight(x, prm.sigma)
    if kind is Penalty.L1:
        return np.ones_like(x)
    if kind is Penalty.LOGSUM:
        return logsum.logsum_weight(x, prm.epsilon)
    if kind is Penalty.LP:
        return lp.lp_weight(x, prm.p, prm.epsilon)
    if kind is Penalty.TL1:
        return tl1.tl1_weight(x, prm.a)

    raise common.UnknownPenalty("%s has no IRL1 weight rule" % kind.name)


def prox_vec(v, mu, spec: RegularizerSpec, newton_tol=1e-12, newton_max=100) -> np.ndarray:
    """Proximal map of mu * penalty, entrywise, for L0, L1, TL1 and ERF."""
    v = common.as_signal(v)
    kind = spec.kind

    if kind is Penalty.ERF:
        return erf.erf_prox_vec(v, mu, spec.params.sigma, newton_tol, newton_max)
    if kind is Penalty.L1:
        return l1.soft_shrink(v, mu)
    if kind is Penalty.L0:
        return l0.hard_threshold(v, mu)
    if kind is Penalty.TL1:
        return tl1.tl1_prox_vec(v, mu, spec.params.a)

    raise common.UnknownPenalty("No proximal map for %s" % kind.name)
