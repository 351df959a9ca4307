"""
Sampling test of the generalized null space property (gNSP)

A satisfies the gNSP of order s for J_sigma when J_sigma(v_S) < J_sigma(v_Sc)
for every nonzero kernel vector v and every support |S| <= s. Confirming
the property is NP-hard, so only refutation is attempted: a violating
(v, S) makes the verdict Falsified, otherwise it is Undetermined.

For a fixed v, J(v_S) - J(v_Sc) = 2 J(v_S) - J(v) is largest when S holds
the s entries of largest magnitude, so only that support is checked.

"""

import dataclasses
from typing import Optional

import numpy as np
from scipy import linalg

from pyErfSparse import common
from pyErfSparse.penalty.erf import erf_objective

MAX_N = 24
MAX_S = 4


@dataclasses.dataclass
class GnspVerdict:
    falsified: bool
    witness: Optional[np.ndarray] = None
    support: Optional[np.ndarray] = None
    checked: int = 0
    note: str = ""

    @property
    def status(self) -> str:
        return "falsified" if self.falsified else "undetermined"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "support": None if self.support is None else [int(i) for i in self.support],
            "checked": int(self.checked),
            "note": self.note,
        }


def gnsp_gap(v, support, sigma) -> float:
    """J_sigma(v_Sc) - J_sigma(v_S); the property needs this > 0."""
    v = common.as_signal(v)
    mask = np.zeros(v.shape[0], dtype=bool)
    mask[np.asarray(support, dtype=int)] = True
    return erf_objective(v[~mask], sigma) - erf_objective(v[mask], sigma)


def gnsp_falsifier(A, sigma, s, samples, rng) -> GnspVerdict:
    """Search the kernel of A for a gNSP violation.

    Candidates are the orthonormal kernel basis vectors and ``samples``
    random unit kernel vectors.

    Args:
        A (ndarray): m x n matrix with n <= 24
        sigma (float): ERF scale
        s (int): support size, 1 <= s <= 4
        samples (int): number of random kernel vectors
        rng (Generator): random stream

    Returns:
        GnspVerdict: Falsified with a witness, or Undetermined

    """
    A = common.as_matrix(A)
    n = A.shape[1]
    if n > MAX_N:
        raise ValueError("gNSP search is limited to n <= %d" % MAX_N)
    if not 1 <= s <= MAX_S:
        raise ValueError("gNSP search needs 1 <= s <= %d" % MAX_S)
    if samples < 0:
        raise ValueError("samples must be >= 0")

    K = linalg.null_space(A)
    if K.shape[1] == 0:
        return GnspVerdict(falsified=False, note="trivial kernel: the property holds vacuously")

    cand = [K[:, i] for i in range(K.shape[1])]
    for _ in range(samples):
        g = K @ rng.standard_normal(K.shape[1])
        nrm = np.linalg.norm(g)
        if nrm > 0:
            cand.append(g / nrm)

    k = min(s, n)
    for count, v in enumerate(cand, start=1):
        top = np.sort(np.argsort(-np.abs(v), kind="stable")[:k])
        if gnsp_gap(v, top, sigma) <= 0:
            return GnspVerdict(falsified=True, witness=v, support=top, checked=count)

    return GnspVerdict(falsified=False, checked=len(cand), note="no violation found")
