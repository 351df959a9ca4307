"""Regularizers module.

Collects the penalty operations under one namespace:

- pyErfSparse.penalty.erf: ``erf_phi()``, ``erf_objective()``, ``erf_weight()``,
  ``erf_bounds()``, ``erf_prox()``, ``erf_prox_vec()``
- pyErfSparse.penalty.l1: ``soft_shrink()``
- pyErfSparse.penalty.l0: ``hard_threshold()``
- pyErfSparse.penalty.tl1: ``tl1_phi()``, ``tl1_weight()``, ``tl1_prox()``, ``tl1_prox_vec()``
- pyErfSparse.penalty.logsum: ``logsum_weight()``
- pyErfSparse.penalty.lp: ``lp_weight()``
- pyErfSparse.penalty: ``penalty_eval()``, ``irl1_weights()``, ``prox_vec()``

"""

from pyErfSparse.penalty import (
    BaselineParams,
    ErfParams,
    Penalty,
    RegularizerSpec,
    irl1_weights,
    penalty_eval,
    prox_vec,
)
from pyErfSparse.penalty.erf import (
    erf_bounds,
    erf_objective,
    erf_phi,
    erf_prox,
    erf_prox_vec,
    erf_weight,
)
from pyErfSparse.penalty.l0 import hard_threshold
from pyErfSparse.penalty.l1 import soft_shrink
from pyErfSparse.penalty.logsum import logsum_weight
from pyErfSparse.penalty.lp import lp_weight
from pyErfSparse.penalty.tl1 import tl1_phi, tl1_prox, tl1_prox_vec, tl1_weight
