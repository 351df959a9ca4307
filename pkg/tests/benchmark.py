import sys
import time

import numpy as np
from tqdm import tqdm

from pyErfSparse import common, problems, solver
from pyErfSparse.common import SolverConfig

size = int(sys.argv[1]) if len(sys.argv) > 1 else 100000
rounds = 20

rng = common.seeded_rng(0)
v = 3 * rng.standard_normal(size)
mu = np.full(size, 1.0)


def native():

    from pyErfSparse import py_prox as kernels

    for _ in tqdm(range(rounds)):
        x, status = kernels.erf_prox_array(v, mu, 0.5, 1e-12, 100)
        x, status = kernels.tl1_prox_array(v, mu, 1.0)


def compiled():

    from pyErfSparse import nb_prox as kernels

    # first call compiles
    kernels.erf_prox_array(v[:2], mu[:2], 0.5, 1e-12, 100)
    kernels.tl1_prox_array(v[:2], mu[:2], 1.0)

    for _ in tqdm(range(rounds)):
        x, status = kernels.erf_prox_array(v, mu, 0.5, 1e-12, 100)
        x, status = kernels.tl1_prox_array(v, mu, 1.0)


def recovery():

    A, b, x = problems.dct_instance(problems.DctSpec(64, 1024, 5.0), 10, rng)
    for sigma in tqdm([0.1, 0.5, 1.0]):
        rep = solver.irl1_erf_constrained(A, b, sigma, SolverConfig())
        print(sigma, rep.outer_iters, rep.total_inner_iters, "%.3e" % (np.linalg.norm(rep.solution - x) / np.linalg.norm(x)))


if __name__ == "__main__":
    t1 = time.time()
    native()
    dt1 = time.time() - t1

    try:
        t2 = time.time()
        compiled()
        dt2 = time.time() - t2
    except ImportError:
        dt2 = float("nan")

    print("prox of %d entries x %d: python %.2fs, numba %.2fs" % (size, rounds, dt1, dt2))

    t3 = time.time()
    recovery()
    print("IRL1-ERF on a 64x1024 DCT instance: %.2fs" % (time.time() - t3))
