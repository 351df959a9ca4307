"""
Benchmark harnesses

- run_sigma_sweep: ERF success rate over sigma on over-sampled DCT matrices
- run_success_rate: method comparison on over-sampled DCT matrices
- run_superres: super-resolution of spike trains from low-pass measurements
- run_noisy: squared error on noisy Gaussian instances, with the oracle

Each trial of a grid point draws one instance from its own random stream,
derived from (seed, grid point, trial), and runs every method on it. Trials
may run in worker processes; records come back in task order, so results
do not depend on the number of workers.

"""

import collections
import dataclasses
import logging
import math
import multiprocessing
import time
from typing import Dict, List, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from pyErfSparse import common, problems
from pyErfSparse.common import ErfSparseError
from pyErfSparse.experiments import metrics
from pyErfSparse.experiments.spec import ExperimentKind, ExperimentSpec, TrialRecord
from pyErfSparse.penalty import RegularizerSpec
from pyErfSparse.solver import solve

logger = logging.getLogger(__name__)

HELD_OUT_OFFSET = 1000003


@dataclasses.dataclass
class HarnessResult:
    kind: ExperimentKind
    rows: List[dict]
    records: List[TrialRecord]
    table_rows: List[dict] = dataclasses.field(default_factory=list)
    skipped: List[str] = dataclasses.field(default_factory=list)


def _dct_key(F, s):
    return "F=%g;s=%d" % (F, s)


def _solve_record(A, b, x_true, reg: RegularizerSpec, cfg, constrained, tol, trial, seed, grid_key):
    rec = TrialRecord(trial=trial, seed=seed, method=reg.label, grid_key=grid_key)
    t0 = time.perf_counter()
    try:
        rep = solve(A, b, reg, cfg, constrained=constrained)
        rec.rel_err = metrics.relative_error(rep.solution, x_true)
        rec.success = rec.rel_err < tol
        rec.mse = metrics.squared_error(rep.solution, x_true)
    except ErfSparseError as e:
        logger.warning("trial %d of %s failed for %s: %s", trial, grid_key, reg.label, e)
    rec.wall_s = time.perf_counter() - t0
    rec.realized_sparsity = int(np.count_nonzero(x_true))
    return rec


def _sigma_sweep_trial(spec: ExperimentSpec, point, trial):
    F, s = point
    key = _dct_key(F, s)
    rng = common.trial_rng(spec.seed, trial, key)
    seed = common.trial_seed(spec.seed, trial, key)
    A, b, x = problems.dct_instance(problems.DctSpec(spec.m, spec.n, F), s, rng)

    out = []
    for sigma in spec.sigma:
        grid_key = "F=%g;sigma=%g;s=%d" % (F, sigma, s)
        reg = RegularizerSpec.erf(sigma)
        out.append(_solve_record(A, b, x, reg, spec.solver, True, spec.success_tol, trial, seed, grid_key))
    return out


def _success_rate_trial(spec: ExperimentSpec, point, trial):
    F, s = point
    key = _dct_key(F, s)
    rng = common.trial_rng(spec.seed, trial, key)
    seed = common.trial_seed(spec.seed, trial, key)
    A, b, x = problems.dct_instance(problems.DctSpec(spec.m, spec.n, F), s, rng)

    sigma = spec.erf_sigma_for(F)
    return [
        _solve_record(A, b, x, spec.method_spec(name, sigma), spec.solver, True, spec.success_tol, trial, seed, key)
        for name in spec.methods
    ]


def _superres_trial(spec: ExperimentSpec, point, trial):
    (fc,) = point
    key = "fc=%d" % fc
    rng = common.trial_rng(spec.seed, trial, key)
    seed = common.trial_seed(spec.seed, trial, key)
    sr = problems.SuperResSpec(spec.N, fc)
    train = problems.spike_train(sr, spec.ms, rng)
    A = problems.partial_fourier_real(sr)
    x = train.signal()
    b = A @ x

    out = []
    for name in spec.methods:
        reg = spec.method_spec(name, spec.erf_sigma_superres)
        rec = _solve_record(A, b, x, reg, spec.solver, True, spec.success_tol, trial, seed, key)
        rec.realized_sparsity = train.sparsity
        out.append(rec)
    return out


def _noisy_trial(spec: ExperimentSpec, point, trial):
    (m,) = point
    key = "m=%d" % m
    rng = common.trial_rng(spec.seed, trial, key)
    seed = common.trial_seed(spec.seed, trial, key)
    A, b, x, support = problems.noisy_gaussian_instance(m, spec.n_noisy, spec.s_noisy, spec.sigma_noise, rng)
    cfg = spec.solver.replace(lam=spec.noisy_lambda())

    out = [
        _solve_record(A, b, x, spec.method_spec(name, spec.erf_sigma_noisy), cfg, False, spec.success_tol, trial, seed, key)
        for name in spec.methods
    ]

    rec = TrialRecord(trial=trial, seed=seed, method="oracle", grid_key=key, realized_sparsity=spec.s_noisy)
    try:
        rec.mse = metrics.oracle_mse(A, support, spec.sigma_noise)
    except ErfSparseError as e:
        logger.warning("oracle failed on trial %d of %s: %s", trial, key, e)
    out.append(rec)
    return out


TRIAL_RUNNERS = {
    ExperimentKind.SIGMA_SWEEP: _sigma_sweep_trial,
    ExperimentKind.SUCCESS_RATE: _success_rate_trial,
    ExperimentKind.SUPERRES: _superres_trial,
    ExperimentKind.NOISY: _noisy_trial,
}


def _run_task(task) -> List[TrialRecord]:
    spec, point, trial = task
    return TRIAL_RUNNERS[spec.kind](spec, point, trial)


def execute(spec: ExperimentSpec, points: Sequence[Tuple], jobs=1, progress=False) -> List[TrialRecord]:
    """Run all trials of all grid points and return records in task order."""
    tasks = [(spec, p, t) for p in points for t in range(spec.trials)]
    bar = dict(total=len(tasks), disable=not progress, desc=spec.kind.value, unit="trial")

    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(jobs) as pool:
            results = list(tqdm(pool.imap(_run_task, tasks), **bar))
    else:
        results = [_run_task(t) for t in tqdm(tasks, **bar)]

    return [rec for batch in results for rec in batch]


def _group(records) -> Dict[Tuple[str, str], List[TrialRecord]]:
    groups = collections.OrderedDict()
    for rec in records:
        groups.setdefault((rec.grid_key, rec.method), []).append(rec)
    return groups


def _count(recs):
    successes = sum(1 for r in recs if r.success)
    trials = len(recs)
    return trials, successes, successes / trials if trials else float("nan")


def _dct_points(spec: ExperimentSpec):
    points, skipped = [], []
    for F in spec.F:
        for s in spec.sparsity:
            if s * max(1, math.ceil(2 * F)) > spec.n:
                msg = "F=%g, s=%d: cannot place %d indices %g apart in %d" % (F, s, s, 2 * F, spec.n)
                logger.warning("skipping %s", msg)
                skipped.append(msg)
                continue
            points.append((F, s))
    return points, skipped


def _check_kind(spec, kind):
    if spec.kind is not kind:
        raise ValueError("Expected a %s spec, got %s" % (kind.value, spec.kind.value))


def run_sigma_sweep(spec: ExperimentSpec, jobs=1, progress=False) -> HarnessResult:
    """ERF success rate per (F, sigma, sparsity), constrained model."""
    _check_kind(spec, ExperimentKind.SIGMA_SWEEP)
    points, skipped = _dct_points(spec)
    records = execute(spec, points, jobs, progress)
    groups = _group(records)

    rows = []
    for F in spec.F:
        for sigma in spec.sigma:
            for s in spec.sparsity:
                recs = groups.get(("F=%g;sigma=%g;s=%d" % (F, sigma, s), "erf"))
                if recs is None:
                    continue
                trials, successes, rate = _count(recs)
                rows.append(dict(F=F, sigma=sigma, sparsity=s, trials=trials, successes=successes, rate=rate))
                logger.info("F=%g sigma=%g s=%d: %d/%d", F, sigma, s, successes, trials)

    return HarnessResult(spec.kind, rows, records, skipped=skipped)


def run_success_rate(spec: ExperimentSpec, jobs=1, progress=False) -> HarnessResult:
    """Success rate per (F, sparsity, method), constrained models."""
    _check_kind(spec, ExperimentKind.SUCCESS_RATE)
    points, skipped = _dct_points(spec)
    records = execute(spec, points, jobs, progress)
    groups = _group(records)

    rows = []
    for F, s in points:
        sigma = spec.erf_sigma_for(F)
        for name in spec.methods:
            label = spec.method_spec(name, sigma).label
            trials, successes, rate = _count(groups[(_dct_key(F, s), label)])
            rows.append(
                dict(F=F, sigma=sigma, sparsity=s, method=label, trials=trials, successes=successes, rate=rate)
            )
            logger.info("F=%g s=%d %s: %d/%d", F, s, label, successes, trials)

    return HarnessResult(spec.kind, rows, records, skipped=skipped)


def run_superres(spec: ExperimentSpec, jobs=1, progress=False) -> HarnessResult:
    """Success rate per (fc, method) on spike trains with separation MS."""
    _check_kind(spec, ExperimentKind.SUPERRES)
    points, skipped = [], []
    for fc in spec.fc:
        if 2 * max(1, math.ceil(spec.ms)) > spec.N or not 2 * fc + 1 < spec.N:
            msg = "fc=%d: infeasible with N=%d, MS=%g" % (fc, spec.N, spec.ms)
            logger.warning("skipping %s", msg)
            skipped.append(msg)
            continue
        points.append((fc,))

    records = execute(spec, points, jobs, progress)
    groups = _group(records)

    rows = []
    for (fc,) in points:
        msf = spec.ms * fc / spec.N
        for name in spec.methods:
            label = spec.method_spec(name, spec.erf_sigma_superres).label
            trials, successes, rate = _count(groups[("fc=%d" % fc, label)])
            rows.append(dict(fc=fc, msf=msf, method=label, trials=trials, successes=successes, rate=rate))
            logger.info("fc=%d (MSF %.2f) %s: %d/%d", fc, msf, label, successes, trials)

    return HarnessResult(spec.kind, rows, records, skipped=skipped)


def _mean_std(values):
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return float("nan"), float("nan")
    std = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    return float(np.mean(v)), std


def run_noisy(spec: ExperimentSpec, jobs=1, progress=False) -> HarnessResult:
    """Mean and spread of squared error and time per (m, method), plus the oracle."""
    _check_kind(spec, ExperimentKind.NOISY)
    points = [(m,) for m in spec.m_list]
    records = execute(spec, points, jobs, progress)
    groups = _group(records)

    rows = []
    for (m,) in points:
        labels = [spec.method_spec(name, spec.erf_sigma_noisy).label for name in spec.methods] + ["oracle"]
        for label in labels:
            recs = groups[("m=%d" % m, label)]
            mse_mean, mse_std = _mean_std([r.mse for r in recs])
            t_mean, t_std = _mean_std([r.wall_s for r in recs])
            rows.append(
                dict(m=m, method=label, mse_mean=mse_mean, mse_std=mse_std, time_mean_s=t_mean, time_std_s=t_std)
            )
            logger.info("m=%d %s: squared error %.4f (%.4f)", m, label, mse_mean, mse_std)

    table = [r for r in rows if r["m"] in spec.table_m]
    return HarnessResult(spec.kind, rows, records, table_rows=table)


def tune_lambda_scale(spec: ExperimentSpec, candidates=(0.25, 0.5, 1.0, 2.0), trials=None, jobs=1, progress=False):
    """Pick the scale c of lam = c sigma_noise sqrt(2 log n) for the ERF model.

    Runs on a held-out seed, at the first m of the grid, and returns the
    candidate with the smallest mean squared error.

    Returns:
        (float, list): best scale and (scale, mean squared error) pairs

    """
    _check_kind(spec, ExperimentKind.NOISY)
    if not candidates:
        raise ValueError("No lambda scale candidates")
    trials = trials or min(spec.trials, 10)

    scores = []
    for c in candidates:
        held_out = dataclasses.replace(
            spec,
            seed=spec.seed + HELD_OUT_OFFSET,
            trials=trials,
            m_list=[spec.m_list[0]],
            methods=["erf"],
            lambda_scale=float(c),
        )
        recs = [r for r in execute(held_out, [(held_out.m_list[0],)], jobs, progress) if r.method == "erf"]
        mse, _ = _mean_std([r.mse for r in recs])
        logger.info("lambda scale %g: squared error %.4f", c, mse)
        scores.append((float(c), mse))

    finite = [sc for sc in scores if np.isfinite(sc[1])]
    if not finite:
        raise common.NoConvergence("Every lambda scale candidate failed")
    best = min(finite, key=lambda sc: sc[1])[0]
    return best, scores


RUNNERS = {
    ExperimentKind.SIGMA_SWEEP: run_sigma_sweep,
    ExperimentKind.SUCCESS_RATE: run_success_rate,
    ExperimentKind.SUPERRES: run_superres,
    ExperimentKind.NOISY: run_noisy,
}
