"""
erfsparse command-line tool

    erfsparse solve A.txt b.txt --method erf --sigma 0.1 --out result/
    erfsparse gen --kind dct --F 5 --s 10 --out instance/
    erfsparse prox-table --method erf --sigma 0.5 --out prox.csv
    erfsparse bench-success --trials 10 --out results/
    erfsparse gnsp-check A.txt --sigma 1 --s 1

Exit status: 0 ok, 1 error, 2 solver did not converge.

"""

import argparse
import json
import logging
import os
import sys

import numpy as np

import pyErfSparse
from pyErfSparse import common, problems
from pyErfSparse.cli import config
from pyErfSparse.common import ErfSparseError, SolverConfig
from pyErfSparse.experiments import gnsp
from pyErfSparse.experiments import output
from pyErfSparse.experiments.harness import RUNNERS, tune_lambda_scale
from pyErfSparse.experiments.spec import ExperimentKind
from pyErfSparse.penalty import Penalty, RegularizerSpec, prox_vec
from pyErfSparse.solver import solve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2

BENCH_KINDS = {
    "bench-sigma": ExperimentKind.SIGMA_SWEEP,
    "bench-success": ExperimentKind.SUCCESS_RATE,
    "bench-superres": ExperimentKind.SUPERRES,
    "bench-noisy": ExperimentKind.NOISY,
}


def _reg_spec(args, default_epsilon) -> RegularizerSpec:
    kind = Penalty.parse(args.method)
    if kind is Penalty.ERF:
        return RegularizerSpec.erf(args.sigma)
    if kind is Penalty.LOGSUM:
        return RegularizerSpec.logsum(args.epsilon if args.epsilon is not None else default_epsilon)
    if kind is Penalty.LP:
        return RegularizerSpec.lp(args.p, args.epsilon if args.epsilon is not None else 0.01)
    if kind is Penalty.TL1:
        return RegularizerSpec.tl1(args.a)
    if kind is Penalty.L0:
        return RegularizerSpec.l0()
    if kind is Penalty.L1MINUSL2:
        return RegularizerSpec.l1l2()
    return RegularizerSpec(kind)


def _solver_config(args) -> SolverConfig:
    values = {}
    if args.config:
        values.update(
            {k[len("solver."):]: v for k, v in config.load_config_file(args.config).items() if k.startswith("solver.")}
        )
    values.update(
        {k[len("solver."):]: v for k, v in config.parse_overrides(args.set).items() if k.startswith("solver.")}
    )
    if getattr(args, "lam", None) is not None:
        values["lam"] = args.lam
    return SolverConfig.from_mapping(values)


def cmd_solve(args, run: config.RunConfig) -> int:
    A = problems.load_matrix(args.matrix)
    b = problems.load_signal(args.measurements)
    cfg = _solver_config(args)
    reg = _reg_spec(args, cfg.epsilon)

    rep = solve(A, b, reg, cfg, constrained=not args.unconstrained)

    out = run.out or "."
    os.makedirs(out, exist_ok=True)
    problems.save_matrix(os.path.join(out, "x.txt"), rep.solution)

    report = {
        "model": "unconstrained" if args.unconstrained else "constrained",
        "penalty": reg.describe(),
        "solver": cfg.to_dict(),
        "version": pyErfSparse.__version__,
    }
    report.update(rep.to_dict())
    output.write_json(os.path.join(out, "report.json"), report)

    logger.info(
        "%s: %d outer, %d inner iterations, converged=%s", reg.label, rep.outer_iters, rep.total_inner_iters, rep.converged
    )
    return EXIT_OK if rep.converged else EXIT_NOT_CONVERGED


def cmd_gen(args, run: config.RunConfig) -> int:
    rng = common.seeded_rng(run.seed)
    out = run.out or "."
    os.makedirs(out, exist_ok=True)

    if args.kind == "dct":
        A, b, x = problems.dct_instance(problems.DctSpec(args.m, args.n, args.F), args.s, rng)
    elif args.kind == "gaussian":
        A, b, x, _ = problems.noisy_gaussian_instance(args.m, args.n, args.s, args.sigma_noise, rng)
    else:
        sr = problems.SuperResSpec(args.N, args.fc)
        train = problems.spike_train(sr, args.ms, rng)
        A = problems.partial_fourier_real(sr)
        x = train.signal()
        b = A @ x

    problems.save_matrix(os.path.join(out, "A.txt"), A)
    problems.save_matrix(os.path.join(out, "b.txt"), b)
    problems.save_matrix(os.path.join(out, "x.txt"), x)
    problems.save_matrix(os.path.join(out, "support.txt"), common.support_of(x).astype(float))

    output.write_json(
        os.path.join(out, "manifest.json"),
        {"version": pyErfSparse.__version__, "command": "gen", "kind": args.kind, "seed": run.seed, "args": _plain(args)},
    )
    logger.info("wrote %dx%d %s instance with %d nonzeros to %s", A.shape[0], A.shape[1], args.kind, np.count_nonzero(x), out)
    return EXIT_OK


def cmd_prox_table(args, run: config.RunConfig) -> int:
    reg = _reg_spec(args, 0.1)

    v = np.linspace(args.vmin, args.vmax, args.points)
    x = prox_vec(v, args.mu, reg)

    path = run.out or "prox_table.csv"
    if os.path.isdir(path):
        path = os.path.join(path, "prox_table.csv")
    output.write_csv(path, ("v", "prox"), (("%.10g" % a, "%.10g" % p) for a, p in zip(v, x)))
    return EXIT_OK


def _bench_flags(args, kind):
    flags = {
        "trials": args.trials,
        "methods": args.methods,
        "seed": args.seed,
    }
    if kind in (ExperimentKind.SIGMA_SWEEP, ExperimentKind.SUCCESS_RATE):
        flags.update(F=args.F, sparsity=args.sparsity, m=args.m)
        if kind is ExperimentKind.SIGMA_SWEEP:
            flags["sigma"] = args.sigma
    elif kind is ExperimentKind.SUPERRES:
        flags.update(fc=args.fc, ms=args.ms)
    else:
        flags.update(m_list=args.m)
    return {k: str(v) if v is not None else None for k, v in flags.items()}


def cmd_bench(args, run: config.RunConfig) -> int:
    kind = BENCH_KINDS[args.command]
    spec = config.build_spec(kind, args.config, run.overrides, _bench_flags(args, kind))
    out = run.out or "results"
    os.makedirs(out, exist_ok=True)
    files = []
    extra = {}

    if getattr(args, "tune_lambda", False):
        best, scores = tune_lambda_scale(spec, jobs=run.jobs, progress=run.progress)
        logger.info("lambda scale %g selected (freeze it with lambda_scale=%g)", best, best)
        spec = spec.updated({"lambda_scale": best})
        extra["lambda_tuning"] = [{"scale": c, "mse": m} for c, m in scores]

    result = RUNNERS[kind](spec, jobs=run.jobs, progress=run.progress)

    main_name = kind.value + ".csv"
    output.write_rows(os.path.join(out, main_name), result.rows)
    files.append(main_name)

    if kind is ExperimentKind.NOISY:
        output.write_rows(os.path.join(out, "noisy_table.csv"), result.table_rows)
        files.append("noisy_table.csv")

    output.write_csv(os.path.join(out, "trials.csv"), output.SCHEMAS["trials.csv"], (r.row() for r in result.records))
    files.append("trials.csv")

    man = output.manifest(pyErfSparse.__version__, spec, files, skipped=result.skipped, **extra)
    output.write_json(os.path.join(out, "manifest.json"), man)
    logger.info("wrote %s to %s", ", ".join(files), out)
    return EXIT_OK


def cmd_gnsp_check(args, run: config.RunConfig) -> int:
    A = problems.load_matrix(args.matrix)
    verdict = gnsp.gnsp_falsifier(A, args.sigma, args.s, args.samples, common.seeded_rng(run.seed))
    text = json.dumps(verdict.to_dict(), indent=2, sort_keys=True)
    if run.out:
        output.write_json(run.out, verdict.to_dict())
    else:
        print(text)
    return EXIT_OK


def _plain(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _add_common(p):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a setting")
    p.add_argument("--seed", type=int, help="random seed (default: $%s or 0)" % config.SEED_ENV)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for trials")
    p.add_argument("--out", help="output file or directory")
    p.add_argument("--no-progress", action="store_true", help="hide progress bars")
    g = p.add_mutually_exclusive_group()
    g.add_argument("-v", "--verbose", action="store_true")
    g.add_argument("-q", "--quiet", action="store_true")


def _add_penalty(p, methods, default):
    p.add_argument("--method", choices=methods, default=default)
    p.add_argument("--sigma", type=float, default=0.5, help="ERF scale")
    p.add_argument("--a", type=float, default=1.0, help="TL1 parameter")
    p.add_argument("--p", type=float, default=0.5, help="Lp exponent")
    p.add_argument("--epsilon", type=float, help="log-sum / Lp smoothing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erfsparse", description="Sparse recovery with ERF regularization")
    parser.add_argument("--version", action="version", version="%(prog)s " + pyErfSparse.__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="recover a sparse signal from A and b")
    p.add_argument("matrix")
    p.add_argument("measurements")
    _add_penalty(p, ["erf", "l1", "logsum", "lp-irl1", "lp", "tl1", "l1-l2"], "erf")
    model = p.add_mutually_exclusive_group()
    model.add_argument("--constrained", dest="unconstrained", action="store_false")
    model.add_argument("--unconstrained", dest="unconstrained", action="store_true")
    p.add_argument("--lam", type=float, help="data-fit weight of the unconstrained model")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a test instance")
    p.add_argument("--kind", choices=["dct", "gaussian", "superres"], default="dct")
    p.add_argument("--m", type=int, default=64)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--F", type=float, default=1.0)
    p.add_argument("--s", type=int, default=5)
    p.add_argument("--sigma-noise", type=float, default=0.0)
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--fc", type=int, default=31)
    p.add_argument("--ms", type=float, default=20.0)
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("prox-table", help="tabulate a proximal map")
    _add_penalty(p, ["l0", "l1", "tl1", "erf"], "erf")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--vmin", type=float, default=-3.0)
    p.add_argument("--vmax", type=float, default=3.0)
    p.add_argument("--points", type=int, default=601)
    _add_common(p)
    p.set_defaults(func=cmd_prox_table)

    for name, kind in BENCH_KINDS.items():
        p = sub.add_parser(name, help="run the %s benchmark" % kind.value)
        p.add_argument("--trials", type=int)
        p.add_argument("--methods", help="comma-separated method names")
        if kind in (ExperimentKind.SIGMA_SWEEP, ExperimentKind.SUCCESS_RATE):
            p.add_argument("--F", help="comma-separated coherence levels")
            p.add_argument("--sparsity", help="comma-separated sparsity levels")
            p.add_argument("--m", type=int, help="rows of the DCT matrix")
            if kind is ExperimentKind.SIGMA_SWEEP:
                p.add_argument("--sigma", help="comma-separated ERF scales")
        elif kind is ExperimentKind.SUPERRES:
            p.add_argument("--fc", help="comma-separated cutoff frequencies")
            p.add_argument("--ms", type=float, help="minimum separation")
        else:
            p.add_argument("--m", help="comma-separated measurement counts")
            p.add_argument("--tune-lambda", action="store_true", help="pick the lambda scale on a held-out seed first")
        _add_common(p)
        p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gnsp-check", help="search for a gNSP violation")
    p.add_argument("matrix")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_gnsp_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config.setup_logging(args.verbose, args.quiet)

    try:
        run = config.RunConfig(
            command=args.command,
            inputs=[getattr(args, k) for k in ("matrix", "measurements") if getattr(args, k, None)],
            out=args.out,
            seed=config.resolve_seed(args.seed),
            overrides=config.parse_overrides(args.set),
            jobs=max(1, args.jobs),
            progress=not args.no_progress and sys.stderr.isatty(),
        )
        return args.func(args, run)
    except (ErfSparseError, ValueError, OSError) as e:
        print("erfsparse: error: %s" % e, file=sys.stderr)
        return EXIT_ERROR
