import json
import os

import numpy as np
import pytest

from pyErfSparse import problems
from pyErfSparse.cli import config, main
from pyErfSparse.experiments import output


def test_gen_dct(tmp_path):
    out = str(tmp_path / "inst")
    code = main(["gen", "--kind", "dct", "--m", "16", "--n", "64", "--F", "1", "--s", "3", "--seed", "1", "--out", out])
    assert code == 0

    A = problems.load_matrix(os.path.join(out, "A.txt"))
    b = problems.load_signal(os.path.join(out, "b.txt"))
    x = problems.load_signal(os.path.join(out, "x.txt"))
    assert A.shape == (16, 64)
    assert np.allclose(A @ x, b)
    assert np.count_nonzero(x) == 3

    with open(os.path.join(out, "manifest.json")) as f:
        man = json.load(f)
    assert man["seed"] == 1
    assert man["kind"] == "dct"


def test_gen_same_seed(tmp_path):
    for name in ("a", "b"):
        main(["gen", "--kind", "superres", "--N", "64", "--fc", "3", "--ms", "8", "--seed", "4", "--out", str(tmp_path / name)])
    xa = problems.load_signal(str(tmp_path / "a" / "x.txt"))
    xb = problems.load_signal(str(tmp_path / "b" / "x.txt"))
    assert np.array_equal(xa, xb)


def test_solve(tmp_path):
    problems.save_matrix(str(tmp_path / "A.txt"), np.eye(3))
    problems.save_matrix(str(tmp_path / "b.txt"), np.array([1.0, -2.0, 0.5]))
    out = str(tmp_path / "res")

    code = main(["solve", str(tmp_path / "A.txt"), str(tmp_path / "b.txt"), "--method", "l1", "--out", out])
    assert code == 0
    assert np.allclose(problems.load_signal(os.path.join(out, "x.txt")), [1.0, -2.0, 0.5])

    with open(os.path.join(out, "report.json")) as f:
        report = json.load(f)
    assert report["model"] == "constrained"
    assert report["converged"] is True
    assert "solution" not in report


def _gen_dct(path, s):
    code = main(["gen", "--kind", "dct", "--m", "16", "--n", "64", "--F", "1", "--s", str(s), "--seed", "1", "--out", path])
    assert code == 0
    return os.path.join(path, "A.txt"), os.path.join(path, "b.txt")


def test_solve_dct_converges(tmp_path):
    A, b = _gen_dct(str(tmp_path / "inst"), 2)
    out = str(tmp_path / "res")

    code = main(["solve", A, b, "--method", "l1", "--set", "solver.max_inner=100000", "--out", out])
    assert code == 0
    with open(os.path.join(out, "report.json")) as f:
        assert json.load(f)["converged"] is True


def test_solve_not_converged(tmp_path):
    A, b = _gen_dct(str(tmp_path / "inst"), 3)
    out = str(tmp_path / "res")

    code = main(["solve", A, b, "--method", "l1", "--set", "solver.max_inner=1", "--out", out])
    assert code == 2
    with open(os.path.join(out, "report.json")) as f:
        report = json.load(f)
    assert report["converged"] is False
    assert report["total_inner_iters"] == 1
    assert os.path.exists(os.path.join(out, "x.txt"))


def test_solve_errors(tmp_path, capsys):
    problems.save_matrix(str(tmp_path / "A.txt"), np.eye(3))
    problems.save_matrix(str(tmp_path / "b.txt"), np.ones(2))

    assert main(["solve", str(tmp_path / "A.txt"), str(tmp_path / "b.txt"), "--out", str(tmp_path)]) == 1
    assert main(["solve", str(tmp_path / "missing.txt"), str(tmp_path / "b.txt")]) == 1
    assert main(["gnsp-check", str(tmp_path / "A.txt"), "--set", "oops"]) == 1
    assert "erfsparse: error:" in capsys.readouterr().err


def test_parser_needs_command():
    with pytest.raises(SystemExit):
        main([])


def test_prox_table(tmp_path):
    path = str(tmp_path / "prox.csv")
    code = main(
        ["prox-table", "--method", "l1", "--mu", "1", "--vmin", "-3", "--vmax", "3", "--points", "7", "--out", path]
    )
    assert code == 0

    rows = output.read_csv(path)
    assert [float(r["v"]) for r in rows] == [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]
    assert [float(r["prox"]) for r in rows] == [-2.0, -1.0, 0.0, 0.0, 0.0, 1.0, 2.0]


def test_gnsp_check(tmp_path, capsys):
    path = str(tmp_path / "A.txt")
    problems.save_matrix(path, np.array([[1.0, 1.0]]))

    assert main(["gnsp-check", path, "--s", "1", "--samples", "0"]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["status"] == "falsified"


def test_bench_success(tmp_path, monkeypatch):
    monkeypatch.setenv(config.SEED_ENV, "5")
    out = str(tmp_path / "bench")
    code = main(
        [
            "bench-success",
            "--trials", "1",
            "--F", "1",
            "--sparsity", "2",
            "--m", "16",
            "--methods", "l1",
            "--set", "n=64",
            "--set", "solver.max_inner=500",
            "--no-progress",
            "--out", out,
        ]
    )
    assert code == 0
    assert sorted(os.listdir(out)) == ["manifest.json", "success_rate.csv", "trials.csv"]

    with open(os.path.join(out, "manifest.json")) as f:
        man = json.load(f)
    assert man["seed"] == 5
    assert man["spec"]["n"] == 64
    assert man["spec"]["solver"]["max_inner"] == 500

    rows = output.read_csv(os.path.join(out, "success_rate.csv"))
    assert len(rows) == 1
    assert rows[0]["method"] == "l1"


def test_bench_noisy_tuned(tmp_path):
    out = str(tmp_path / "noisy")
    code = main(
        [
            "bench-noisy",
            "--trials", "1",
            "--m", "40",
            "--methods", "l1,erf",
            "--set", "n_noisy=64",
            "--set", "s_noisy=5",
            "--set", "table_m=40",
            "--set", "solver.max_outer=3",
            "--set", "solver.max_inner=500",
            "--tune-lambda",
            "--no-progress",
            "--seed", "2",
            "--out", out,
        ]
    )
    assert code == 0

    with open(os.path.join(out, "manifest.json")) as f:
        man = json.load(f)
    assert len(man["lambda_tuning"]) == 4
    assert man["spec"]["lambda_scale"] in [t["scale"] for t in man["lambda_tuning"]]
    assert len(output.read_csv(os.path.join(out, "noisy_table.csv"))) == 3


def test_config_precedence(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("trials = 3  # few\nsparsity = 2,6\nsolver.max_outer = 4\n")

    spec = config.build_spec("success_rate", str(path), {"trials": "7"}, {"sparsity": "10", "seed": None})
    assert spec.trials == 7
    assert spec.sparsity == [10]
    assert spec.solver.max_outer == 4


def test_overrides_and_seed(monkeypatch):
    assert config.parse_overrides(["a=1", " b = x=y "]) == {"a": "1", "b": "x=y"}
    with pytest.raises(ValueError):
        config.parse_overrides(["novalue"])

    monkeypatch.delenv(config.SEED_ENV, raising=False)
    assert config.resolve_seed(None) == 0
    assert config.resolve_seed(9) == 9
    monkeypatch.setenv(config.SEED_ENV, "x")
    with pytest.raises(ValueError):
        config.resolve_seed(None)


def _without_timing(path):
    return [{k: v for k, v in row.items() if k != "wall_s" and not k.startswith("time_")} for row in output.read_csv(path)]


@pytest.mark.parametrize(
    "argv",
    [
        ["bench-success", "--trials", "2", "--F", "1", "--sparsity", "2,4", "--m", "16", "--methods", "l1,erf",
         "--set", "n=64"],
        ["bench-noisy", "--trials", "2", "--m", "40", "--methods", "l1,erf", "--set", "n_noisy=64",
         "--set", "s_noisy=5", "--set", "table_m=40"],
    ],
)
def test_bench_reproducible(tmp_path, argv):
    runs = []
    for name in ("a", "b"):
        out = str(tmp_path / name)
        code = main(argv + ["--set", "solver.max_outer=3", "--set", "solver.max_inner=500", "--seed", "6",
                            "--no-progress", "--out", out])
        assert code == 0
        runs.append(out)

    names = sorted(f for f in os.listdir(runs[0]) if f.endswith(".csv"))
    assert names == sorted(f for f in os.listdir(runs[1]) if f.endswith(".csv"))
    assert "trials.csv" in names
    for name in names:
        assert _without_timing(os.path.join(runs[0], name)) == _without_timing(os.path.join(runs[1], name))
