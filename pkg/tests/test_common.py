import numpy as np
import pytest

from pyErfSparse import common
from pyErfSparse.common import SolverConfig, SolverReport


def test_as_matrix_checks():
    assert common.as_matrix([[1, 2], [3, 4]]).dtype == float

    with pytest.raises(common.DimensionMismatch):
        common.as_matrix([1.0, 2.0])

    with pytest.raises(ValueError):
        common.as_matrix([[1.0, np.nan]])


def test_as_signal():
    assert common.as_signal(3.0).shape == (1,)
    assert common.as_signal([1, 2, 3]).shape == (3,)

    with pytest.raises(common.DimensionMismatch):
        common.as_signal(np.ones((2, 2)))


def test_matvec_dimensions():
    A = np.arange(6.0).reshape(2, 3)
    assert np.allclose(common.matvec(A, np.ones(3)), [3.0, 12.0])
    assert np.allclose(common.matvec_t(A, np.ones(2)), [3.0, 5.0, 7.0])

    with pytest.raises(common.DimensionMismatch):
        common.matvec(A, np.ones(2))
    with pytest.raises(common.DimensionMismatch):
        common.matvec_t(A, np.ones(3))


def test_factor_spd_solve():
    rng = common.seeded_rng(1)
    G = rng.standard_normal((6, 6))
    M = G @ G.T + 6 * np.eye(6)
    r = rng.standard_normal(6)

    op = common.factor_spd(M)
    x = op.solve(r)
    assert np.allclose(M @ x, r)
    assert op.residual(x, r) < 1e-10

    with pytest.raises(common.DimensionMismatch):
        op.solve(np.ones(5))


def test_factor_spd_random():
    rng = common.seeded_rng(8)
    for _ in range(100):
        n = int(rng.integers(2, 33))
        G = rng.standard_normal((n, n))
        op = common.factor_spd(G @ G.T + n * np.eye(n))
        r = rng.standard_normal(n)
        assert op.residual(op.solve(r), r) <= 1e-10 * (1 + np.linalg.norm(r))


def test_factor_spd_rejects():
    with pytest.raises(common.NotSPD):
        common.factor_spd([[1.0, 2.0], [0.0, 1.0]])

    with pytest.raises(common.NotSPD):
        common.factor_spd([[1.0, 0.0], [0.0, -1.0]])

    with pytest.raises(common.DimensionMismatch):
        common.factor_spd(np.ones((2, 3)))


def test_trial_rng_streams():
    a = common.trial_rng(7, 3, "F=1;s=2").standard_normal(5)
    b = common.trial_rng(7, 3, "F=1;s=2").standard_normal(5)
    c = common.trial_rng(7, 4, "F=1;s=2").standard_normal(5)
    d = common.trial_rng(7, 3, "F=5;s=2").standard_normal(5)

    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)

    assert common.trial_seed(7, 3, "m=240") == common.trial_seed(7, 3, "m=240")
    assert common.grid_hash("fc=31") == common.grid_hash("fc=31")
    assert common.grid_hash("fc=31") != common.grid_hash("fc=32")


def test_seeded_rng():
    assert np.array_equal(common.seeded_rng(0).uniform(size=3), common.seeded_rng(0).uniform(size=3))


def test_solver_config_defaults():
    cfg = SolverConfig()
    assert cfg.max_outer == 20
    assert cfg.inner_rel_tol == 1e-8
    assert cfg.bp_delta() == 1.0
    assert cfg.lasso_delta() == cfg.lam
    assert cfg.replace(delta=2.0).lasso_delta() == 2.0
    assert SolverConfig(lam=0.0).lasso_delta() == 1.0


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(max_outer=0)
    with pytest.raises(ValueError):
        SolverConfig(outer_tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(inner_rel_tol=-1.0)
    with pytest.raises(ValueError):
        SolverConfig(delta=-1.0)
    with pytest.raises(ValueError):
        SolverConfig(lam=-0.1)


def test_solver_config_from_mapping():
    cfg = SolverConfig.from_mapping(
        {"max_outer": "5", "delta": "none", "monotone": "false", "lam": "0.5", "newton_tol": 1e-10}
    )
    assert cfg.max_outer == 5
    assert cfg.delta is None
    assert cfg.monotone is False
    assert cfg.lam == 0.5
    assert cfg.newton_tol == 1e-10

    base = SolverConfig(max_inner=10)
    assert SolverConfig.from_mapping({"delta": "2"}, base=base).max_inner == 10

    with pytest.raises(ValueError):
        SolverConfig.from_mapping({"nonsense": "1"})
    with pytest.raises(ValueError):
        SolverConfig.from_mapping({"monotone": "maybe"})


def test_solver_report_dict():
    rep = SolverReport(solution=np.zeros(3), objective_trace=[1.0, 0.5], outer_iters=1, dual=np.ones(3))
    d = rep.to_dict()
    assert "dual" not in d
    assert "solution" not in d
    assert d["objective_trace"] == [1.0, 0.5]
    assert d["converged"] is False


def test_support():
    assert list(common.support_of(np.array([0.0, 1e-3, 0.0, -2.0]))) == [1, 3]
    assert list(common.support_of(np.array([0.0, 1e-3, 0.0, -2.0]), tol=1e-2)) == [3]

    assert list(common.check_support([1, 4], 5)) == [1, 4]
    with pytest.raises(ValueError):
        common.check_support([4, 1], 5)
    with pytest.raises(ValueError):
        common.check_support([5], 5)
