import numpy as np
import pytest

from ppt_forge.ipm import OPTIMAL, ConeProblem, solve_cone


def test_lp_plus_psd_known_optimum():
    # min x0 + x1 s.t. x >= 0 and [[x0, 1], [1, x1]] PSD  ->  x0 = x1 = 1
    A = np.zeros((2, 2, 2))
    A[0, 0, 0] = 1
    A[1, 1, 1] = 1
    A0 = np.array([[0.0, -1.0], [-1.0, 0.0]])
    prob = ConeProblem(c=np.ones(2), G=np.eye(2), h=np.zeros(2), A=A, A0=A0)
    res = solve_cone(prob, x0=[3.0, 3.0], z0=[1.0, 1.0], Z0=np.eye(2))
    assert res.status == OPTIMAL
    np.testing.assert_allclose(res.x, [1, 1], atol=1e-6)
    assert res.primal_value == pytest.approx(2.0, abs=1e-8)
    assert res.gap >= -1e-9 and res.gap <= 1e-7


def test_rejects_infeasible_start():
    A = np.zeros((1, 1, 1))
    A[0, 0, 0] = 1
    prob = ConeProblem(c=np.ones(1), G=np.eye(1), h=np.zeros(1), A=A, A0=np.zeros((1, 1)))
    with pytest.raises(ValueError):
        solve_cone(prob, x0=[-1.0], z0=[1.0], Z0=np.eye(1))


def test_history_weak_duality():
    A = np.zeros((2, 2, 2))
    A[0, 0, 0] = A[1, 1, 1] = 1
    A0 = np.array([[0.0, -0.5], [-0.5, 0.0]])
    prob = ConeProblem(c=np.array([1.0, 2.0]), G=np.eye(2), h=np.array([0.1, 0.1]), A=A, A0=A0)
    res = solve_cone(prob, x0=[2.0, 2.0], z0=[0.5, 0.5], Z0=np.eye(2) / 2)
    # the dual start is exactly feasible here, so every recorded pair brackets the optimum
    for p, d, _, rd in res.history:
        if rd <= 1e-9:
            assert d <= p + 1e-9
    # x0 x1 >= 1/4 with x0 = 2 x1 at the optimum
    assert res.primal_value == pytest.approx(np.sqrt(2), abs=1e-7)
