import json
import math
import os
import subprocess

import numpy as np
import pytest

import radbound


def halving_budget():
    return radbound.NormBudget([2.0, 2.0], [1.0, 1.0], 1.0)


def test_forward_and_norms():
    net = radbound.NetworkSpec([np.array([[2.0, 0.0], [0.0, 2.0]]), np.array([[1.0, 1.0]])])
    assert radbound.forward(net, np.array([1.0, 2.0])) == 6.0
    assert net.widths == [2, 2, 1]
    assert radbound.frobenius_norm(np.diag([3.0, 4.0])) == 5.0
    assert radbound.operator_norm(np.diag([3.0, 4.0])) == pytest.approx(4.0, rel=1e-12)
    member, layers = radbound.validate_membership(net, radbound.budget_from_network(net))
    assert member and len(layers) == 2


def test_bounds_and_subsequences():
    profile = radbound.norm_profile(halving_budget())
    assert profile.R == [1.0, 0.5, 0.25]
    assert radbound.main_bound(profile, 100, 1.0) == pytest.approx(7.348469228349534, rel=1e-12)
    assert radbound.baseline_bound(profile, 100, 1.0) == pytest.approx(2 * math.sqrt(2), rel=1e-12)
    assert radbound.composite_bound(profile, [0, 1, 2], 100, 1.0) == pytest.approx(3.0)
    assert radbound.dyadic_subsequence(profile) == [0, 1, 2]
    assert radbound.optimal_subsequence(profile) == [0, 2]
    assert radbound.brute_force_subsequence(profile) == [0, 2]
    with pytest.raises(radbound.StructuralError):
        radbound.subsequence_cost(profile, [0, 1])


def test_degenerate_budget_raises():
    net = radbound.NetworkSpec([np.zeros((2, 2)), np.ones((1, 2))])
    with pytest.raises(radbound.DegenerateBudgetError):
        radbound.budget_from_network(net)


def test_estimator_linear_class():
    inputs = radbound.InputSet(np.eye(2), 1.0)
    cfg = radbound.EstimatorConfig()
    cfg.restarts = 3
    cfg.steps = 150
    out = radbound.empirical_rademacher(inputs, radbound.NormBudget([1.0], [1.0], 1.0), cfg)
    assert out["estimate"] == pytest.approx(math.sqrt(2) / 2, rel=0.02)
    assert out["stderr"] is None
    value, witness = radbound.estimate_sup(inputs, [1, 1], radbound.NormBudget([1.0], [1.0], 1.0), cfg)
    assert value == radbound.correlation(witness, inputs, [1, 1])

    many = radbound.InputSet(np.full((17, 1), 0.5), 1.0)
    with pytest.raises(radbound.ModeError):
        radbound.empirical_rademacher(many, radbound.NormBudget([1.0], [1.0], 1.0), cfg)

    cfg.mode = "mc"
    cfg.mc_samples = 4
    mc = radbound.empirical_rademacher(many, radbound.NormBudget([1.0], [1.0], 1.0), cfg)
    assert mc["mode"] == "monte_carlo" and mc["stderr"] is not None


def test_sweep_rows():
    rows = radbound.run_sweep("rank1", 1, 6, width=5, seed=1)
    assert [r["depth"] for r in rows] == list(range(1, 7))
    assert all(abs(r["sum_R"] - r["depth"]) < 1e-9 for r in rows)


def test_cli_entry_points(tmp_path):
    budget = tmp_path / "budget.json"
    budget.write_text(json.dumps({"B": 1, "M_F": [2, 2], "M_op": [1, 1]}))
    code, out, _ = radbound.run_cli(["bound", "--budget", str(budget), "--n", "100", "--method", "optimal"])
    assert code == 0
    report = json.loads(out)
    assert report["subsequence"] == [0, 2]

    exe = os.environ.get("RADBOUND_CLI")
    if exe:
        proc = subprocess.run([exe, "optimize", "--budget", str(budget)], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["optimal"]["subsequence"] == [0, 2]
