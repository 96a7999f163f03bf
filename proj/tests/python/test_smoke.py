import numpy as np
import pytest

import romp


def test_trimmed_inner_product():
    assert romp.trimmed_inner_product([1.0, 2.0, 3.0], [1.0, 1.0, 1.0], 1) == 3.0
    with pytest.raises(ValueError):
        romp.trimmed_inner_product([1.0], [1.0], 2)


def test_generate_attack_solve():
    inst = romp.generate(n=300, p=500, k=5, n1=5, sigma=0.5, seed=3)
    assert inst["X"].shape == (305, 500)
    truth = inst["truth"]["support"]
    attacked = romp.attack(inst, "feasibility", seed=4)
    outliers = attacked["ledger"]["rows"]
    assert len(outliers) == 5
    assert not set(outliers) & set(attacked["authentic_rows"])
    beta, support = romp.romp(attacked["X"], attacked["y"], 5, 5)
    assert support == truth
    assert beta.shape == (500,)


def test_solvers_agree_on_easy_data():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 10)) / np.sqrt(40)
    beta = np.zeros(10)
    beta[[1, 4]] = [1.0, -1.0]
    y = X @ beta
    _, support = romp.omp(X, y, 2)
    assert support == [1, 4]
    assert np.allclose(romp.lasso(X, y, 0.0), beta, atol=1e-4)
    b, z = romp.justice_pursuit(X, y, 1e-6, 10.0)
    assert np.all(z == 0)
    b, support, rows, obj = romp.brute_force(X[:8, :4], X[:8, :4] @ beta[:4], 8, 2)
    assert obj < 1e-20


def test_probe_and_sweep(tmp_path):
    rep = romp.probe("max_subgaussian", m=100, p=20.0, trials=200, seed=2)
    assert rep["probe"] == "max_subgaussian"
    cfg = {"p": 60, "n": 40, "k": 3, "noise_sigma": 0.5, "trials": 2,
           "n1_fractions": [0.0, 0.1], "estimators": ["romp"]}
    report = romp.run_sweep(cfg, tmp_path)
    assert len(report["records"]) == 4
    assert (tmp_path / "records.csv").exists()
    assert report == romp.run_sweep(cfg)
