import json

import numpy as np
import pytest

from matrixmeans import propcheck, symcore
from matrixmeans.averaging import Ensemble
from matrixmeans.errors import InvalidParameter
from matrixmeans.propcheck import SuiteConfig


def scalars(*xs):
    return Ensemble.uniform([np.array([[float(x)]]) for x in xs])


def test_registry_is_complete():
    assert propcheck.missing_checks() == []
    assert set(propcheck.REQUIRED_CHECKS) <= set(propcheck.REGISTRY)


@pytest.mark.parametrize("kwargs", [{"trials": 0}, {"dim_max": 0}, {"n_max": 0},
                                    {"cond_max": 0.5}, {"mus": (1.0, -1.0)}, {"mus": ()}])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(InvalidParameter):
        SuiteConfig(**kwargs)


def test_default_config():
    cfg = SuiteConfig()
    assert (cfg.trials, cfg.dim_max, cfg.n_max, cfg.cond_max) == (1000, 8, 4, 100)
    assert cfg.mus == (0.01, 0.1, 1, 10, 100)


def test_check_sandwich_examples():
    t = propcheck.check_sandwich(scalars(1, 3), 1.0)
    assert t.passed
    a = symcore.random_spd(2, 3, 10.0)
    assert propcheck.check_sandwich(Ensemble.uniform([a, a]), 0.5).passed


def test_check_self_duality_examples():
    assert propcheck.check_self_duality(scalars(1, 3), 1.0).residual <= 1e-15
    a = symcore.random_spd(3, 3, 10.0)
    assert propcheck.check_self_duality(Ensemble.uniform([a, symcore.inverse(a)]), 1.0).passed
    assert propcheck.check_dual_pair(scalars(1, 3)).residual <= 1e-15


def test_check_monotonicity_examples():
    lower = Ensemble.uniform([np.zeros((2, 2)), np.zeros((2, 2))])
    bumps = [np.zeros((2, 2)), symcore.random_spd(1, 2, 5.0)]
    assert propcheck.check_monotonicity(lower, bumps, 1.0, strict=True).passed
    ens = scalars(1, 3)
    zero = [np.zeros((1, 1))] * 2
    assert propcheck.check_monotonicity(ens, zero, 1.0).passed
    assert not propcheck.check_monotonicity(ens, zero, 1.0, strict=True).passed


def test_check_concavity_examples():
    a = scalars(1, 3)
    probes = [np.array([1.0])]
    assert propcheck.check_concavity(a, a, 1.0, 0.3, probes).passed
    t = propcheck.convexity_inverse(np.array([[1.0]]), np.array([[3.0]]), 0.5, probes)
    assert t.passed and t.residual == pytest.approx(0.5 * (0.5 - 2 / 3))


def test_run_check_counts_errors_as_failures(monkeypatch):
    def boom(rng, cfg):
        raise RuntimeError("boom")
    monkeypatch.setitem(propcheck.REGISTRY, "boom", ("always fails", boom))
    rec = propcheck.run_check("boom", SuiteConfig(trials=3))
    assert (rec.trials, rec.failures, rec.errors) == (3, 3, 3)
    assert "RuntimeError" in rec.first_error
    assert not rec.passed


def test_unknown_check_rejected():
    with pytest.raises(InvalidParameter):
        propcheck.run_suite(SuiteConfig(trials=1), ["nope"])


def test_suite_is_deterministic():
    cfg = SuiteConfig(seed=7, trials=5)
    a, b = propcheck.run_suite(cfg).to_json(), propcheck.run_suite(cfg).to_json()
    assert a == b
    other = propcheck.run_suite(SuiteConfig(seed=8, trials=5)).to_json()
    assert other != a


def test_report_format():
    report = propcheck.run_suite(SuiteConfig(seed=1, trials=3), ["sandwich", "self-duality"])
    data = json.loads(report.to_json())
    assert data["passed"] is True and data["seed"] == 1
    assert data["tolerances"] == {"eps_spec": 1e-12, "eps_psd": 1e-10, "eps_eq": 1e-9}
    assert [r["name"] for r in data["records"]] == ["sandwich", "self-duality"]
    for r in data["records"]:
        assert r["failures"] <= r["trials"] == 3
    table = report.to_table()
    assert "sandwich" in table and table.endswith("overall: PASS")


def test_replay_reproduces_worst_trial():
    cfg = SuiteConfig(seed=3, trials=10)
    rec = propcheck.run_check("self-duality", cfg)
    again = propcheck.replay("self-duality", 3, rec.worst_seed_offset, cfg)
    assert again.residual == rec.worst_residual


def test_quick_suite_passes():
    report = propcheck.run_suite(SuiteConfig(seed=123, trials=20))
    failing = [r.name for r in report.records if not r.passed]
    assert failing == []
