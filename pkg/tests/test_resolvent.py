import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matrixmeans import symcore
from matrixmeans.averaging import Ensemble, random_ensemble
from matrixmeans.errors import NotPositiveSemidefinite
from matrixmeans.resolvent import (
    check_resolvent_identity,
    check_yosida_identity,
    identity_bound,
    resolvent,
    yosida,
)

from strategies import ensembles, mus, psd_matrices


def test_resolvent_examples():
    np.testing.assert_array_equal(resolvent(np.zeros((2, 2))), np.eye(2))
    np.testing.assert_allclose(resolvent(np.eye(3)), 0.5 * np.eye(3))
    np.testing.assert_allclose(resolvent(np.diag([1.0, 3.0])), np.diag([0.5, 0.25]))
    with pytest.raises(NotPositiveSemidefinite):
        resolvent(np.diag([1.0, -1.0]))


def test_yosida_examples():
    np.testing.assert_array_equal(yosida(np.zeros((2, 2)), 1.0), np.zeros((2, 2)))
    np.testing.assert_allclose(yosida(np.eye(2), 1.0), 0.5 * np.eye(2))
    np.testing.assert_allclose(yosida(np.array([[2.0]]), 0.5), [[1.0]])
    with pytest.raises(NotPositiveSemidefinite):
        yosida(np.diag([1.0, -1.0]), 1.0)


@settings(max_examples=50, deadline=None)
@given(a=psd_matrices(), mu=mus)
def test_yosida_matches_definition(a, mu):
    # (Id - J_{mu A}) / mu, built from a general-purpose inverse
    dim = a.shape[0]
    ref = (np.eye(dim) - np.linalg.inv(np.eye(dim) + mu * a)) / mu
    assert symcore.frob(yosida(a, mu) - ref) <= 1e-10 * (1 + symcore.frob(a)) * max(1.0, 1.0 / mu)


@settings(max_examples=50, deadline=None)
@given(a=psd_matrices(), mu=mus)
def test_yosida_spectrum(a, mu):
    spec = symcore.eigendecompose(a)
    y = yosida(a, mu)
    q = spec.eigenvectors
    w = spec.eigenvalues
    np.testing.assert_allclose(q.T @ y @ q, np.diag(w / (1 + mu * w)),
                               atol=1e-12 * (1 + symcore.frob(a)))
    assert symcore.is_psd(y)


@settings(max_examples=50, deadline=None)
@given(a=psd_matrices())
def test_resolvent_spectrum_in_unit_interval(a):
    w = symcore.eigendecompose(resolvent(a)).eigenvalues
    assert np.all(w > 0) and np.all(w <= 1 + 1e-15)


def test_yosida_tends_to_matrix_as_mu_vanishes():
    a = symcore.random_spd(2, 4, 50.0)
    dist = [symcore.frob(yosida(a, mu) - a) for mu in np.geomspace(1e2, 1e-6, 17)]
    assert np.all(np.diff(dist) <= 1e-12)
    assert dist[-1] <= 1e-4 * symcore.frob(a)


def test_identity_examples():
    a = symcore.random_spd(1, 3, 20.0)
    copies = Ensemble.uniform([a, a, a])
    for mu in (0.01, 1.0, 100.0):
        assert check_resolvent_identity(copies, mu) <= 1e-9
        assert check_yosida_identity(copies, mu) <= 1e-9
    pair = Ensemble.uniform([a, symcore.inverse(a)])
    assert check_resolvent_identity(pair, 1.0) <= 1e-9
    scalar = Ensemble.uniform([np.array([[1.0]]), np.array([[3.0]])])
    assert check_yosida_identity(scalar, 1.0) <= 1e-15
    assert yosida(np.array([[5 / 3]]), 1.0)[0, 0] == pytest.approx(5 / 8, abs=1e-15)


def test_identity_bound():
    ens = random_ensemble(0, 2, 3)
    assert identity_bound(ens, 0.5) == pytest.approx(4e-9)
    assert identity_bound(ens, 0.5, yosida_form=True) == pytest.approx(8e-9)
    assert identity_bound(ens, 5.0, yosida_form=True) == pytest.approx(4e-9)


@settings(max_examples=60, deadline=None)
@given(ens=ensembles(pd=False), mu=mus)
def test_identities_hold(ens, mu):
    assert check_resolvent_identity(ens, mu) <= identity_bound(ens, mu)
    assert check_yosida_identity(ens, mu) <= identity_bound(ens, mu, yosida_form=True)


@settings(max_examples=30, deadline=None)
@given(ens=ensembles(pd=False), mu=mus, c=st.floats(1e-3, 1e3))
def test_identities_scale_stable(ens, mu, c):
    scaled = Ensemble(tuple(c * a for a in ens.matrices), ens.weights)
    assert check_resolvent_identity(scaled, mu) <= identity_bound(scaled, mu)
    assert check_yosida_identity(scaled, mu) <= identity_bound(scaled, mu, yosida_form=True)


def test_identities_under_jacobi():
    ens = random_ensemble(6, 4, 3, 80.0)
    with symcore.use_eigensolver("jacobi"):
        for mu in (0.01, 1.0, 100.0):
            assert check_resolvent_identity(ens, mu) <= identity_bound(ens, mu)
            assert check_yosida_identity(ens, mu) <= identity_bound(ens, mu, yosida_form=True)
