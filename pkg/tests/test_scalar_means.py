import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matrixmeans import symcore
from matrixmeans.averaging import Ensemble, resolvent_average
from matrixmeans.errors import InvalidParameter, NonFinite, NotPositiveDefinite
from matrixmeans.scalar_means import (
    MeanOrder,
    compare_R_vs_G,
    geometric_mean2,
    means_report,
    scalar_arithmetic_mean,
    scalar_harmonic_mean,
    scalar_resolvent_mean,
    weighted_geometric_mean,
)

from strategies import psd_matrices, spd_matrices

positive = st.floats(1e-3, 1e3)


@st.composite
def tuples(draw, min_size=1, max_size=6):
    xs = np.array(draw(st.lists(positive, min_size=min_size, max_size=max_size)))
    raw = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=xs.size, max_size=xs.size)))
    return xs, raw / raw.sum()


# -- examples ----------------------------------------------------------------

def test_resolvent_mean_examples():
    assert abs(scalar_resolvent_mean([0.0, 1.0], [0.5, 0.5]) - 1 / 3) <= 1e-15
    assert scalar_resolvent_mean([7.0, 7.0, 7.0]) == pytest.approx(7.0, rel=1e-15)
    assert scalar_resolvent_mean([2.0, 0.5, 5.0, 0.2]) == pytest.approx(1.0, rel=1e-15)
    assert scalar_resolvent_mean([1.0, 3.0]) == pytest.approx(5 / 3, rel=1e-15)


def test_geometric_mean_examples():
    assert weighted_geometric_mean([0.0, 1.0], [0.5, 0.5]) == 0.0
    assert weighted_geometric_mean([9.0, 1.0], [0.5, 0.5]) == pytest.approx(3.0, rel=1e-15)
    assert weighted_geometric_mean([4.0, 4.0]) == pytest.approx(4.0, rel=1e-15)


def test_harmonic_and_arithmetic_means():
    assert scalar_harmonic_mean([1.0, 3.0]) == pytest.approx(1.5)
    assert scalar_arithmetic_mean([1.0, 3.0], [0.25, 0.75]) == 2.5
    with pytest.raises(NotPositiveDefinite):
        scalar_harmonic_mean([0.0, 1.0])


@pytest.mark.parametrize("xs, err", [([], InvalidParameter), ([-1.0, 2.0], InvalidParameter),
                                     ([np.nan], NonFinite)])
def test_tuple_validation(xs, err):
    with pytest.raises(err):
        scalar_resolvent_mean(xs)


def test_compare_examples():
    assert compare_R_vs_G([0.0, 1.0], [0.5, 0.5]) is MeanOrder.R_GREATER
    assert compare_R_vs_G([9.0, 1.0], [0.5, 0.5]) is MeanOrder.G_GREATER
    assert compare_R_vs_G([4.0, 0.25], [0.5, 0.5]) is MeanOrder.EQUAL
    assert str(MeanOrder.R_GREATER) == "RGreater"


def test_means_report():
    rep = means_report([2.0, 2.0, 2.0], [0.2, 0.3, 0.5])
    for key in "HGRA":
        assert rep[key] == pytest.approx(2.0, rel=1e-15)
    assert rep["ordering"] is MeanOrder.EQUAL
    assert means_report([0.0, 1.0])["H"] is None


# -- properties --------------------------------------------------------------

@pytest.mark.parametrize("mean", [scalar_resolvent_mean, weighted_geometric_mean])
@settings(max_examples=80, deadline=None)
@given(t=tuples())
def test_between_harmonic_and_arithmetic(mean, t):
    xs, w = t
    h, m, a = scalar_harmonic_mean(xs, w), mean(xs, w), scalar_arithmetic_mean(xs, w)
    slack = 1e-9 * (1 + a)
    assert h <= m + slack and m <= a + slack
    if np.ptp(xs) > 1e-3:
        assert m < a


@pytest.mark.parametrize("mean", [scalar_resolvent_mean, weighted_geometric_mean])
@settings(max_examples=80, deadline=None)
@given(t=tuples())
def test_self_dual(mean, t):
    xs, w = t
    assert 1.0 / mean(xs, w) == pytest.approx(mean(1.0 / xs, w), rel=1e-9)


@pytest.mark.parametrize("mean", [scalar_resolvent_mean, weighted_geometric_mean])
@settings(max_examples=50, deadline=None)
@given(xs=st.lists(positive, min_size=1, max_size=4))
def test_inverse_pairs_average_to_one(mean, xs):
    x = np.array(xs)
    assert mean(np.concatenate([x, 1.0 / x])) == pytest.approx(1.0, rel=1e-9)


@pytest.mark.parametrize("mean", [scalar_resolvent_mean, weighted_geometric_mean])
@settings(max_examples=80, deadline=None)
@given(t=tuples(), data=st.data())
def test_monotone_and_concave(mean, t, data):
    xs, w = t
    ys = np.array(data.draw(st.lists(positive, min_size=xs.size, max_size=xs.size)))
    lower = np.minimum(xs, ys)
    mx, ml = mean(xs, w), mean(lower, w)
    assert mx >= ml - 1e-9 * (1 + mx)
    mid = mean(0.5 * (xs + ys), w)
    chord = 0.5 * mean(xs, w) + 0.5 * mean(ys, w)
    assert mid >= chord - 1e-9 * (1 + abs(mid))


@settings(max_examples=80, deadline=None)
@given(t=tuples())
def test_ordering_swaps_under_inversion(t):
    xs, w = t
    swap = {MeanOrder.R_GREATER: MeanOrder.G_GREATER, MeanOrder.G_GREATER: MeanOrder.R_GREATER,
            MeanOrder.EQUAL: MeanOrder.EQUAL}
    assert compare_R_vs_G(1.0 / xs, w) is swap[compare_R_vs_G(xs, w)]


@settings(max_examples=80, deadline=None)
@given(t=tuples())
def test_bridge_to_matrix_average(t):
    xs, w = t
    ens = Ensemble(tuple(np.array([[x]]) for x in xs), w)
    r = scalar_resolvent_mean(xs, w)
    assert resolvent_average(ens, 1.0)[0, 0] == pytest.approx(r, rel=1e-9, abs=1e-9)


# -- two-matrix geometric mean ------------------------------------------------

def test_geometric_mean2_examples():
    a = symcore.random_spd(0, 3, 20.0)
    np.testing.assert_allclose(geometric_mean2(a, a), a, atol=1e-12)
    np.testing.assert_allclose(geometric_mean2(np.diag([1.0, 4.0]), np.diag([4.0, 1.0])),
                               2 * np.eye(2), atol=1e-14)
    b = symcore.random_psd(1, 3, 2, 20.0)
    np.testing.assert_allclose(geometric_mean2(np.eye(3), b), symcore.sqrt_psd(b), atol=1e-14)
    with pytest.raises(NotPositiveDefinite):
        geometric_mean2(np.diag([1.0, 0.0]), np.eye(2))


@settings(max_examples=50, deadline=None)
@given(a=spd_matrices(dim=3), b=spd_matrices(dim=3))
def test_geometric_mean2_properties(a, b):
    g = geometric_mean2(a, b)
    assert symcore.is_psd(g)
    scale = 1 + symcore.frob(g)
    assert symcore.frob(g - geometric_mean2(b, a)) <= 1e-9 * scale * symcore.condition_number(a)
    # G is the unique PD solution of G A^-1 G = B
    assert symcore.frob(g @ symcore.inverse(a) @ g - b) <= 1e-9 * (1 + symcore.frob(b)) * symcore.condition_number(a)


@settings(max_examples=30, deadline=None)
@given(a=spd_matrices(dim=2), b=psd_matrices(dim=2))
def test_geometric_mean2_accepts_singular_second_argument(a, b):
    assert symcore.is_psd(geometric_mean2(a, b))
