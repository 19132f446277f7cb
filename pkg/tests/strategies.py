"""Hypothesis strategies for seeded random matrices and ensembles."""

import numpy as np
from hypothesis import strategies as st

from matrixmeans import symcore
from matrixmeans.averaging import Ensemble

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 5)
conds = st.floats(1.0, 100.0)
mus = st.sampled_from([0.01, 0.1, 1.0, 10.0, 100.0])


@st.composite
def spd_matrices(draw, dim=None):
    d = draw(dims) if dim is None else dim
    return symcore.random_spd(draw(seeds), d, draw(conds))


@st.composite
def psd_matrices(draw, dim=None):
    d = draw(dims) if dim is None else dim
    rng = np.random.default_rng(draw(seeds))
    return symcore.random_psd(rng, d, draw(st.integers(0, d)), draw(conds))


@st.composite
def weight_vectors(draw, n):
    raw = np.array(draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n)))
    return raw / raw.sum()


@st.composite
def ensembles(draw, pd=True, n_min=1, n_max=4):
    d = draw(dims)
    n = draw(st.integers(n_min, n_max))
    gen = spd_matrices if pd else psd_matrices
    mats = tuple(draw(gen(dim=d)) for _ in range(n))
    return Ensemble(mats, draw(weight_vectors(n)))
