"""Resolvent averages of positive semidefinite matrices.

The resolvent average interpolates between the harmonic and arithmetic
averages of PSD matrices. This package computes it alongside its companions
(harmonic, arithmetic, two-matrix geometric mean, proximal average of
linear-quadratic functions) and ships a seeded property engine that checks
the identities and inequalities they satisfy.
"""

from .averaging import (
    Ensemble,
    arithmetic_average,
    harmonic_average,
    mu_sweep,
    resolvent_average,
    resolvent_average_recursive,
)
from .proxavg import LinQuad, ProxEnsemble, conjugate_linquad, prox_average_closed, prox_average_oracle
from .resolvent import resolvent, yosida
from .scalar_means import geometric_mean2, scalar_resolvent_mean, weighted_geometric_mean
from .symcore import DEFAULT_TOL, Loewner, Tolerances, inverse, is_pd, is_psd, loewner_cmp, sqrt_psd

__version__ = "0.1.0"
