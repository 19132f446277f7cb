"""Weighted means of nonnegative scalars and the two-matrix geometric mean."""

from __future__ import annotations

import enum

import numpy as np

from . import symcore
from .averaging import normalize_weights
from .errors import DimMismatch, InvalidParameter, NonFinite, NotPositiveDefinite
from .symcore import DEFAULT_TOL, SymMatrix, Tolerances


class MeanOrder(enum.Enum):
    R_GREATER = "RGreater"
    G_GREATER = "GGreater"
    EQUAL = "Equal"

    def __str__(self):
        return self.value


def _tuple(xs, weights):
    x = np.asarray(xs, dtype=float).ravel()
    if x.size == 0:
        raise InvalidParameter("empty tuple")
    if not np.all(np.isfinite(x)):
        raise NonFinite("tuple entries must be finite")
    if np.any(x < 0):
        raise InvalidParameter(f"tuple entries must be nonnegative, got {x}")
    if weights is None:
        weights = np.full(x.size, 1.0 / x.size)
    return x, normalize_weights(weights, x.size)


def scalar_resolvent_mean(xs, weights=None) -> float:
    """(sum l_i (x_i + 1)^-1)^-1 - 1, the resolvent mean at mu = 1."""
    x, w = _tuple(xs, weights)
    return float(1.0 / np.sum(w / (x + 1.0)) - 1.0)


def weighted_geometric_mean(xs, weights=None) -> float:
    """prod x_i ** l_i; zero as soon as one entry is zero."""
    x, w = _tuple(xs, weights)
    if np.any(x == 0):
        return 0.0
    return float(np.exp(np.sum(w * np.log(x))))


def scalar_harmonic_mean(xs, weights=None) -> float:
    x, w = _tuple(xs, weights)
    if np.any(x == 0):
        raise NotPositiveDefinite("harmonic mean needs positive entries")
    return float(1.0 / np.sum(w / x))


def scalar_arithmetic_mean(xs, weights=None) -> float:
    x, w = _tuple(xs, weights)
    return float(np.sum(w * x))


def compare_R_vs_G(xs, weights=None, tol: Tolerances = DEFAULT_TOL) -> MeanOrder:
    r = scalar_resolvent_mean(xs, weights)
    g = weighted_geometric_mean(xs, weights)
    band = tol.eps_eq * (1.0 + max(abs(r), abs(g)))
    if r - g > band:
        return MeanOrder.R_GREATER
    if g - r > band:
        return MeanOrder.G_GREATER
    return MeanOrder.EQUAL


def geometric_mean2(a: SymMatrix, b: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """A # B = A^1/2 (A^-1/2 B A^-1/2)^1/2 A^1/2 for PD A and PSD B."""
    a = symcore.sym_from_rows(a, tol)
    b = symcore.sym_from_rows(b, tol)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes {a.shape} and {b.shape} differ")
    spec = symcore.eigendecompose(a)
    if spec.eigenvalues[0] < tol.eps_psd * (1.0 + symcore.frob(a)):
        raise NotPositiveDefinite("first argument of the geometric mean must be positive definite")
    a_half = symcore.spectral_map(a, np.sqrt, spec)
    a_mhalf = symcore.spectral_map(a, lambda w: 1.0 / np.sqrt(w), spec)
    inner = symcore.symmetrize(a_mhalf @ b @ a_mhalf)
    return symcore.symmetrize(a_half @ symcore.sqrt_psd(inner, tol) @ a_half)


def means_report(xs, weights=None, tol: Tolerances = DEFAULT_TOL) -> dict:
    """H, G, R, A and the R-vs-G ordering; H is None when an entry is zero."""
    x, w = _tuple(xs, weights)
    return {
        "H": None if np.any(x == 0) else scalar_harmonic_mean(x, w),
        "G": weighted_geometric_mean(x, w),
        "R": scalar_resolvent_mean(x, w),
        "A": scalar_arithmetic_mean(x, w),
        "ordering": compare_R_vs_G(x, w, tol),
    }

