"""Resolvents J_A = (Id + A)^-1 and Yosida regularizations of PSD matrices.

Both are computed from one eigendecomposition, so the identity checks below
measure the averaging algebra and not inversion noise.
"""

from __future__ import annotations

from . import symcore
from .averaging import Ensemble, check_mu, resolvent_average
from .errors import NotPositiveSemidefinite
from .symcore import DEFAULT_TOL, SymMatrix, Tolerances


def _psd_spectrum(a: SymMatrix, tol: Tolerances):
    spec = symcore.eigendecompose(a)
    if spec.eigenvalues[0] < -tol.eps_psd * (1.0 + symcore.frob(a)):
        raise NotPositiveSemidefinite(
            f"smallest eigenvalue {spec.eigenvalues[0]:.3g} is negative"
        )
    return spec


def resolvent(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """(Id + A)^-1, with eigenvalues 1/(1+a) in (0, 1]."""
    spec = _psd_spectrum(a, tol)
    return symcore.spectral_map(a, lambda w: 1.0 / (1.0 + w), spec)


def yosida(a: SymMatrix, mu: float, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Yosida mu-regularization (Id - J_{mu A})/mu, eigenvalues a/(1 + mu a)."""
    mu = check_mu(mu)
    spec = _psd_spectrum(a, tol)
    return symcore.spectral_map(a, lambda w: w / (1.0 + mu * w), spec)


def check_resolvent_identity(ens: Ensemble, mu: float) -> float:
    """||J_{mu R_mu} - sum l_i J_{mu A_i}||_F."""
    r = resolvent_average(ens, mu)
    lhs = resolvent(mu * r, ens.tol)
    rhs = sum(lam * resolvent(mu * a, ens.tol) for lam, a in zip(ens.weights, ens.matrices))
    return symcore.frob(lhs - rhs)


def check_yosida_identity(ens: Ensemble, mu: float) -> float:
    """||Yosida_mu(R_mu) - sum l_i Yosida_mu(A_i)||_F."""
    r = resolvent_average(ens, mu)
    lhs = yosida(r, mu, ens.tol)
    rhs = sum(lam * yosida(a, mu, ens.tol) for lam, a in zip(ens.weights, ens.matrices))
    return symcore.frob(lhs - rhs)


def identity_bound(ens: Ensemble, mu: float, yosida_form: bool = False) -> float:
    """Residual contract for the two identity checks."""
    bound = ens.tol.eps_eq * (1 + ens.n)
    return bound * max(1.0, 1.0 / mu) if yosida_form else bound

