"""Resolvent, harmonic and arithmetic averages of PSD matrices."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import symcore
from .errors import (
    DegenerateWeight,
    DimMismatch,
    InputError,
    InvalidParameter,
    NonFiniteResult,
    NotPositiveDefinite,
    NotPositiveSemidefinite,
)
from .symcore import DEFAULT_TOL, SymMatrix, Tolerances

MU_MIN, MU_MAX = 1e-12, 1e12
WEIGHT_SUM_SLACK = 1e-6


def check_mu(mu: float) -> float:
    """Validate the averaging parameter and return it as a float."""
    try:
        mu = float(mu)
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"mu must be a number, got {mu!r}") from exc
    if not (math.isfinite(mu) and mu > 0):
        raise InvalidParameter(f"mu must be finite and positive, got {mu}")
    if not MU_MIN <= mu <= MU_MAX:
        raise NonFiniteResult(f"mu={mu:g} outside the supported range [{MU_MIN:g}, {MU_MAX:g}]")
    return mu


def normalize_weights(weights, n: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float).ravel()
    if w.size != n:
        raise DimMismatch(f"{w.size} weights for {n} items")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise InvalidParameter(f"weights must be positive and finite, got {w}")
    total = w.sum()
    if abs(total - 1.0) > WEIGHT_SUM_SLACK:
        raise InvalidParameter(f"weights sum to {total!r}, not 1")
    w = w / total
    w.setflags(write=False)
    return w


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Matrices A_1..A_n of a common size with positive weights summing to 1.

    Weights within 1e-6 of summing to one are renormalized; every matrix must
    pass :func:`symcore.is_psd`.
    """

    matrices: tuple
    weights: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        mats = tuple(symcore.sym_from_rows(m, self.tol) for m in self.matrices)
        if not mats:
            raise InputError("an ensemble needs at least one matrix")
        dim = mats[0].shape[0]
        for i, m in enumerate(mats):
            if m.shape[0] != dim:
                raise DimMismatch(f"matrix {i} is {m.shape[0]}x{m.shape[0]}, expected {dim}x{dim}")
            if not symcore.is_psd(m, self.tol):
                raise NotPositiveSemidefinite(f"matrix {i} is not positive semidefinite")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "weights", normalize_weights(self.weights, len(mats)))

    @classmethod
    def uniform(cls, matrices, tol: Tolerances = DEFAULT_TOL) -> "Ensemble":
        n = len(matrices)
        if n == 0:
            raise InvalidParameter("an ensemble needs at least one matrix")
        return cls(tuple(matrices), np.full(n, 1.0 / n), tol)

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def inverted(self) -> "Ensemble":
        """The ensemble of inverses with the same weights."""
        return Ensemble(tuple(symcore.inverse(m, self.tol) for m in self.matrices),
                        self.weights, self.tol)

    def is_pd(self) -> bool:
        return all(symcore.is_pd(m, self.tol) for m in self.matrices)

    def max_condition(self) -> float:
        return max(symcore.condition_number(m) for m in self.matrices)


def _weighted_sum(weights, mats) -> np.ndarray:
    return sum(w * m for w, m in zip(weights, mats))


def resolvent_average(ens: Ensemble, mu: float = 1.0) -> SymMatrix:
    """Resolvent average R_mu of the ensemble.

    Defined by ``R = [sum l_i (A_i + Id/mu)^-1]^-1 - Id/mu``. Multiplying
    through by mu gives ``R = (S^-1 - Id)/mu`` with ``S = sum l_i J_i`` and
    ``J_i = (Id + mu A_i)^-1``. Writing ``Y = (Id - S)/mu``, the average of
    the Yosida regularizations, turns this into ``R = Y S^-1``; Y and S are
    both formed eigenvalue-wise so nothing cancels at either end of the mu
    range.
    """
    mu = check_mu(mu)
    s = np.zeros((ens.dim, ens.dim))
    y = np.zeros((ens.dim, ens.dim))
    for lam, a in zip(ens.weights, ens.matrices):
        w, q = symcore.eigendecompose(a)
        s += lam * (q * (1.0 / (1.0 + mu * w))) @ q.T
        y += lam * (q * (w / (1.0 + mu * w))) @ q.T
    # S has spectrum in (0, 1] by construction, so no dead-band test here
    w, q = symcore.eigendecompose(symcore.symmetrize(s))
    if w[0] <= 0:
        raise NonFiniteResult(f"resolvent sum lost definiteness at mu={mu:g}")
    r = symcore.symmetrize(y @ ((q / w) @ q.T))
    if not np.all(np.isfinite(r)):
        raise NonFiniteResult(f"resolvent average is not finite at mu={mu:g}")
    return r


def harmonic_average(ens: Ensemble) -> SymMatrix:
    """(sum l_i A_i^-1)^-1; every matrix must be positive definite."""
    invs = []
    for i, a in enumerate(ens.matrices):
        try:
            invs.append(symcore.inverse(a, ens.tol))
        except NotPositiveDefinite as exc:
            raise NotPositiveDefinite(f"matrix {i} is not positive definite") from exc
    return symcore.inverse(symcore.symmetrize(_weighted_sum(ens.weights, invs)), ens.tol)


def arithmetic_average(ens: Ensemble) -> SymMatrix:
    return symcore.symmetrize(_weighted_sum(ens.weights, ens.matrices))


def resolvent_average_recursive(ens: Ensemble, mu: float = 1.0) -> SymMatrix:
    """R_mu evaluated by peeling off the last matrix.

    R(A_1..A_n; l) = R(R(A_1..A_{n-1}; l_i/(1-l_n)), A_n; 1-l_n, l_n), with
    the two-matrix case evaluated directly.
    """
    if ens.n < 2:
        raise InvalidParameter("the recursion needs at least two matrices")
    mu = check_mu(mu)
    rest = 1.0 - ens.weights[-1]
    if rest < 1e-14:
        raise DegenerateWeight(f"1 - last weight = {rest:.3g} is too small to renormalize")
    if ens.n == 2:
        head = ens.matrices[0]
    else:
        inner = Ensemble(ens.matrices[:-1], ens.weights[:-1] / rest, ens.tol)
        head = resolvent_average_recursive(inner, mu)
    pair = Ensemble((head, ens.matrices[-1]), np.array([rest, ens.weights[-1]]), ens.tol)
    return resolvent_average(pair, mu)


@dataclass(frozen=True, eq=False)
class SweepReport:
    grid: np.ndarray
    dist_to_arith: np.ndarray
    dist_to_harm: np.ndarray
    loewner_chain_ok: np.ndarray

    def to_csv(self) -> str:
        """CSV with header ``mu,dist_arith,dist_harm,chain_ok``.

        chain_ok on row k compares grid points k-1 and k; the first row has
        no predecessor and is always 1.
        """
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["mu", "dist_arith", "dist_harm", "chain_ok"])
        ok = np.concatenate([[True], self.loewner_chain_ok])
        for mu, da, dh, c in zip(self.grid, self.dist_to_arith, self.dist_to_harm, ok):
            out.writerow([f"{mu:.17g}", f"{da:.17g}", f"{dh:.17g}", int(bool(c))])
        return buf.getvalue()

    @property
    def all_ok(self) -> bool:
        return bool(np.all(self.loewner_chain_ok))


def mu_sweep(ens: Ensemble, mu_lo: float, mu_hi: float, points: int) -> SweepReport:
    """Evaluate R_mu on a log-uniform grid and compare against both limits."""
    mu_lo, mu_hi = check_mu(mu_lo), check_mu(mu_hi)
    if not mu_lo < mu_hi or points < 2:
        raise InvalidParameter(f"need mu_lo < mu_hi and points >= 2, got {mu_lo}, {mu_hi}, {points}")
    arith = arithmetic_average(ens)
    harm = harmonic_average(ens)
    grid = np.geomspace(mu_lo, mu_hi, points)
    rs = [resolvent_average(ens, mu) for mu in grid]
    da = np.array([symcore.frob(r - arith) for r in rs])
    dh = np.array([symcore.frob(r - harm) for r in rs])
    chain = np.array([symcore.loewner_cmp(rs[k], rs[k + 1], ens.tol).geq
                      for k in range(points - 1)])
    return SweepReport(grid, da, dh, chain)


# -- JSON ensemble format ---------------------------------------------------

def ensemble_from_dict(data: dict, base_dir: Path | None = None,
                       tol: Tolerances = DEFAULT_TOL) -> tuple[Ensemble, float | None]:
    """Build an ensemble from ``{"weights": [...], "mu": x, "matrices": [...]}``.

    A matrix entry may be a nested list of rows or a path (relative to
    ``base_dir``) to a file in the matrix text format. Missing weights mean
    uniform weights. Returns the ensemble and the ``mu`` field (or None).
    """
    if not isinstance(data, dict) or "matrices" not in data:
        raise InputError("ensemble JSON needs a 'matrices' list")
    mats = []
    for entry in data["matrices"]:
        if isinstance(entry, str):
            path = Path(entry)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            try:
                mats.append(symcore.read_matrix(path, tol))
            except OSError as exc:
                raise InputError(f"cannot read matrix file {path}: {exc}") from exc
        else:
            mats.append(symcore.sym_from_rows(entry, tol))
    if not mats:
        raise InputError("ensemble JSON has no matrices")
    weights = data.get("weights")
    if weights is None:
        weights = np.full(len(mats), 1.0 / len(mats))
    mu = data.get("mu")
    return Ensemble(tuple(mats), weights, tol), (None if mu is None else float(mu))


def load_ensemble(path, tol: Tolerances = DEFAULT_TOL) -> tuple[Ensemble, float | None]:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse ensemble file {path}: {exc}") from exc
    return ensemble_from_dict(data, path.parent, tol)


def ensemble_to_dict(ens: Ensemble, mu: float | None = None) -> dict:
    data = {"weights": [float(w) for w in ens.weights]}
    if mu is not None:
        data["mu"] = float(mu)
    data["matrices"] = [m.tolist() for m in ens.matrices]
    return data


def random_ensemble(seed, dim: int, n: int, cond: float = 100.0,
                    weights: Sequence[float] | None = None) -> Ensemble:
    """Seeded random PD ensemble (uniform weights unless given)."""
    rng = symcore._rng(seed)
    mats = tuple(symcore.random_spd(rng, dim, cond) for _ in range(n))
    if weights is None:
        weights = np.full(n, 1.0 / n)
    return Ensemble(mats, weights)
