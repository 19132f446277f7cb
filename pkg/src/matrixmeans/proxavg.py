"""Linear-quadratic convex functions and their proximal average.

A :class:`LinQuad` is ``f(x) = 0.5 <Ax, x> + <b, x> + r`` with A PSD. The
proximal average of such functions is again linear-quadratic and has a
closed form (:func:`prox_average_closed`) whose quadratic part is the
resolvent average of the A_i. :func:`prox_average_oracle` evaluates the same
function independently, by solving one of two equality-constrained convex
QPs (infimal-convolution representations) through their KKT systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import symcore
from .averaging import Ensemble, check_mu, normalize_weights, resolvent_average
from .errors import (
    DimMismatch,
    InputError,
    InvalidParameter,
    NonFinite,
    NotPositiveDefinite,
    NotPositiveSemidefinite,
    SingularKKT,
)
from .symcore import DEFAULT_TOL, Tolerances

REP1 = "rep1"
REP3 = "rep3"


@dataclass(frozen=True, eq=False)
class LinQuad:
    A: np.ndarray
    b: np.ndarray
    r: float = 0.0
    tol: Tolerances = field(default=DEFAULT_TOL, compare=False, repr=False)

    def __post_init__(self):
        a = symcore.sym_from_rows(self.A, self.tol)
        b = np.array(self.b, dtype=float).ravel()
        if b.size != a.shape[0]:
            raise DimMismatch(f"b has {b.size} entries, A is {a.shape[0]}x{a.shape[0]}")
        if not np.all(np.isfinite(b)) or not math.isfinite(float(self.r)):
            raise NonFinite("b and r must be finite")
        if not symcore.is_psd(a, self.tol):
            raise NotPositiveSemidefinite("quadratic part is not positive semidefinite")
        b.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "r", float(self.r))

    @classmethod
    def quadratic(cls, a, tol: Tolerances = DEFAULT_TOL) -> "LinQuad":
        a = np.asarray(a, dtype=float)
        return cls(a, np.zeros(a.shape[0]), 0.0, tol)

    @classmethod
    def j(cls, dim: int) -> "LinQuad":
        """The energy 0.5 ||x||^2."""
        return cls.quadratic(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def __call__(self, x) -> float:
        return eval_linquad(self, x)

    def gradient(self, x) -> np.ndarray:
        return self.A @ _vec(x, self.dim) + self.b

    def to_dict(self) -> dict:
        return {"A": self.A.tolist(), "b": self.b.tolist(), "r": self.r}

    @classmethod
    def from_dict(cls, data: dict, tol: Tolerances = DEFAULT_TOL) -> "LinQuad":
        try:
            a = data["A"]
            dim = len(a)
            return cls(a, data.get("b", [0.0] * dim), data.get("r", 0.0), tol)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad LinQuad JSON: {exc}") from exc


def _vec(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != dim:
        raise DimMismatch(f"point has {x.size} entries, expected {dim}")
    return x


def eval_linquad(f: LinQuad, x) -> float:
    x = _vec(x, f.dim)
    return float(0.5 * x @ f.A @ x + f.b @ x + f.r)


def conjugate_linquad(f: LinQuad) -> LinQuad:
    """Fenchel conjugate ``y -> q_{A^-1}(y - b) - r`` of a PD linear-quadratic f."""
    try:
        a_inv = symcore.inverse(f.A, f.tol)
    except NotPositiveDefinite as exc:
        raise NotPositiveDefinite("conjugate needs a positive definite quadratic part") from exc
    a_inv_b = a_inv @ f.b
    return LinQuad(a_inv, -a_inv_b, 0.5 * f.b @ a_inv_b - f.r, f.tol)


def combine(funcs, weights) -> LinQuad:
    """The weighted sum sum_i w_i f_i."""
    tol = funcs[0].tol
    return LinQuad(sum(w * f.A for w, f in zip(weights, funcs)),
                   sum(w * f.b for w, f in zip(weights, funcs)),
                   sum(w * f.r for w, f in zip(weights, funcs)), tol)


@dataclass(frozen=True, eq=False)
class ProxEnsemble:
    funcs: tuple
    weights: np.ndarray
    mu: float = 1.0

    def __post_init__(self):
        funcs = tuple(self.funcs)
        if not funcs:
            raise InputError("a proximal average needs at least one function")
        dim = funcs[0].dim
        if any(f.dim != dim for f in funcs):
            raise DimMismatch("all functions must share one dimension")
        object.__setattr__(self, "funcs", funcs)
        object.__setattr__(self, "weights", normalize_weights(self.weights, len(funcs)))
        object.__setattr__(self, "mu", check_mu(self.mu))

    @property
    def n(self) -> int:
        return len(self.funcs)

    @property
    def dim(self) -> int:
        return self.funcs[0].dim

    @property
    def tol(self) -> Tolerances:
        return self.funcs[0].tol

    def with_mu(self, mu: float) -> "ProxEnsemble":
        return ProxEnsemble(self.funcs, self.weights, mu)

    def ensemble(self) -> Ensemble:
        return Ensemble(tuple(f.A for f in self.funcs), self.weights, self.tol)

    def to_dict(self) -> dict:
        return {"weights": [float(w) for w in self.weights], "mu": self.mu,
                "funcs": [f.to_dict() for f in self.funcs]}

    @classmethod
    def from_dict(cls, data: dict, tol: Tolerances = DEFAULT_TOL) -> "ProxEnsemble":
        if not isinstance(data, dict) or "funcs" not in data:
            raise InputError("prox-ensemble JSON needs a 'funcs' list")
        funcs = tuple(LinQuad.from_dict(d, tol) for d in data["funcs"])
        weights = data.get("weights")
        if weights is None:
            weights = np.full(len(funcs), 1.0 / max(len(funcs), 1))
        return cls(funcs, weights, data.get("mu", 1.0))


def prox_average_closed(pens: ProxEnsemble) -> LinQuad:
    """Closed-form proximal average of linear-quadratic functions.

    With ``M_i = (A_i + Id/mu)^-1``, ``S = sum l_i M_i`` and
    ``c = sum l_i M_i b_i`` the result is::

        q_R(x) + <x, S^-1 c> + q_{S^-1}(c) - sum l_i (q_{M_i}(b_i) - r_i)

    where R is the resolvent average of the A_i.
    """
    mu = pens.mu
    dim = pens.dim
    s = np.zeros((dim, dim))
    c = np.zeros(dim)
    const = 0.0
    for lam, f in zip(pens.weights, pens.funcs):
        w, q = symcore.eigendecompose(f.A)
        m = (q * (mu / (1.0 + mu * w))) @ q.T
        mb = m @ f.b
        s += lam * m
        c += lam * mb
        const -= lam * (0.5 * f.b @ mb - f.r)
    w, q = symcore.eigendecompose(symcore.symmetrize(s))
    s_inv_c = q @ ((q.T @ c) / w)
    const += 0.5 * c @ s_inv_c
    return LinQuad(resolvent_average(pens.ensemble(), mu), s_inv_c, const, pens.tol)


def _solve_kkt(h: np.ndarray, g: np.ndarray, c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Minimize 0.5 z^T H z + g^T z subject to C z = x; returns z."""
    nz, nc = h.shape[0], c.shape[0]
    kkt = np.zeros((nz + nc, nz + nc))
    kkt[:nz, :nz] = h
    kkt[:nz, nz:] = c.T
    kkt[nz:, :nz] = c
    rhs = np.concatenate([-g, x])
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularKKT(str(exc)) from exc
    resid = np.linalg.norm(kkt @ sol - rhs)
    if not np.isfinite(resid) or resid > 1e-8 * (1.0 + np.linalg.norm(rhs)) * (1.0 + np.abs(kkt).max()):
        raise SingularKKT(f"KKT residual {resid:.3g} too large")
    return sol[:nz]


def _oracle_rep1(pens: ProxEnsemble, x: np.ndarray) -> float:
    # min over x_1 + ... + x_n = x of sum l_i g_i(x_i / l_i) - j(x)/mu,
    # g_i = f_i + j/mu; the scaled terms are (1/(2 l_i)) x_i^T B_i x_i + <b_i, x_i> + l_i r_i
    n, d, mu = pens.n, pens.dim, pens.mu
    h = np.zeros((n * d, n * d))
    g = np.zeros(n * d)
    const = 0.0
    for i, (lam, f) in enumerate(zip(pens.weights, pens.funcs)):
        blk = slice(i * d, (i + 1) * d)
        h[blk, blk] = (f.A + np.eye(d) / mu) / lam
        g[blk] = f.b
        const += lam * f.r
    c = np.tile(np.eye(d), (1, n))
    z = _solve_kkt(h, g, c, x)
    return float(0.5 * z @ h @ z + g @ z + const - 0.5 * x @ x / mu)


def _oracle_rep3(pens: ProxEnsemble, x: np.ndarray) -> float:
    # min over sum l_i y_i = x of sum l_i f_i(y_i)
    #   + 1/(4 mu) sum_i sum_j l_i l_j ||y_i - y_j||^2
    n, d, mu = pens.n, pens.dim, pens.mu
    lam = pens.weights
    h = np.zeros((n * d, n * d))
    g = np.zeros(n * d)
    const = 0.0
    eye = np.eye(d)
    for i, f in enumerate(pens.funcs):
        blk = slice(i * d, (i + 1) * d)
        h[blk, blk] += lam[i] * f.A
        g[blk] = lam[i] * f.b
        const += lam[i] * f.r
    for i in range(n):
        for k in range(i + 1, n):
            # the (i,k) and (k,i) terms together contribute l_i l_k/(2 mu) ||y_i - y_k||^2
            wt = lam[i] * lam[k] / mu
            bi, bk = slice(i * d, (i + 1) * d), slice(k * d, (k + 1) * d)
            h[bi, bi] += wt * eye
            h[bk, bk] += wt * eye
            h[bi, bk] -= wt * eye
            h[bk, bi] -= wt * eye
    c = np.hstack([l * eye for l in lam])
    y = _solve_kkt(h, g, c, x)
    return float(0.5 * y @ h @ y + g @ y + const)


def prox_average_oracle(pens: ProxEnsemble, x, rep: str = REP1) -> float:
    """Evaluate the proximal average at ``x`` by an exact constrained QP solve.

    ``rep="rep1"`` splits x = x_1 + ... + x_n; ``rep="rep3"`` writes
    x = l_1 y_1 + ... + l_n y_n with a pairwise-distance penalty.
    """
    x = _vec(x, pens.dim)
    if rep == REP1:
        return _oracle_rep1(pens, x)
    if rep == REP3:
        return _oracle_rep3(pens, x)
    raise InvalidParameter(f"unknown representation {rep!r}")


def _coef_gap(f: LinQuad, g: LinQuad) -> float:
    return max(
        symcore.frob(f.A - g.A) / (1.0 + symcore.frob(f.A)),
        float(np.linalg.norm(f.b - g.b)) / (1.0 + float(np.linalg.norm(f.b))),
        abs(f.r - g.r) / (1.0 + abs(f.r)),
    )


def fenchel_selfdual_check(pens: ProxEnsemble) -> float:
    """Coefficient gap between (p_mu(f))^* and p_{1/mu}(f^*).

    Each coefficient block is compared relative to (1 + its magnitude); the
    largest of the three relative gaps is returned.
    """
    lhs = conjugate_linquad(prox_average_closed(pens))
    duals = ProxEnsemble(tuple(conjugate_linquad(f) for f in pens.funcs),
                         pens.weights, 1.0 / pens.mu)
    return _coef_gap(lhs, prox_average_closed(duals))


def function_sandwich(pens: ProxEnsemble, x) -> tuple[float, float, float]:
    """(lower, middle, upper) = ((sum l_i f_i^*)^*(x), p_mu(x), (sum l_i f_i)(x))."""
    lower = conjugate_linquad(combine([conjugate_linquad(f) for f in pens.funcs], pens.weights))
    upper = combine(pens.funcs, pens.weights)
    return lower(x), prox_average_closed(pens)(x), upper(x)


def mu_monotonicity_check(pens: ProxEnsemble, mu_lo: float, mu_hi: float, x,
                          slack: float | None = None) -> bool:
    """True iff p_{mu_lo}(x) >= p_{mu_hi}(x) up to slack * (1 + |value|)."""
    if not mu_lo < mu_hi:
        raise InvalidParameter(f"need mu_lo < mu_hi, got {mu_lo} and {mu_hi}")
    slack = pens.tol.eps_eq if slack is None else slack
    lo = prox_average_closed(pens.with_mu(mu_lo))(x)
    hi = prox_average_closed(pens.with_mu(mu_hi))(x)
    return lo >= hi - slack * (1.0 + max(abs(lo), abs(hi)))


def oracle_gradient(pens: ProxEnsemble, x, h: float = 1e-5, rep: str = REP1) -> np.ndarray:
    """Central finite-difference gradient of the oracle."""
    x = _vec(x, pens.dim)
    grad = np.empty(pens.dim)
    for k in range(pens.dim):
        e = np.zeros(pens.dim)
        e[k] = h
        grad[k] = (prox_average_oracle(pens, x + e, rep) - prox_average_oracle(pens, x - e, rep)) / (2 * h)
    return grad
