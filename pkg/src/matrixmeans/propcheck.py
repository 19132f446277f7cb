"""Seeded randomized verification of the identities and inequalities of
resolvent averages, proximal averages and scalar means.

Every registered check draws one random instance per trial from a generator
seeded by ``(seed, crc32(name), offset)``, so any failing trial can be
replayed from the seed and its offset alone (see :func:`replay`).
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import symcore
from .averaging import (
    Ensemble,
    arithmetic_average,
    harmonic_average,
    mu_sweep,
    resolvent_average,
    resolvent_average_recursive,
)
from .errors import InvalidParameter
from .proxavg import (
    REP1,
    REP3,
    LinQuad,
    ProxEnsemble,
    fenchel_selfdual_check,
    function_sandwich,
    mu_monotonicity_check,
    oracle_gradient,
    prox_average_closed,
    prox_average_oracle,
)
from .resolvent import check_resolvent_identity, check_yosida_identity, identity_bound
from .scalar_means import (
    MeanOrder,
    compare_R_vs_G,
    scalar_arithmetic_mean,
    scalar_harmonic_mean,
    scalar_resolvent_mean,
    weighted_geometric_mean,
)
from .symcore import DEFAULT_TOL, Tolerances

# tolerances of the cross-checks that are not tied to Tolerances
ORACLE_RTOL = 1e-8
GRADIENT_RTOL = 1e-6
FD_STEP = 1e-5
DUALITY_RTOL = 1e-8
FUNCTION_SLACK = 1e-9
LIMIT_RTOL = 1e-4
LIMIT_GRID = (1e-6, 1e6, 25)
STRICT_SPREAD = 1e-3
PROX_DIM_MAX = 6
PROBES = 5


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 1000
    dim_max: int = 8
    n_max: int = 4
    cond_max: float = 100.0
    mus: tuple = (0.01, 0.1, 1.0, 10.0, 100.0)
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParameter(f"trials must be >= 1, got {self.trials}")
        if self.dim_max < 1 or self.n_max < 1:
            raise InvalidParameter("dim_max and n_max must be >= 1")
        if not self.cond_max >= 1:
            raise InvalidParameter(f"cond_max must be >= 1, got {self.cond_max}")
        mus = tuple(float(m) for m in self.mus)
        if not mus or not all(math.isfinite(m) and m > 0 for m in mus):
            raise InvalidParameter(f"mus must be positive and finite, got {self.mus}")
        object.__setattr__(self, "mus", mus)


class Trial(NamedTuple):
    passed: bool
    residual: float


@dataclass
class CheckRecord:
    name: str
    trials: int = 0
    failures: int = 0
    worst_residual: float | None = None
    worst_seed_offset: int | None = None
    errors: int = 0
    first_error: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class CheckReport:
    seed: int
    trials: int
    tolerances: dict
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "tolerances": self.tolerances,
            "passed": self.passed,
            "records": [asdict(r) for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        head = f"{'check':<28} {'trials':>6} {'fail':>5} {'worst residual':>15} {'at':>6}  status"
        lines = [head, "-" * len(head)]
        for r in self.records:
            worst = "-" if r.worst_residual is None else f"{r.worst_residual:.3e}"
            at = "-" if r.worst_seed_offset is None else str(r.worst_seed_offset)
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.name:<28} {r.trials:>6} {r.failures:>5} {worst:>15} {at:>6}  {status}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# -- instance generators ----------------------------------------------------

def trial_rng(seed: int, name: str, offset: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode()), offset])


def _weights(rng, n: int) -> np.ndarray:
    # bounded away from zero so strict checks keep a usable margin
    return 0.9 * rng.dirichlet(np.ones(n)) + 0.1 / n


def _dims(rng, cfg: SuiteConfig, n_min: int = 2, dim_max: int | None = None):
    dim = int(rng.integers(1, (dim_max or cfg.dim_max) + 1))
    n = int(rng.integers(min(n_min, cfg.n_max), cfg.n_max + 1))
    return dim, n


def _cond(rng, cfg: SuiteConfig) -> float:
    return float(np.exp(rng.uniform(0.0, math.log(cfg.cond_max))))


def random_pd_ensemble(rng, cfg: SuiteConfig, n: int | None = None,
                       dim: int | None = None) -> Ensemble:
    d, k = _dims(rng, cfg)
    dim, n = dim or d, n or k
    mats = tuple(symcore.random_spd(rng, dim, _cond(rng, cfg)) for _ in range(n))
    return Ensemble(mats, _weights(rng, n), cfg.tol)


def _random_psd(rng, cfg: SuiteConfig, dim: int) -> np.ndarray:
    rank = int(rng.integers(0, dim + 1))
    return symcore.random_psd(rng, dim, rank, _cond(rng, cfg))


def random_psd_ensemble(rng, cfg: SuiteConfig) -> Ensemble:
    dim, n = _dims(rng, cfg)
    mats = tuple(_random_psd(rng, cfg, dim) for _ in range(n))
    return Ensemble(mats, _weights(rng, n), cfg.tol)


def random_prox_ensemble(rng, cfg: SuiteConfig, pd: bool = False,
                         mu: float | None = None) -> ProxEnsemble:
    dim, n = _dims(rng, cfg, n_min=1, dim_max=min(cfg.dim_max, PROX_DIM_MAX))
    funcs = []
    for _ in range(n):
        a = symcore.random_spd(rng, dim, _cond(rng, cfg)) if pd else _random_psd(rng, cfg, dim)
        funcs.append(LinQuad(a, rng.standard_normal(dim), float(rng.standard_normal()), cfg.tol))
    if mu is None:
        mu = cfg.mus[int(rng.integers(len(cfg.mus)))]
    return ProxEnsemble(tuple(funcs), _weights(rng, n), mu)


def random_tuple(rng, n_max: int = 6) -> np.ndarray:
    n = int(rng.integers(1, n_max + 1))
    return np.exp(rng.uniform(math.log(1e-3), math.log(1e3), size=n))


def _unit(rng, dim: int) -> np.ndarray:
    x = rng.standard_normal(dim)
    return x / np.linalg.norm(x)


def _min_eig(m) -> float:
    return float(symcore.eigendecompose(m).eigenvalues[0])


# -- per-instance checks ----------------------------------------------------

def check_sandwich(ens: Ensemble, mu: float) -> Trial:
    """H <= R_mu <= A in the Loewner order.

    The residual is minus the most negative eigenvalue of R - H and A - R
    (negative residuals are margins).
    """
    r = resolvent_average(ens, mu)
    h = harmonic_average(ens)
    a = arithmetic_average(ens)
    ok = symcore.loewner_cmp(r, h, ens.tol).geq and symcore.loewner_cmp(a, r, ens.tol).geq
    return Trial(ok, -min(_min_eig(r - h), _min_eig(a - r)))


def duality_bound(ens: Ensemble) -> float:
    return ens.tol.eps_eq * (1.0 + ens.max_condition())


def _rel_gap(lhs, rhs) -> float:
    return symcore.frob(lhs - rhs) / (1.0 + symcore.frob(lhs))


def check_self_duality(ens: Ensemble, mu: float) -> Trial:
    """[R_mu(A)]^-1 = R_{1/mu}(A^-1), relative Frobenius residual."""
    lhs = symcore.inverse(resolvent_average(ens, mu), ens.tol)
    rhs = resolvent_average(ens.inverted(), 1.0 / mu)
    res = _rel_gap(lhs, rhs)
    return Trial(res <= duality_bound(ens), res)


def check_dual_pair(ens: Ensemble) -> Trial:
    """[H(A)]^-1 = A(A^-1) and [A(A)]^-1 = H(A^-1)."""
    inv = ens.inverted()
    res = max(
        _rel_gap(symcore.inverse(harmonic_average(ens), ens.tol), arithmetic_average(inv)),
        _rel_gap(symcore.inverse(arithmetic_average(ens), ens.tol), harmonic_average(inv)),
    )
    return Trial(res <= duality_bound(ens), res)


def check_monotonicity(lower: Ensemble, bumps, mu: float, strict: bool = False) -> Trial:
    """R_mu(B + P) >= R_mu(B) for PSD bumps P; strictly if ``strict``."""
    upper = Ensemble(tuple(b + p for b, p in zip(lower.matrices, bumps)), lower.weights, lower.tol)
    ra, rb = resolvent_average(upper, mu), resolvent_average(lower, mu)
    order = symcore.loewner_cmp(ra, rb, lower.tol)
    ok = order is symcore.Loewner.STRICT_GREATER if strict else order.geq
    return Trial(ok, -_min_eig(ra - rb))


def _probe_slack(tol: Tolerances, *vals) -> float:
    return tol.eps_eq * (1.0 + max(abs(v) for v in vals))


def concavity_resolvent(ens_a: Ensemble, ens_b: Ensemble, mu: float, t: float, probes) -> Trial:
    """q_{R(tA+(1-t)B)}(x) >= t q_{R(A)}(x) + (1-t) q_{R(B)}(x) at each probe."""
    mix = Ensemble(tuple(t * a + (1 - t) * b for a, b in zip(ens_a.matrices, ens_b.matrices)),
                   ens_a.weights, ens_a.tol)
    rm, ra, rb = (resolvent_average(e, mu) for e in (mix, ens_a, ens_b))
    worst, ok = -math.inf, True
    for x in probes:
        lhs = 0.5 * x @ rm @ x
        rhs = t * 0.5 * x @ ra @ x + (1 - t) * 0.5 * x @ rb @ x
        ok &= lhs >= rhs - _probe_slack(ens_a.tol, lhs, rhs)
        worst = max(worst, rhs - lhs)
    return Trial(bool(ok), worst)


def convexity_inverse(a, b, t: float, probes, tol: Tolerances = DEFAULT_TOL) -> Trial:
    """q_{(tA+(1-t)B)^-1}(x) <= t q_{A^-1}(x) + (1-t) q_{B^-1}(x)."""
    mix_inv = symcore.inverse(symcore.symmetrize(t * a + (1 - t) * b), tol)
    a_inv, b_inv = symcore.inverse(a, tol), symcore.inverse(b, tol)
    worst, ok = -math.inf, True
    for x in probes:
        lhs = 0.5 * x @ mix_inv @ x
        rhs = t * 0.5 * x @ a_inv @ x + (1 - t) * 0.5 * x @ b_inv @ x
        ok &= lhs <= rhs + _probe_slack(tol, lhs, rhs)
        worst = max(worst, lhs - rhs)
    return Trial(bool(ok), worst)


def _parallel_sum(x) -> float:
    return float(1.0 / np.sum(1.0 / np.asarray(x)))


def concavity_harmonic_scalar(x, y, tol: Tolerances = DEFAULT_TOL) -> Trial:
    """Midpoint concavity of x -> 1/(1/x_1 + ... + 1/x_n)."""
    lhs = _parallel_sum(0.5 * (np.asarray(x) + np.asarray(y)))
    rhs = 0.5 * _parallel_sum(x) + 0.5 * _parallel_sum(y)
    return Trial(lhs >= rhs - _probe_slack(tol, lhs, rhs), rhs - lhs)


def check_concavity(ens_a: Ensemble, ens_b: Ensemble, mu: float, t: float, probes) -> Trial:
    """Resolvent-average concavity, inverse convexity and scalar harmonic concavity."""
    sub = [concavity_resolvent(ens_a, ens_b, mu, t, probes)]
    for a, b in zip(ens_a.matrices, ens_b.matrices):
        sub.append(convexity_inverse(a, b, t, probes, ens_a.tol))
    if ens_a.dim == 1:
        sub.append(concavity_harmonic_scalar([m[0, 0] for m in ens_a.matrices],
                                             [m[0, 0] for m in ens_b.matrices], ens_a.tol))
    return Trial(all(s.passed for s in sub), max(s.residual for s in sub))


# -- registry ---------------------------------------------------------------

TrialFn = Callable[[np.random.Generator, SuiteConfig], Trial]
REGISTRY: dict[str, tuple[str, TrialFn]] = {}


def register(name: str, description: str):
    def deco(fn: TrialFn) -> TrialFn:
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name!r}")
        REGISTRY[name] = (description, fn)
        return fn
    return deco


def _worst(trials) -> Trial:
    trials = list(trials)
    return Trial(all(t.passed for t in trials), max(t.residual for t in trials))


@register("resolvent-identity", "resolvent of mu*R equals the weighted average of resolvents")
def _t_resolvent_identity(rng, cfg):
    ens = random_psd_ensemble(rng, cfg)
    out = []
    for mu in cfg.mus:
        res = check_resolvent_identity(ens, mu)
        out.append(Trial(res <= identity_bound(ens, mu), res))
    return _worst(out)


@register("yosida-identity", "Yosida regularization of R equals the average of regularizations")
def _t_yosida_identity(rng, cfg):
    ens = random_psd_ensemble(rng, cfg)
    out = []
    for mu in cfg.mus:
        res = check_yosida_identity(ens, mu)
        out.append(Trial(res <= identity_bound(ens, mu, yosida_form=True), res))
    return _worst(out)


@register("inverse-pairs", "(A1, A1^-1, ..., Am, Am^-1) with uniform weights averages to Id at mu=1")
def _t_inverse_pairs(rng, cfg):
    dim = int(rng.integers(1, cfg.dim_max + 1))
    m = int(rng.integers(1, max(cfg.n_max // 2, 1) + 1))
    mats = []
    for _ in range(m):
        a = symcore.random_spd(rng, dim, _cond(rng, cfg))
        mats += [a, symcore.inverse(a, cfg.tol)]
    ens = Ensemble.uniform(mats, cfg.tol)
    res = symcore.frob(resolvent_average(ens, 1.0) - np.eye(dim))
    return Trial(res <= cfg.tol.eps_eq * (1 + ens.n), res)


@register("constant-ensemble", "averaging copies of one PSD matrix returns it")
def _t_constant(rng, cfg):
    dim, n = _dims(rng, cfg, n_min=1)
    a = _random_psd(rng, cfg, dim)
    ens = Ensemble((a,) * n, _weights(rng, n), cfg.tol)
    res = max(_rel_gap(a, resolvent_average(ens, mu)) for mu in cfg.mus)
    return Trial(res <= cfg.tol.eps_eq, res)


def _bumps(rng, cfg, ens: Ensemble, strict: bool):
    bumps = [_random_psd(rng, cfg, ens.dim) for _ in range(ens.n)]
    if strict:
        j = int(rng.integers(ens.n))
        bumps[j] = symcore.random_spd(rng, ens.dim, _cond(rng, cfg))
    return bumps


@register("monotone-weak", "A_i >= B_i for all i implies R(A) >= R(B)")
def _t_monotone_weak(rng, cfg):
    lower = random_psd_ensemble(rng, cfg)
    bumps = _bumps(rng, cfg, lower, strict=False)
    return _worst(check_monotonicity(lower, bumps, mu) for mu in cfg.mus)


@register("monotone-strict", "additionally A_j > B_j for some j implies R(A) > R(B)")
def _t_monotone_strict(rng, cfg):
    lower = random_psd_ensemble(rng, cfg)
    bumps = _bumps(rng, cfg, lower, strict=True)
    return _worst(check_monotonicity(lower, bumps, mu, strict=True) for mu in cfg.mus)


@register("psd-closure", "the resolvent average of PSD matrices is PSD")
def _t_psd_closure(rng, cfg):
    ens = random_psd_ensemble(rng, cfg)
    out = []
    for mu in cfg.mus:
        r = resolvent_average(ens, mu)
        out.append(Trial(symcore.is_psd(r, cfg.tol), -_min_eig(r)))
    return _worst(out)


@register("pd-closure", "one PD member makes the resolvent average PD")
def _t_pd_closure(rng, cfg):
    dim, n = _dims(rng, cfg, n_min=1)
    mats = [_random_psd(rng, cfg, dim) for _ in range(n)]
    mats[int(rng.integers(n))] = symcore.random_spd(rng, dim, _cond(rng, cfg))
    ens = Ensemble(tuple(mats), _weights(rng, n), cfg.tol)
    out = []
    for mu in cfg.mus:
        r = resolvent_average(ens, mu)
        out.append(Trial(symcore.is_pd(r, cfg.tol), -_min_eig(r)))
    return _worst(out)


@register("recursion", "peeling off the last matrix reproduces the direct average")
def _t_recursion(rng, cfg):
    dim = int(rng.integers(1, cfg.dim_max + 1))
    n = int(rng.integers(3, max(8, cfg.n_max) + 1))
    ens = Ensemble(tuple(_random_psd(rng, cfg, dim) for _ in range(n)), _weights(rng, n), cfg.tol)
    out = []
    for mu in cfg.mus:
        direct = resolvent_average(ens, mu)
        res = _rel_gap(direct, resolvent_average_recursive(ens, mu))
        out.append(Trial(res <= cfg.tol.eps_eq, res))
    return _worst(out)


@register("prox-fenchel-duality", "conjugate of the proximal average is the 1/mu average of conjugates")
def _t_prox_fenchel(rng, cfg):
    pens = random_prox_ensemble(rng, cfg, pd=True)
    res = fenchel_selfdual_check(pens)
    scale = 1.0 + pens.ensemble().max_condition()
    return Trial(res <= DUALITY_RTOL * scale, res)


@register("prox-sandwich", "(sum l f*)* <= proximal average <= sum l f pointwise")
def _t_prox_sandwich(rng, cfg):
    pens = random_prox_ensemble(rng, cfg, pd=True)
    out = []
    for _ in range(PROBES):
        x = rng.standard_normal(pens.dim)
        lo, mid, hi = function_sandwich(pens, x)
        slack = FUNCTION_SLACK * (1.0 + max(abs(lo), abs(mid), abs(hi)))
        out.append(Trial(lo <= mid + slack and mid <= hi + slack, max(lo - mid, mid - hi)))
    return _worst(out)


@register("prox-mu-monotone", "the proximal average decreases pointwise in mu")
def _t_prox_mu_monotone(rng, cfg):
    pens = random_prox_ensemble(rng, cfg)
    mu_lo, mu_hi = np.sort(np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=2)))
    if mu_lo == mu_hi:
        mu_hi = mu_lo * 2
    x = rng.standard_normal(pens.dim)
    ok = mu_monotonicity_check(pens, mu_lo, mu_hi, x, FUNCTION_SLACK)
    gap = prox_average_closed(pens.with_mu(mu_hi))(x) - prox_average_closed(pens.with_mu(mu_lo))(x)
    return Trial(ok, gap)


@register("prox-closed-form", "closed-form proximal average matches both KKT oracles")
def _t_prox_closed_form(rng, cfg):
    pens = random_prox_ensemble(rng, cfg)
    closed = prox_average_closed(pens)
    worst, ok = 0.0, True
    for _ in range(PROBES):
        x = rng.standard_normal(pens.dim)
        val = closed(x)
        for rep in (REP1, REP3):
            gap = abs(prox_average_oracle(pens, x, rep) - val) / (1.0 + abs(val))
            ok &= gap <= ORACLE_RTOL
            worst = max(worst, gap)
    return Trial(bool(ok), worst)


@register("prox-gradient", "gradient of the closed form matches finite differences of the oracle")
def _t_prox_gradient(rng, cfg):
    pens = random_prox_ensemble(rng, cfg)
    closed = prox_average_closed(pens)
    x = rng.standard_normal(pens.dim)
    g = closed.gradient(x)
    res = float(np.linalg.norm(oracle_gradient(pens, x, FD_STEP) - g)) / (1.0 + float(np.linalg.norm(g)))
    return Trial(res <= GRADIENT_RTOL, res)


@register("sandwich", "harmonic <= resolvent <= arithmetic average")
def _t_sandwich(rng, cfg):
    ens = random_pd_ensemble(rng, cfg)
    return _worst(check_sandwich(ens, mu) for mu in cfg.mus)


def _limit_sweep(rng, cfg):
    ens = random_pd_ensemble(rng, cfg)
    return ens, mu_sweep(ens, *LIMIT_GRID)


@register("limit-arithmetic", "R_mu -> arithmetic average as mu -> 0, monotonically")
def _t_limit_arith(rng, cfg):
    ens, rep = _limit_sweep(rng, cfg)
    norm = symcore.frob(arithmetic_average(ens))
    slack = cfg.tol.eps_psd * (1.0 + norm)
    monotone = bool(np.all(rep.dist_to_arith[:-1] <= rep.dist_to_arith[1:] + slack))
    rel = rep.dist_to_arith[0] / norm
    return Trial(monotone and rel <= LIMIT_RTOL, float(rel))


@register("limit-harmonic", "R_mu -> harmonic average as mu -> infinity, monotonically")
def _t_limit_harm(rng, cfg):
    ens, rep = _limit_sweep(rng, cfg)
    norm = symcore.frob(harmonic_average(ens))
    slack = cfg.tol.eps_psd * (1.0 + norm)
    monotone = bool(np.all(rep.dist_to_harm[1:] <= rep.dist_to_harm[:-1] + slack))
    rel = rep.dist_to_harm[-1] / norm
    return Trial(monotone and rel <= LIMIT_RTOL, float(rel))


@register("mu-chain", "R_mu is Loewner-decreasing along a log grid of mu")
def _t_mu_chain(rng, cfg):
    ens, rep = _limit_sweep(rng, cfg)
    return Trial(rep.all_ok, float(np.sum(~rep.loewner_chain_ok)))


def _concavity_instance(rng, cfg):
    ens_a = random_pd_ensemble(rng, cfg)
    ens_b = random_pd_ensemble(rng, cfg, n=ens_a.n, dim=ens_a.dim)
    ens_b = Ensemble(ens_b.matrices, ens_a.weights, cfg.tol)
    t = float(rng.uniform(0.0, 1.0))
    probes = [_unit(rng, ens_a.dim) for _ in range(PROBES)]
    return ens_a, ens_b, t, probes


@register("concavity-resolvent", "A -> R_mu(A) is matrix concave")
def _t_concave_resolvent(rng, cfg):
    ens_a, ens_b, t, probes = _concavity_instance(rng, cfg)
    return _worst(concavity_resolvent(ens_a, ens_b, mu, t, probes) for mu in cfg.mus)


@register("convexity-inverse", "X -> X^-1 is matrix convex")
def _t_convex_inverse(rng, cfg):
    ens_a, ens_b, t, probes = _concavity_instance(rng, cfg)
    return _worst(convexity_inverse(a, b, t, probes, cfg.tol)
                  for a, b in zip(ens_a.matrices, ens_b.matrices))


@register("concavity-harmonic-scalar", "x -> 1/(1/x_1 + ... + 1/x_n) is concave")
def _t_concave_harmonic(rng, cfg):
    x = random_tuple(rng)
    y = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), size=x.size))
    return concavity_harmonic_scalar(x, y, cfg.tol)


@register("self-duality", "[R_mu(A)]^-1 = R_{1/mu}(A^-1)")
def _t_self_duality(rng, cfg):
    ens = random_pd_ensemble(rng, cfg)
    return _worst(check_self_duality(ens, mu) for mu in cfg.mus)


@register("dual-pair", "harmonic and arithmetic averages are dual under inversion")
def _t_dual_pair(rng, cfg):
    return check_dual_pair(random_pd_ensemble(rng, cfg))


# -- scalar means -------------------------------------------------------------

def _close(a: float, b: float, tol: Tolerances) -> Trial:
    gap = abs(a - b) / (1.0 + max(abs(a), abs(b)))
    return Trial(gap <= tol.eps_eq, gap)


def _mean_ordering_checks(mean, rng, cfg, strict_gap: bool) -> Trial:
    x = random_tuple(rng)
    w = _weights(rng, x.size)
    h, m, a = scalar_harmonic_mean(x, w), mean(x, w), scalar_arithmetic_mean(x, w)
    slack = cfg.tol.eps_eq * (1.0 + a)
    out = [Trial(h <= m + slack and m <= a + slack, max(h - m, m - a))]
    if strict_gap and np.ptp(x) > STRICT_SPREAD:
        out.append(Trial(a - m > 0, m - a))
    c = np.full(x.size, x[0])
    out.append(_close(mean(c, w), scalar_arithmetic_mean(c, w), cfg.tol))
    return _worst(out)


def _self_dual(mean, rng, cfg) -> Trial:
    x = random_tuple(rng)
    w = _weights(rng, x.size)
    return _close(1.0 / mean(x, w), mean(1.0 / x, w), cfg.tol)


def _constant(mean, rng, cfg) -> Trial:
    n = int(rng.integers(1, 7))
    v = float(np.exp(rng.uniform(math.log(1e-3), math.log(1e3))))
    return _close(mean(np.full(n, v), _weights(rng, n)), v, cfg.tol)


def _inverse_pairs(mean, rng, cfg) -> Trial:
    base = random_tuple(rng, n_max=4)
    x = np.ravel(np.column_stack([base, 1.0 / base]))
    return _close(mean(x, None), 1.0, cfg.tol)


def _concave(mean, rng, cfg) -> Trial:
    x = random_tuple(rng)
    y = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), size=x.size))
    w = _weights(rng, x.size)
    lhs = mean(0.5 * (x + y), w)
    rhs = 0.5 * mean(x, w) + 0.5 * mean(y, w)
    return Trial(lhs >= rhs - _probe_slack(cfg.tol, lhs, rhs), rhs - lhs)


def _monotone(mean, rng, cfg) -> Trial:
    x = random_tuple(rng)
    y = x * rng.uniform(0.0, 1.0, size=x.size)
    w = _weights(rng, x.size)
    mx, my = mean(x, w), mean(y, w)
    return Trial(mx >= my - _probe_slack(cfg.tol, mx, my), my - mx)


for _tag, _mean in (("R", scalar_resolvent_mean), ("G", weighted_geometric_mean)):
    register(f"scalar-{_tag}-hm-am", f"harmonic <= {_tag} <= arithmetic, equality only for constant tuples")(
        lambda rng, cfg, m=_mean: _mean_ordering_checks(m, rng, cfg, strict_gap=True))
    register(f"scalar-{_tag}-self-dual", f"1/{_tag}(x) = {_tag}(1/x)")(
        lambda rng, cfg, m=_mean: _self_dual(m, rng, cfg))
    register(f"scalar-{_tag}-constant", f"{_tag} of a constant tuple is that constant")(
        lambda rng, cfg, m=_mean: _constant(m, rng, cfg))
    register(f"scalar-{_tag}-inverse-pairs", f"{_tag}(x1, 1/x1, ..., xn, 1/xn) = 1 with uniform weights")(
        lambda rng, cfg, m=_mean: _inverse_pairs(m, rng, cfg))
    register(f"scalar-{_tag}-concave", f"{_tag} is midpoint concave")(
        lambda rng, cfg, m=_mean: _concave(m, rng, cfg))
    register(f"scalar-{_tag}-monotone", f"{_tag} is monotone in each entry")(
        lambda rng, cfg, m=_mean: _monotone(m, rng, cfg))


@register("mean-witnesses", "neither R nor G dominates: witnesses of both orderings exist")
def _t_witnesses(rng, cfg):
    # inversion swaps the two orderings because both means are self-dual
    ok = (compare_R_vs_G([0.0, 1.0], None, cfg.tol) is MeanOrder.R_GREATER
          and compare_R_vs_G([9.0, 1.0], None, cfg.tol) is MeanOrder.G_GREATER)
    x = random_tuple(rng)
    w = _weights(rng, x.size)
    fwd, back = compare_R_vs_G(x, w, cfg.tol), compare_R_vs_G(1.0 / x, w, cfg.tol)
    swapped = {MeanOrder.R_GREATER: MeanOrder.G_GREATER,
               MeanOrder.G_GREATER: MeanOrder.R_GREATER,
               MeanOrder.EQUAL: MeanOrder.EQUAL}[fwd]
    passed = ok and back is swapped
    return Trial(passed, 0.0 if passed else 1.0)


@register("scalar-matrix-bridge", "scalar resolvent mean equals the 1x1 resolvent average")
def _t_bridge(rng, cfg):
    x = np.concatenate([random_tuple(rng), [0.0] * int(rng.integers(0, 2))])
    w = _weights(rng, x.size)
    ens = Ensemble(tuple(np.array([[v]]) for v in x), w, cfg.tol)
    return _close(scalar_resolvent_mean(x, w), float(resolvent_average(ens, 1.0)[0, 0]), cfg.tol)


REQUIRED_CHECKS = (
    "resolvent-identity", "yosida-identity", "inverse-pairs", "constant-ensemble",
    "monotone-weak", "monotone-strict", "psd-closure", "pd-closure", "recursion",
    "prox-fenchel-duality", "prox-sandwich", "prox-mu-monotone", "prox-closed-form",
    "prox-gradient", "sandwich", "limit-arithmetic", "limit-harmonic", "mu-chain",
    "concavity-resolvent", "convexity-inverse", "concavity-harmonic-scalar",
    "self-duality", "dual-pair",
    *(f"scalar-{t}-{p}" for t in "RG" for p in
      ("hm-am", "self-dual", "constant", "inverse-pairs", "concave", "monotone")),
    "mean-witnesses", "scalar-matrix-bridge",
)


def missing_checks() -> list[str]:
    return [name for name in REQUIRED_CHECKS if name not in REGISTRY]


# -- driver -----------------------------------------------------------------

def run_check(name: str, cfg: SuiteConfig) -> CheckRecord:
    if name not in REGISTRY:
        raise InvalidParameter(f"unknown check {name!r}")
    fn = REGISTRY[name][1]
    rec = CheckRecord(name)
    for offset in range(cfg.trials):
        rec.trials += 1
        try:
            trial = fn(trial_rng(cfg.seed, name, offset), cfg)
        except Exception as exc:  # a crashing trial is a failure, not an abort
            rec.failures += 1
            rec.errors += 1
            if rec.first_error is None:
                rec.first_error = f"offset {offset}: {type(exc).__name__}: {exc}"
            continue
        if not trial.passed:
            rec.failures += 1
        res = float(trial.residual)
        if rec.worst_residual is None or res > rec.worst_residual:
            rec.worst_residual = res
            rec.worst_seed_offset = offset
    return rec


def replay(name: str, seed: int, offset: int, cfg: SuiteConfig | None = None) -> Trial:
    """Re-run a single trial of a check."""
    cfg = cfg or SuiteConfig(seed=seed)
    return REGISTRY[name][1](trial_rng(seed, name, offset), cfg)


def run_suite(cfg: SuiteConfig, names=None) -> CheckReport:
    """Run the named checks (all registered ones by default) in registry order."""
    names = list(REGISTRY) if names is None else list(names)
    for name in names:
        if name not in REGISTRY:
            raise InvalidParameter(f"unknown check {name!r}")
    report = CheckReport(cfg.seed, cfg.trials, asdict(cfg.tol))
    report.records = [run_check(name, cfg) for name in names]
    return report
