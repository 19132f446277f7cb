"""Dense symmetric matrices: spectra, definiteness and the Loewner order.

Symmetric matrices are plain read-only ``float64`` numpy arrays of shape
``(N, N)`` that are exactly symmetric. Everything here is a pure function.
"""

from __future__ import annotations

import contextlib
import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .errors import (
    AsymmetricInput,
    DimMismatch,
    InputError,
    InvalidParameter,
    NoConvergence,
    NonFinite,
    NotPositiveDefinite,
    NotPositiveSemidefinite,
)

SymMatrix = np.ndarray
SeedLike = Union[int, np.random.Generator, None]

JACOBI_MAX_SWEEPS = 30


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack used throughout the package.

    eps_spec bounds spectral reconstruction error, eps_psd is the half-width
    of the dead-band around zero for definiteness tests, and eps_eq bounds
    residuals of identities.
    """

    eps_spec: float = 1e-12
    eps_psd: float = 1e-10
    eps_eq: float = 1e-9

    def __post_init__(self):
        vals = (self.eps_spec, self.eps_psd, self.eps_eq)
        if not all(math.isfinite(v) and v > 0 for v in vals):
            raise InvalidParameter(f"tolerances must be finite and positive, got {vals}")
        if not self.eps_spec <= self.eps_psd <= self.eps_eq:
            raise InvalidParameter(
                f"need eps_spec <= eps_psd <= eps_eq, got {vals}"
            )


DEFAULT_TOL = Tolerances()


class Loewner(enum.Enum):
    EQUAL = "Equal"
    STRICT_LESS = "StrictLess"
    LESS_EQ = "LessEq"
    STRICT_GREATER = "StrictGreater"
    GREATER_EQ = "GreaterEq"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value

    @property
    def geq(self) -> bool:
        """True for the outcomes that certify X >= Y."""
        return self in (Loewner.EQUAL, Loewner.GREATER_EQ, Loewner.STRICT_GREATER)

    @property
    def leq(self) -> bool:
        return self in (Loewner.EQUAL, Loewner.LESS_EQ, Loewner.STRICT_LESS)


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


def _freeze(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def symmetrize(m) -> SymMatrix:
    """Return the exactly symmetric, read-only matrix (M + M^T)/2."""
    m = np.asarray(m, dtype=float)
    return _freeze(0.5 * (m + m.T))


def sym_from_rows(rows, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Validate a square array of numbers and return it as a symmetric matrix.

    Raises
    ------
    NonFinite
        if any entry is NaN or infinite.
    AsymmetricInput
        if ``max|M - M^T| > eps_spec * (1 + max|M|)``.
    """
    try:
        m = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix rows are not numeric: {exc}") from exc
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InputError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix contains NaN or Inf")
    scale = 1.0 + np.max(np.abs(m))
    asym = np.max(np.abs(m - m.T))
    if asym > tol.eps_spec * scale:
        raise AsymmetricInput(
            f"max |M - M^T| = {asym:.3g} exceeds {tol.eps_spec * scale:.3g}"
        )
    return symmetrize(m)


def frob(m) -> float:
    return float(np.linalg.norm(m))


def jacobi_eigh(m, eps: float = DEFAULT_TOL.eps_spec,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Rotations are applied in row-cyclic order (p, q), p < q. Iteration stops
    once the off-diagonal Frobenius norm is at most ``eps * ||M||_F``.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    target = eps * np.linalg.norm(a)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= target:
            break
        if sweep == max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3g})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(_freeze(w[order]), _freeze(v[:, order]))


_eig_method = "lapack"


@contextlib.contextmanager
def use_eigensolver(method: str):
    """Temporarily change the solver used by :func:`eigendecompose`."""
    global _eig_method
    if method not in ("lapack", "jacobi"):
        raise InvalidParameter(f"unknown eigensolver {method!r}")
    prev, _eig_method = _eig_method, method
    try:
        yield
    finally:
        _eig_method = prev


def eigendecompose(m: SymMatrix, method: str | None = None) -> Spectrum:
    """Eigenvalues in nondecreasing order with matching orthonormal eigenvectors.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    :func:`jacobi_eigh`. Both are deterministic for a fixed input. When
    ``method`` is None the solver selected by :func:`use_eigensolver` is used.
    """
    method = method or _eig_method
    if method == "lapack":
        w, q = np.linalg.eigh(np.asarray(m, dtype=float))
        return Spectrum(_freeze(w), _freeze(q))
    if method == "jacobi":
        return jacobi_eigh(m)
    raise InvalidParameter(f"unknown eigensolver {method!r}")


def spectral_map(m: SymMatrix, fn, spec: Spectrum | None = None) -> SymMatrix:
    """Apply a scalar function to the eigenvalues of ``m``."""
    w, q = spec if spec is not None else eigendecompose(m)
    return symmetrize((q * fn(w)) @ q.T)


def _psd_scale(m) -> float:
    return 1.0 + frob(m)


def is_psd(m: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    w = eigendecompose(m).eigenvalues
    return bool(w[0] >= -tol.eps_psd * _psd_scale(m))


def is_pd(m: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    w = eigendecompose(m).eigenvalues
    return bool(w[0] >= tol.eps_psd * _psd_scale(m))


def _check_dims(x, y):
    if np.shape(x) != np.shape(y):
        raise DimMismatch(f"shapes {np.shape(x)} and {np.shape(y)} differ")


def loewner_cmp(x: SymMatrix, y: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> Loewner:
    """Classify ``x - y`` in the Loewner order."""
    _check_dims(x, y)
    d = np.asarray(x) - np.asarray(y)
    if frob(d) <= tol.eps_psd * (1.0 + frob(x) + frob(y)):
        return Loewner.EQUAL
    w = eigendecompose(d).eigenvalues
    band = tol.eps_psd * _psd_scale(d)
    if w[0] >= band:
        return Loewner.STRICT_GREATER
    if w[0] >= -band:
        return Loewner.GREATER_EQ
    if w[-1] <= -band:
        return Loewner.STRICT_LESS
    if w[-1] <= band:
        return Loewner.LESS_EQ
    return Loewner.INCOMPARABLE


def condition_number(m: SymMatrix) -> float:
    w = np.abs(eigendecompose(m).eigenvalues)
    return float(w.max() / w.min()) if w.min() > 0 else math.inf


def inverse(m: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Inverse of a positive definite matrix by inverting its eigenvalues."""
    spec = eigendecompose(m)
    if spec.eigenvalues[0] < tol.eps_psd * _psd_scale(m):
        raise NotPositiveDefinite(
            f"smallest eigenvalue {spec.eigenvalues[0]:.3g} is not positive"
        )
    return spectral_map(m, np.reciprocal, spec)


def sqrt_psd(m: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Principal square root; eigenvalues inside the dead-band are clamped to 0."""
    spec = eigendecompose(m)
    if spec.eigenvalues[0] < -tol.eps_psd * _psd_scale(m):
        raise NotPositiveSemidefinite(
            f"smallest eigenvalue {spec.eigenvalues[0]:.3g} is negative"
        )
    return spectral_map(m, lambda w: np.sqrt(np.maximum(w, 0.0)), spec)


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal(seed: SeedLike, dim: int) -> np.ndarray:
    rng = _rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    # sign fix makes the draw Haar distributed
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def random_spd(seed: SeedLike, dim: int, cond_target: float = 100.0) -> SymMatrix:
    """Random SPD matrix Q diag(w) Q^T with w log-uniform on [c^-1/2, c^1/2]."""
    if dim < 1 or not cond_target >= 1:
        raise InvalidParameter(f"need dim >= 1 and cond_target >= 1, got {dim}, {cond_target}")
    rng = _rng(seed)
    q = random_orthogonal(rng, dim)
    half = 0.5 * math.log(cond_target)
    w = np.exp(rng.uniform(-half, half, size=dim))
    if cond_target == 1:
        return _freeze(np.eye(dim))
    return symmetrize((q * w) @ q.T)


def random_psd(seed: SeedLike, dim: int, rank: int, cond_target: float = 100.0) -> SymMatrix:
    """Random PSD matrix of the given rank; nonzero eigenvalues as in random_spd."""
    rng = _rng(seed)
    q = random_orthogonal(rng, dim)
    half = 0.5 * math.log(cond_target)
    w = np.exp(rng.uniform(-half, half, size=dim))
    w[rank:] = 0.0
    return symmetrize((q * w) @ q.T)


# -- text format ------------------------------------------------------------

def format_matrix(m) -> str:
    m = np.asarray(m, dtype=float)
    lines = [str(m.shape[0])]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Parse the text format: a line with N, then N rows of N numbers.

    Lines starting with ``#`` and blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InputError(f"first line must be an integer, got {lines[0]!r}") from exc
    if n < 1 or len(lines) != n + 1:
        raise InputError(f"expected {n} matrix rows, found {len(lines) - 1}")
    try:
        rows = [[float(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(f"bad number in matrix text: {exc}") from exc
    if any(len(r) != n for r in rows):
        raise InputError(f"every row must have {n} entries")
    return sym_from_rows(rows, tol)


def read_matrix(path, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    return parse_matrix(Path(path).read_text(), tol)


def write_matrix(path, m) -> None:
    Path(path).write_text(format_matrix(m))
