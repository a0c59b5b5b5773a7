"""Eigenpairs of Hermitian tensors.

An eigenpair (lam, x) solves, for every i,

    sum a[i, i_2..i_m, j_1..j_m] x_{i_2}..x_{i_m} conj(x_{j_1})..conj(x_{j_m})
        = lam * conj(x_i) * |x_i|**(2m - 2)

For a block-symmetric Hermitian tensor these are exactly the critical points
of the quotient f(x) / sum |x_i|**(2m), so the smallest and largest
eigenvalues are its extreme values. Extremes are found by multi-start
quasi-Newton minimisation of that quotient; full enumeration runs damped
Gauss-Newton on the real system with the phase fixed.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .certificate import Certificate, Rule, Verdict
from .errors import ConvergenceFailure, NotHermitian, NotMatrix, ZeroVector
from .tensor import ComplexTensor, apply_contraction, eval_form, is_hermitian, symmetrize

log = logging.getLogger(__name__)

NONZERO_REL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 200
    newton_tol: float = 1e-10
    max_iter: int = 100
    dedup_tol: float = 1e-6
    rng_seed: int = 0

    def __post_init__(self):
        if self.starts < 1 or self.max_iter < 1:
            raise ValueError("starts and max_iter must be positive")
        if not (self.newton_tol > 0 and self.dedup_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.dedup_tol < self.newton_tol:
            raise ValueError("dedup_tol must be >= newton_tol")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be nonnegative")

    @classmethod
    def from_env(cls, **overrides) -> "SolverConfig":
        """Config with ``rng_seed`` taken from ``HTENSOR_SEED`` when set."""
        seed = os.environ.get("HTENSOR_SEED")
        if seed is not None and "rng_seed" not in overrides:
            overrides["rng_seed"] = int(seed)
        return cls(**overrides)


@dataclass(frozen=True, eq=False)
class EigenPair:
    """Eigenvalue with an eigenvector scaled to sum |x_i|**(2m) == 1.

    The first nonzero component of ``vector`` is real and positive.
    """

    eigenvalue: float
    vector: np.ndarray
    residual: float

    def __repr__(self) -> str:
        return f"EigenPair(eigenvalue={self.eigenvalue!r}, residual={self.residual:.2e})"


def normalize(x, m: int) -> np.ndarray:
    """Scale to unit (2m)-norm and rotate the first nonzero component to the positive axis."""
    x = np.asarray(x, dtype=complex)
    mags = np.abs(x)
    if not np.any(mags > 0):
        raise ZeroVector("eigenvector must be nonzero")
    x = x / np.sum(mags ** (2 * m)) ** (1.0 / (2 * m))
    mags = np.abs(x)
    first = int(np.argmax(mags > NONZERO_REL * mags.max()))
    return x * (np.conj(x[first]) / mags[first])


def _rhs(x: np.ndarray, m: int) -> np.ndarray:
    return np.conj(x) * np.abs(x) ** (2 * m - 2)


def residual(A: ComplexTensor, lam: complex, x) -> float:
    """Max-norm defect of the eigen-equations at ``x`` scaled to unit (2m)-norm."""
    x = np.asarray(x, dtype=complex)
    if not np.any(x != 0):
        raise ZeroVector("residual needs a nonzero vector")
    x = x / np.sum(np.abs(x) ** (2 * A.m)) ** (1.0 / (2 * A.m))
    return float(np.max(np.abs(apply_contraction(A, x) - lam * _rhs(x, A.m))))


def rayleigh(A: ComplexTensor, x) -> float:
    x = np.asarray(x, dtype=complex)
    return eval_form(A, x).real / float(np.sum(np.abs(x) ** (2 * A.m)))


def _require_hermitian(A: ComplexTensor) -> None:
    if not is_hermitian(A):
        raise NotHermitian("operation requires a Hermitian tensor")


class _EigenSystem:
    """Real Gauss-Newton system for one tensor."""

    def __init__(self, A: ComplexTensor):
        self.A = A
        self.m, self.n = A.m, A.n
        self.idx = A.indices
        self.val = A.values

    def jacobians(self, x: np.ndarray):
        """Wirtinger derivatives of the contraction: d/dx and d/dconj(x)."""
        m, n = self.m, self.n
        jx = np.zeros((n, n), dtype=complex)
        jxb = np.zeros((n, n), dtype=complex)
        if len(self.val) == 0:
            return jx, jxb
        cols = self.idx[:, 1:]
        factors = np.concatenate([x[cols[:, : m - 1]], np.conj(x[cols[:, m - 1:]])], axis=1)
        rows = self.idx[:, 0]
        for q in range(2 * m - 1):
            others = np.delete(factors, q, axis=1)
            part = self.val * np.prod(others, axis=1)
            target = jx if q < m - 1 else jxb
            np.add.at(target, (rows, cols[:, q]), part)
        return jx, jxb

    def equations(self, x: np.ndarray, lam: float) -> np.ndarray:
        f = apply_contraction(self.A, x) - lam * _rhs(x, self.m)
        h = np.sum(np.abs(x) ** (2 * self.m)) - 1.0
        return np.concatenate([f.real, f.imag, [h]])

    def real_jacobian(self, x: np.ndarray, lam: float) -> np.ndarray:
        m, n = self.m, self.n
        jx, jxb = self.jacobians(x)
        xc = np.conj(x)
        if m > 1:
            dg_dx = (m - 1) * xc ** m * x ** (m - 2)
        else:
            dg_dx = np.zeros(n, dtype=complex)
        dg_dxb = m * (xc * x) ** (m - 1)
        dfx = jx - lam * np.diag(dg_dx)
        dfxb = jxb - lam * np.diag(dg_dxb)
        dfu = dfx + dfxb
        dfw = 1j * (dfx - dfxb)
        dfl = -_rhs(x, m)
        mag = 2 * m * np.abs(x) ** (2 * m - 2)
        top = np.hstack([dfu.real, dfw.real, dfl.real[:, None]])
        mid = np.hstack([dfu.imag, dfw.imag, dfl.imag[:, None]])
        bottom = np.concatenate([mag * x.real, mag * x.imag, [0.0]])
        return np.vstack([top, mid, bottom])

    def newton(self, x0: np.ndarray, lam0: float, max_iter: int, tol: float):
        """Damped Gauss-Newton with Im(x_k) pinned to zero, k the largest component."""
        n = self.n
        x = normalize(x0, self.m)
        k = int(np.argmax(np.abs(x)))
        x = x * np.conj(x[k]) / abs(x[k])
        keep = [c for c in range(2 * n + 1) if c != n + k]
        lam = float(lam0)
        res = self.equations(x, lam)
        norm = np.linalg.norm(res)
        for _ in range(max_iter):
            if np.max(np.abs(res)) <= 1e-3 * tol:
                break
            jac = self.real_jacobian(x, lam)[:, keep]
            step = np.linalg.lstsq(jac, -res, rcond=None)[0]
            full = np.zeros(2 * n + 1)
            full[keep] = step
            t = 1.0
            while True:
                xt = x + t * (full[:n] + 1j * full[n: 2 * n])
                lt = lam + t * full[-1]
                rt = self.equations(xt, lt)
                nt = np.linalg.norm(rt)
                if nt < norm or t < 1e-4:
                    break
                t *= 0.5
            if not np.all(np.isfinite(rt)):
                return None
            x, lam, res = xt, lt, rt
            if abs(norm - nt) <= 1e-15 * max(1.0, norm) and nt > tol:
                norm = nt
                break
            norm = nt
        if not np.any(np.abs(x) > 0):
            return None
        x = normalize(x, self.m)
        lam = rayleigh(self.A, x)
        return EigenPair(lam, x, residual(self.A, lam, x))


def _target(A: ComplexTensor, use_symmetrization: bool) -> ComplexTensor:
    _require_hermitian(A)
    return symmetrize(A) if use_symmetrization else A


def _random_vectors(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))


def _quotient(S: ComplexTensor):
    m, n = S.m, S.n

    def fun(z: np.ndarray):
        x = z[:n] + 1j * z[n:]
        mags = np.abs(x)
        h = float(np.sum(mags ** (2 * m)))
        if h == 0.0:
            return 0.0, np.zeros_like(z)
        f = eval_form(S, x).real
        grad_f = 2 * m * np.conj(apply_contraction(S, x))
        grad_h = 2 * m * mags ** (2 * m - 2) * x
        g = (grad_f * h - f * grad_h) / h ** 2
        return f / h, np.concatenate([g.real, g.imag])

    return fun


def _optimise(S: ComplexTensor, cfg: SolverConfig, sign: float) -> list[tuple[float, np.ndarray]]:
    n = S.n
    fun = _quotient(S)

    def signed(z):
        v, g = fun(z)
        return sign * v, sign * g

    rng = np.random.default_rng(cfg.rng_seed)
    starts = list(np.eye(n, dtype=complex)) + list(_random_vectors(rng, cfg.starts, n))
    found = []
    for x0 in starts:
        z0 = np.concatenate([x0.real, x0.imag])
        out = minimize(signed, z0, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 50 * n * S.m})
        x = out.x[:n] + 1j * out.x[n:]
        if np.any(np.abs(x) > 0):
            found.append((sign * out.fun, x))
    found.sort(key=lambda item: sign * item[0])
    return found


def _polish(S: ComplexTensor, candidates, cfg: SolverConfig, sign: float) -> EigenPair:
    system = _EigenSystem(S)
    best = candidates[0][0]
    scale = max(1.0, S.max_abs())
    for value, x in candidates:
        if sign * (value - best) > 1e-6 * scale:
            break
        pair = system.newton(x, value, cfg.max_iter, cfg.newton_tol)
        if pair is None or pair.residual > cfg.newton_tol * scale:
            continue
        if abs(pair.eigenvalue - value) <= 1e-6 * scale:
            return pair
    raise ConvergenceFailure("no start converged to an eigenpair at the extreme value")


def _extreme(A: ComplexTensor, cfg: SolverConfig | None, sign: float) -> EigenPair:
    cfg = cfg or SolverConfig()
    S = _target(A, True)
    if S.nnz == 0:
        return EigenPair(0.0, normalize(np.eye(S.n)[0], S.m), 0.0)
    return _polish(S, _optimise(S, cfg, sign), cfg, sign)


def smallest_eigenpair(A: ComplexTensor, cfg: SolverConfig | None = None) -> EigenPair:
    """Eigenpair of the symmetrization of ``A`` with the smallest eigenvalue."""
    return _extreme(A, cfg, 1.0)


def extremal_eigenvalues(A: ComplexTensor, cfg: SolverConfig | None = None) -> tuple[EigenPair, EigenPair]:
    """Smallest and largest eigenpairs of the symmetrization of ``A``."""
    return _extreme(A, cfg, 1.0), _extreme(A, cfg, -1.0)


def eigenvalue_count_bound(m: int, n: int) -> int:
    return 2 * n * (2 * m - 1) ** (2 * n - 1)


def _gershgorin_interval(S: ComplexTensor) -> tuple[float, float]:
    diag = np.zeros(S.n)
    radius = np.zeros(S.n)
    for key, value in S.entries.items():
        i = key[0]
        if all(k == i for k in key):
            diag[i] = value.real
        else:
            radius[i] += abs(value)
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def _dedup(pairs: list[EigenPair], tol: float) -> list[EigenPair]:
    pairs = sorted(pairs, key=lambda p: (p.eigenvalue, p.residual))
    clusters: list[list[EigenPair]] = []
    for pair in pairs:
        if clusters and pair.eigenvalue - clusters[-1][-1].eigenvalue <= tol:
            clusters[-1].append(pair)
        else:
            clusters.append([pair])
    out = []
    for cluster in clusters:
        out.append(min(cluster, key=lambda p: (p.residual, tuple(np.round(p.vector.view(float), 12)))))
    return out


def enumerate_eigenvalues(A: ComplexTensor, cfg: SolverConfig | None = None,
                          use_symmetrization: bool = True) -> list[EigenPair]:
    """Best-effort list of distinct eigenvalues, ascending.

    Starts are random vectors paired with either their quotient value or a
    random value from the real Gershgorin interval, plus the coordinate
    vectors. Roots are grouped by eigenvalue only, so each entry carries a
    single representative eigenvector.
    """
    cfg = cfg or SolverConfig()
    S = _target(A, use_symmetrization)
    n, m = S.n, S.m
    if S.nnz == 0:
        return [EigenPair(0.0, normalize(np.eye(n)[0], m), 0.0)]
    system = _EigenSystem(S)
    rng = np.random.default_rng(cfg.rng_seed)
    lo, hi = _gershgorin_interval(S)
    scale = max(1.0, S.max_abs())
    accepted = []
    starts = [(e.astype(complex), None) for e in np.eye(n)]
    xs = _random_vectors(rng, cfg.starts, n)
    lams = rng.uniform(lo, hi, cfg.starts) if hi > lo else np.full(cfg.starts, lo)
    for s in range(cfg.starts):
        starts.append((xs[s], None if s % 2 == 0 else float(lams[s])))
    for x0, lam0 in starts:
        if lam0 is None:
            lam0 = rayleigh(S, x0)
        pair = system.newton(x0, lam0, cfg.max_iter, cfg.newton_tol)
        if pair is not None and pair.residual <= cfg.newton_tol * scale:
            accepted.append(pair)
    result = _dedup(accepted, cfg.dedup_tol)
    bound = eigenvalue_count_bound(m, n)
    if len(result) > bound:
        log.warning("found %d distinct eigenvalues, above the bound %d; dedup_tol may be too small",
                    len(result), bound)
    return result


def matrix_eigen(A: ComplexTensor) -> list[EigenPair]:
    """Eigenpairs of an order-2 Hermitian tensor via a dense Hermitian eigensolver.

    With m = 1 the equations read M conj(x) = lam conj(x) for M[i, j] = a[i, j],
    so the returned vectors are the conjugates of the eigenvectors of M.
    """
    if A.m != 1:
        raise NotMatrix("matrix_eigen needs a tensor of order 2")
    _require_hermitian(A)
    M = A.to_dense()
    w, U = np.linalg.eigh(M)
    out = []
    for lam, u in zip(w, U.T):
        x = normalize(np.conj(u), 1)
        out.append(EigenPair(float(lam), x, residual(A, float(lam), x)))
    return out


def certify_pd_by_eigen(A: ComplexTensor, cfg: SolverConfig | None = None,
                        pd_tol: float | None = None) -> Certificate:
    """Decide definiteness from the smallest eigenvalue of the symmetrization.

    ``pd_tol`` defaults to 1e-8 times the largest entry modulus (at least 1e-8).
    """
    low = smallest_eigenpair(A, cfg)
    S = symmetrize(A)
    tol = pd_tol if pd_tol is not None else 1e-8 * max(1.0, S.max_abs())
    lam = low.eigenvalue
    witness = {"lambda_min": lam, "vector": low.vector, "residual": low.residual}
    if lam > tol:
        return Certificate(Verdict.POSITIVE_DEFINITE, Rule.EXTREMAL_EIGENVALUE, witness, lam)
    if lam >= -tol:
        return Certificate(Verdict.POSITIVE_SEMIDEFINITE, Rule.EXTREMAL_EIGENVALUE, witness, lam)
    witness["form_value"] = eval_form(A, low.vector).real
    return Certificate(Verdict.INDEFINITE_OR_NEGATIVE, Rule.EXTREMAL_EIGENVALUE, witness, lam)

