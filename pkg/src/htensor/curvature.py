"""Holomorphic sectional curvature as a Hermitian form.

Curvature coefficients are given on a frame as ``R[i, k, j, l] =
R(e_i, conj e_k, e_j, conj e_l)``. They become the 4th order tensor with
a[i, j, k, l] = R[i, k, j, l] (first two indices paired with v, last two
with conj v), whose form is R(v, conj v, v, conj v).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certificate import Certificate
from .certify import block_criterion, certify, check_predicate
from .errors import NoThresholdFound, NotHermitianAfterAssembly, ShapeMismatch, SymmetryViolation, ZeroVector
from .solver import SolverConfig, smallest_eigenpair
from .tensor import ComplexTensor, eval_form, is_hermitian, symmetrize

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CurvatureData:
    R: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.R, dtype=complex)
        g = np.asarray(self.g, dtype=complex)
        n = g.shape[0]
        if g.shape != (n, n) or R.shape != (n,) * 4:
            raise ShapeMismatch(f"R shape {R.shape} and g shape {g.shape} do not agree")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.g.shape[0]

    def check(self, tol: float = SYMMETRY_TOL) -> None:
        """Raise :class:`SymmetryViolation` unless conj(R[i,k,j,l]) == R[k,i,l,j] and g is Hermitian PD."""
        scale = max(1.0, float(np.max(np.abs(self.R), initial=0.0)))
        if np.max(np.abs(np.conj(self.R) - self.R.transpose(1, 0, 3, 2)), initial=0.0) > tol * scale:
            raise SymmetryViolation("curvature coefficients violate conj(R[i,k,j,l]) = R[k,i,l,j]")
        if np.max(np.abs(self.g - self.g.conj().T), initial=0.0) > tol * max(1.0, float(np.max(np.abs(self.g)))):
            raise SymmetryViolation("metric is not Hermitian")
        if np.linalg.eigvalsh(self.g).min() <= 0:
            raise SymmetryViolation("metric is not positive definite")

    def is_kahler_like(self, tol: float = SYMMETRY_TOL) -> bool:
        R = self.R
        return bool(np.allclose(R, R.transpose(2, 1, 0, 3), atol=tol, rtol=0)
                    and np.allclose(R, R.transpose(0, 3, 2, 1), atol=tol, rtol=0))


def constant_curvature(n: int, c: float = 1.0) -> CurvatureData:
    """R[i,k,j,l] = c (d_ik d_jl + d_il d_jk) with the flat metric; H == 2c."""
    eye = np.eye(n)
    R = c * (np.einsum("ik,jl->ikjl", eye, eye) + np.einsum("il,jk->ikjl", eye, eye))
    return CurvatureData(R, np.eye(n))


def curvature_to_tensor(data: CurvatureData) -> ComplexTensor:
    data.check()
    return ComplexTensor.from_dense(data.R.transpose(0, 2, 1, 3))


def hsc(data: CurvatureData, v) -> float:
    """R(v, conj v, v, conj v) / |v|_g^4."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (data.n,):
        raise ShapeMismatch(f"vector length {v.shape} does not match dimension {data.n}")
    if not np.any(v != 0):
        raise ZeroVector("holomorphic sectional curvature needs a nonzero vector")
    norm2 = np.real(v @ data.g @ np.conj(v))
    return eval_form(curvature_to_tensor(data), v).real / norm2 ** 2


def check_hsc_positive(data: CurvatureData, cfg: SolverConfig | None = None) -> Certificate:
    return certify(curvature_to_tensor(data), cfg)


def cheung_lemma_check(data: CurvatureData, s: int, K1: float, K2: float) -> Certificate:
    """Block criterion on the curvature tensor split at frame index ``s``."""
    return block_criterion(curvature_to_tensor(data), s, K1, K2)


@dataclass(frozen=True, eq=False)
class AHZComponents:
    """Curvature blocks of a projectivised bundle, indices in curvature order.

    ``g4[i, j, k, l]`` is g_{i jbar, k lbar}; ``h2`` is r x r; ``hv2`` and ``hv4``
    are the base derivative blocks; ``hv3[b, i, j, k]`` is h_{v bbar, i jbar k};
    ``hab2[a, b, i, j]`` is h_{a bbar, i jbar}. Missing derivative blocks are zero.
    """

    g4: np.ndarray
    h2: np.ndarray
    hv2: np.ndarray | None = None
    hv4: np.ndarray | None = None
    hv3: np.ndarray | None = None
    hab2: np.ndarray | None = None
    n: int = field(init=False)
    r: int = field(init=False)

    def __post_init__(self):
        g4 = np.asarray(self.g4, dtype=complex)
        h2 = np.asarray(self.h2, dtype=complex)
        n, r = g4.shape[0], h2.shape[0]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        expected = {
            "g4": (n, n, n, n), "h2": (r, r), "hv2": (n, n), "hv4": (n, n, n, n),
            "hv3": (r, n, n, n), "hab2": (r, r, n, n),
        }
        for name, shape in expected.items():
            value = getattr(self, name)
            value = np.zeros(shape, dtype=complex) if value is None else np.asarray(value, dtype=complex)
            if value.shape != shape:
                raise ShapeMismatch(f"{name} has shape {value.shape}, expected {shape}")
            object.__setattr__(self, name, value)

    def scaled_derivatives(self, factor: float) -> "AHZComponents":
        return AHZComponents(self.g4, self.h2, factor * self.hv2, factor * self.hv4,
                             factor * self.hv3, factor * self.hab2)


def _assemble(c: AHZComponents, lam: float, base_metric: np.ndarray, fiber: np.ndarray) -> ComplexTensor:
    n, r = c.n, c.r
    N = n + r
    G = np.zeros((N, N, N, N), dtype=complex)
    B, F = slice(0, n), slice(n, N)
    hv2 = c.hv2
    G[B, B, B, B] = (lam * base_metric + c.hv4
                     - np.einsum("ij,kl->ijkl", hv2, hv2) - np.einsum("il,kj->ijkl", hv2, hv2))
    # one fiber index, on a barred slot, and the conjugate entries
    one = c.hv3.transpose(1, 2, 3, 0)                    # [i, j, k, b]
    G[B, B, B, F] = one
    G[B, F, B, B] = one.transpose(0, 3, 2, 1)            # G[i, b, k, j]
    G[B, B, F, B] = np.conj(one).transpose(1, 0, 3, 2)   # G[j, i, b, k]
    G[F, B, B, B] = np.conj(one).transpose(3, 0, 1, 2)   # G[b, i, j, k]
    # one fiber index among the unbarred slots and one among the barred
    mixed = c.hab2 - np.einsum("ab,ij->abij", c.h2, hv2)  # [a, b, i, j]
    G[B, B, F, F] = mixed.transpose(2, 3, 0, 1)           # G[i, j, a, b]
    G[F, B, B, F] = mixed.transpose(0, 3, 2, 1)           # G[a, j, i, b]
    G[B, F, F, B] = mixed.transpose(2, 1, 0, 3)           # G[i, b, a, j]
    G[F, F, B, B] = mixed                                 # G[a, b, i, j]
    G[F, F, F, F] = fiber
    tensor = ComplexTensor.from_dense(G.transpose(0, 2, 1, 3))
    scale = max(1.0, tensor.max_abs())
    if not is_hermitian(tensor, SYMMETRY_TOL * scale):
        raise NotHermitianAfterAssembly("components do not have the Hermitian symmetries G needs")
    return tensor


def _fiber_product(h2: np.ndarray) -> np.ndarray:
    return np.einsum("ab,cd->abcd", h2, h2) + np.einsum("ad,cb->abcd", h2, h2)


def _identity4(k: int) -> np.ndarray:
    out = np.zeros((k,) * 4)
    for i in range(k):
        out[i, i, i, i] = 1.0
    return out


def ahz_assemble_G(c: AHZComponents, lam: float) -> ComplexTensor:
    """The (n + r)-dimensional 4th order tensor G(lam); base indices first."""
    return _assemble(c, lam, c.g4, -_fiber_product(c.h2))


def ahz_assemble_G_prime(c: AHZComponents, lam: float, a: float, b: float) -> ComplexTensor:
    """G with -g4 replaced by a * I_n and the fiber product replaced by b * I_r."""
    return _assemble(c, lam, -a * _identity4(c.n), -b * _identity4(c.r))


def ahz_bounds(c: AHZComponents, cfg: SolverConfig | None = None) -> tuple[float, float]:
    """Largest a, b with -g4 >= a I_n and the fiber product >= b I_r.

    Against the identity pattern these are the smallest eigenvalues of the
    symmetrized blocks, since f(I)(x) = sum |x_i|^4.
    """
    neg_g = -ComplexTensor.from_dense(c.g4.transpose(0, 2, 1, 3))
    fib = ComplexTensor.from_dense(_fiber_product(c.h2).transpose(0, 2, 1, 3))
    a = smallest_eigenpair(neg_g, cfg).eigenvalue
    b = smallest_eigenpair(fib, cfg).eigenvalue
    return a, b


def negated_g_prime_is_dd(c: AHZComponents, lam: float, a: float, b: float) -> bool:
    """Strict diagonal dominance of -S_{G'(lam)}."""
    neg = -symmetrize(ahz_assemble_G_prime(c, lam, a, b))
    return check_predicate(neg, "dd", strict=True).holds


def ahz_lambda_threshold(c: AHZComponents, a: float, b: float, rel_tol: float = 1e-6,
                         cap: float = 1e12) -> float:
    """Smallest lam >= 0 (to ``rel_tol``) making -S_{G'(lam)} strictly diagonally dominated.

    Doubling brackets the threshold, bisection narrows it; the returned value
    always passes the predicate.
    """
    if a <= 0 or b <= 0:
        raise NoThresholdFound("the bounds a and b must be positive")
    if negated_g_prime_is_dd(c, 0.0, a, b):
        return 0.0
    hi = 1.0
    while not negated_g_prime_is_dd(c, hi, a, b):
        hi *= 2.0
        if hi > cap:
            raise NoThresholdFound(f"-S_G' is not strictly diagonally dominated for lambda up to {cap:g}")
    lo = hi / 2.0 if hi > 1.0 else 0.0
    while hi - lo > max(rel_tol * hi, 1e-15):
        mid = 0.5 * (lo + hi)
        if negated_g_prime_is_dd(c, mid, a, b):
            hi = mid
        else:
            lo = mid
    return hi
