"""Small worked instances used by the docs, the data files and the tests."""

from __future__ import annotations

import numpy as np

from .curvature import AHZComponents, CurvatureData, constant_curvature
from .tensor import ComplexTensor, build


def indefinite_quartic() -> ComplexTensor:
    """Real positive on R^2 but f(i, 1) = -2."""
    return build(2, 2, [((1, 1, 1, 1), 1), ((2, 2, 2, 2), 1), ((1, 1, 2, 2), 2), ((2, 2, 1, 1), 2)])


def semidefinite_quartic() -> ComplexTensor:
    """CPS quartic whose eigenvalues are exactly 0, 1 and 2."""
    return build(2, 2, [((1, 1, 1, 1), 1), ((2, 2, 2, 2), 1), ((1, 1, 2, 2), 1j), ((2, 2, 1, 1), -1j)])


def _matrix(rows) -> ComplexTensor:
    return ComplexTensor.from_dense(np.array(rows, dtype=complex))


def tridiagonal_matrix() -> ComplexTensor:
    """Hermitian 3x3 matrix with eigenvalues 2 - sqrt 3, 2, 2 + sqrt 3."""
    return _matrix([[1, 1j, 0], [-1j, 2, 1], [0, 1, 3]])


def dominance_matrices() -> dict[str, ComplexTensor]:
    """Three PD matrices sharing off-diagonal moduli.

    ``A`` is strictly diagonally dominated, ``B`` is strictly LLK but not
    dominated, ``C`` is strictly LL but not LLK.
    """
    off = [[0, 1j, 0], [-1j, 0, 1], [0, 1, 0]]

    def with_diag(d):
        return _matrix(np.array(off) + np.diag(d))

    return {"A": with_diag([3, 3, 3]), "B": with_diag([3, 1.5, 3]), "C": with_diag([0.5, 5, 3])}


def weakly_coupled_quartic(K2: float = 4096.0, K: float = 1.0) -> ComplexTensor:
    """Two-dimensional quartic with a[1111] = 1, a[2222] = K2 and cross entries of modulus K."""
    entries = [((1, 1, 1, 1), 1.0), ((2, 2, 2, 2), K2)]
    for i in ((1, 2), (2, 1)):
        for j in ((1, 2), (2, 1)):
            entries.append((i + j, K))
    return build(2, 2, entries)


def sphere_curvature(n: int = 2) -> CurvatureData:
    return constant_curvature(n, 1.0)


def ahz_example() -> AHZComponents:
    """Base dimension 2, fiber rank 2, with small nonzero derivative blocks."""
    n, r = 2, 2
    eye_n, eye_r = np.eye(n), np.eye(r)
    g4 = -(np.einsum("ik,jl->ikjl", eye_n, eye_n) + np.einsum("il,jk->ikjl", eye_n, eye_n))
    hv2 = 0.1 * np.array([[1, 0.5j], [-0.5j, 1]])
    hv4 = 0.05 * (np.einsum("ij,kl->ijkl", eye_n, eye_n) + np.einsum("il,kj->ijkl", eye_n, eye_n))
    hab2 = 0.1 * np.einsum("ab,ij->abij", eye_r, eye_n)
    return AHZComponents(g4=g4, h2=eye_r, hv2=hv2, hv4=hv4, hab2=hab2)
