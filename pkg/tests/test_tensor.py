import cmath
import itertools

import numpy as np
import pytest

from htensor import samples
from htensor.errors import ArityMismatch, DimensionMismatch, DuplicateEntry, IndexOutOfRange
from htensor.tensor import (
    ComplexTensor,
    apply_contraction,
    build,
    eval_form,
    identity,
    is_cps,
    is_hermitian,
    symmetrize,
)
from randgen import random_hermitian


def brute_form(A, x):
    """Direct sum over every index tuple of the dense array."""
    dense = A.to_dense()
    m = A.m
    total = 0j
    for key in itertools.product(range(A.n), repeat=2 * m):
        term = dense[key]
        for k in key[:m]:
            term *= x[k]
        for k in key[m:]:
            term *= np.conj(x[k])
        total += term
    return total


def test_build_identity_matrix():
    A = build(1, 2, [((1, 1), 1), ((2, 2), 1)])
    assert A == identity(1, 2)
    assert np.array_equal(A.to_dense(), np.eye(2))


def test_build_quartic_example():
    A = samples.indefinite_quartic()
    assert (A.m, A.n, A.nnz) == (2, 2, 4)
    assert A[(0, 0, 1, 1)] == 2


def test_build_errors():
    with pytest.raises(DuplicateEntry):
        build(2, 2, [((1, 1, 1, 1), 1), ((1, 1, 1, 1), 2)])
    with pytest.raises(IndexOutOfRange):
        build(1, 2, [((1, 3), 1)])
    with pytest.raises(ArityMismatch):
        build(2, 2, [((1, 1, 1), 1)])


def test_hermitian_examples():
    assert is_hermitian(samples.indefinite_quartic())
    assert is_hermitian(samples.semidefinite_quartic())
    assert not is_hermitian(build(1, 2, [((1, 2), 1), ((2, 1), 2)]))


def test_cps_examples():
    assert is_cps(samples.semidefinite_quartic())
    assert is_cps(samples.tridiagonal_matrix())
    broken = build(2, 2, [((1, 2, 1, 1), 1), ((1, 1, 1, 2), 1)])
    assert is_hermitian(broken)
    assert not is_cps(broken)


def test_symmetrize_fixed_point_on_cps():
    A = samples.semidefinite_quartic()
    assert symmetrize(A) == A


def test_symmetrize_orbit_average():
    S = symmetrize(build(2, 2, [((1, 2, 1, 1), 4)]))
    assert S[(0, 1, 0, 0)] == pytest.approx(2)
    assert S[(1, 0, 0, 0)] == pytest.approx(2)
    assert S.nnz == 2


def test_symmetrize_zero():
    Z = ComplexTensor(2, 3, {})
    assert symmetrize(Z) == Z


def test_eval_form_examples():
    assert eval_form(samples.indefinite_quartic(), [1j, 1]) == -2
    A = samples.semidefinite_quartic()
    assert abs(eval_form(A, [cmath.exp(1j * cmath.pi / 4), 1])) < 1e-12
    assert eval_form(A, [0, 0]) == 0


def test_eval_form_matches_brute_force():
    rng = np.random.default_rng(3)
    for m, n in [(1, 3), (2, 2), (2, 3), (3, 2)]:
        A = random_hermitian(rng, m, n)
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        assert eval_form(A, x) == pytest.approx(brute_form(A, x), rel=1e-12, abs=1e-12)


def test_apply_contraction_examples():
    assert np.allclose(apply_contraction(identity(1, 2), [1, 1j]), [1, -1j])
    assert np.allclose(apply_contraction(samples.semidefinite_quartic(), [1, 0]), [1, 0])
    assert np.allclose(apply_contraction(samples.semidefinite_quartic(), [0, 0]), [0, 0])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        eval_form(identity(1, 2), [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        apply_contraction(identity(2, 2), [1])


def test_submatrix_block():
    A = samples.tridiagonal_matrix()
    B = A.submatrix_block([1, 2])
    assert np.array_equal(B.to_dense(), np.array([[2, 1], [1, 3]]))


def test_arithmetic():
    A = samples.indefinite_quartic()
    assert (A - A).nnz == 0
    assert (A + A) == A.scale(2)
    assert -(-A) == A
