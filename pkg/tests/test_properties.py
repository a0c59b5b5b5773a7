"""Property-based checks of the structural identities."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from htensor.certify import check_predicate
from htensor.inclusion import eigen_lower_bound, gershgorin_set, ll_set, llk_set
from htensor.tensor import (
    ComplexTensor,
    apply_contraction,
    eval_form,
    is_cps,
    is_hermitian,
    symmetrize,
)
from randgen import random_hermitian

shapes = st.sampled_from([(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)])
seeds = st.integers(0, 2 ** 32 - 1)


def vector(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


@settings(max_examples=60, deadline=None)
@given(shapes, seeds)
def test_hermitian_forms_are_real(shape, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, *shape)
    x = vector(rng, A.n)
    scale = sum(abs(v) for v in A.values) * np.max(np.abs(x)) ** (2 * A.m)
    assert abs(eval_form(A, x).imag) <= 1e-12 * max(1.0, scale)


@settings(max_examples=40, deadline=None)
@given(shapes, seeds)
def test_non_hermitian_forms_leave_the_real_line(shape, seed):
    rng = np.random.default_rng(seed)
    m, n = shape
    A = random_hermitian(rng, m, n)
    key = tuple(int(k) for k in rng.integers(0, n, 2 * m))
    entries = dict(A.entries)
    entries[key] = entries.get(key, 0) + complex(1.0, 0.5)
    B = ComplexTensor(m, n, entries)
    if is_hermitian(B):
        return
    assert max(abs(eval_form(B, vector(rng, n)).imag) for _ in range(20)) > 1e-9


@settings(max_examples=60, deadline=None)
@given(shapes, seeds)
def test_symmetrization_preserves_form_and_is_idempotent(shape, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, *shape)
    S = symmetrize(A)
    assert is_cps(S)
    assert symmetrize(S) == S
    x = vector(rng, A.n)
    assert abs(eval_form(S, x) - eval_form(A, x)) <= 1e-12 * max(1.0, abs(eval_form(A, x)))


@settings(max_examples=60, deadline=None)
@given(shapes, seeds)
def test_contraction_consistency(shape, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, *shape)
    x = vector(rng, A.n)
    total = np.sum(x * apply_contraction(A, x))
    assert abs(total - eval_form(A, x)) <= 1e-12 * max(1.0, abs(total))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), seeds)
def test_real_symmetric_matrices_same_definiteness(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, n))
    M = X + X.T
    A = ComplexTensor.from_dense(M.astype(complex))
    real_min = min(eval_form(A, v / np.linalg.norm(v)).real for v in rng.normal(size=(300, n)))
    complex_min = min(eval_form(A, z / np.linalg.norm(z)).real for z in
                      rng.normal(size=(300, n)) + 1j * rng.normal(size=(300, n)))
    lam = np.linalg.eigvalsh(M)[0]
    # both samples stay above the smallest eigenvalue; with a PD matrix both are positive
    assert real_min >= lam - 1e-9 and complex_min >= lam - 1e-9
    if lam > 0:
        assert real_min > 0 and complex_min > 0


@settings(max_examples=60, deadline=None)
@given(shapes, seeds, st.booleans())
def test_hierarchy(shape, seed, dyadic):
    rng = np.random.default_rng(seed)
    S = symmetrize(random_hermitian(rng, *shape, diag_shift=float(rng.uniform(0, 6)), dyadic=dyadic))
    for strict in (False, True):
        dd, llk, ll = (check_predicate(S, kind, strict).holds for kind in ("dd", "llk", "ll"))
        assert not dd or llk
        assert not llk or ll


@settings(max_examples=30, deadline=None)
@given(shapes, seeds)
def test_nesting_on_grid(shape, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, *shape)
    ger, llk, ll = gershgorin_set(A), llk_set(A), ll_set(A)
    x0, x1, y0, y1 = ger.bounding_box()
    Z = rng.uniform(x0, x1, 500) + 1j * rng.uniform(y0, y1, 500)
    in_ger, in_llk, in_ll = ger.contains(Z), llk.contains(Z), ll.contains(Z)
    assert not np.any(in_ll & ~in_llk)
    assert not np.any(in_llk & ~in_ger)


@settings(max_examples=40, deadline=None)
@given(shapes, seeds)
def test_lower_bound_below_form(shape, seed):
    rng = np.random.default_rng(seed)
    A = random_hermitian(rng, *shape)
    bound = eigen_lower_bound(A)
    for _ in range(20):
        x = vector(rng, A.n)
        norm = np.sum(np.abs(x) ** (2 * A.m))
        assert eval_form(A, x).real / norm >= bound - 1e-9
