"""Sparse 2m-th order complex tensors and their conjugate forms.

A tensor of order 2m and dimension n stores entries a[i_1..i_m, j_1..j_m]
where the first m indices pair with x and the last m with conj(x).
Keys are 0-based tuples internally; :func:`build` and the JSON format use
1-based indices.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, DimensionMismatch, DuplicateEntry, IndexOutOfRange

ZERO_TOL = 1e-12

Key = tuple


class ComplexTensor:
    """Immutable sparse tensor of order ``2 * m`` and dimension ``n``."""

    __slots__ = ("_m", "_n", "_entries", "_idx", "_val")

    def __init__(self, m: int, n: int, entries: Mapping[Key, complex]):
        if m < 1 or n < 1:
            raise ValueError("m and n must be positive")
        self._m = int(m)
        self._n = int(n)
        clean = {}
        for key, value in entries.items():
            key = tuple(int(k) for k in key)
            if len(key) != 2 * self._m:
                raise ArityMismatch(f"index tuple {key} has {len(key)} components, expected {2 * m}")
            if any(k < 0 or k >= self._n for k in key):
                raise IndexOutOfRange(f"index tuple {key} outside [0, {n})")
            value = complex(value)
            if value != 0:
                clean[key] = value
        self._entries = MappingProxyType(dict(sorted(clean.items())))
        if clean:
            self._idx = np.array(list(self._entries.keys()), dtype=np.intp)
            self._val = np.array(list(self._entries.values()), dtype=complex)
        else:
            self._idx = np.zeros((0, 2 * self._m), dtype=np.intp)
            self._val = np.zeros(0, dtype=complex)
        self._idx.flags.writeable = False
        self._val.flags.writeable = False

    @property
    def m(self) -> int:
        """Half the order."""
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def order(self) -> int:
        return 2 * self._m

    @property
    def entries(self) -> Mapping[Key, complex]:
        """Read-only map from 0-based index tuple to nonzero value."""
        return self._entries

    @property
    def nnz(self) -> int:
        return len(self._entries)

    @property
    def indices(self) -> np.ndarray:
        """(nnz, 2m) array of 0-based index tuples, row-aligned with :attr:`values`."""
        return self._idx

    @property
    def values(self) -> np.ndarray:
        return self._val

    def __getitem__(self, key) -> complex:
        return self._entries.get(tuple(key), 0j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexTensor):
            return NotImplemented
        return self._m == other._m and self._n == other._n and dict(self._entries) == dict(other._entries)

    def __hash__(self):
        return hash((self._m, self._n, tuple(self._entries.items())))

    def __repr__(self) -> str:
        return f"ComplexTensor(m={self._m}, n={self._n}, nnz={self.nnz})"

    def __neg__(self) -> "ComplexTensor":
        return self.scale(-1.0)

    def __add__(self, other: "ComplexTensor") -> "ComplexTensor":
        if not isinstance(other, ComplexTensor):
            return NotImplemented
        if (self._m, self._n) != (other._m, other._n):
            raise DimensionMismatch("tensors have different shapes")
        out = dict(self._entries)
        for key, value in other._entries.items():
            out[key] = out.get(key, 0j) + value
        return ComplexTensor(self._m, self._n, out)

    def __sub__(self, other: "ComplexTensor") -> "ComplexTensor":
        return self + (-other)

    def scale(self, factor: complex) -> "ComplexTensor":
        return ComplexTensor(self._m, self._n, {k: factor * v for k, v in self._entries.items()})

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._val))) if self.nnz else 0.0

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self._n,) * (2 * self._m), dtype=complex)
        for key, value in self._entries.items():
            out[key] = value
        return out

    @classmethod
    def from_dense(cls, array) -> "ComplexTensor":
        """Build from a dense array of shape ``(n,) * 2m`` (0-based)."""
        array = np.asarray(array, dtype=complex)
        if array.ndim == 0 or array.ndim % 2 or len(set(array.shape)) != 1:
            raise ArityMismatch(f"dense array shape {array.shape} is not (n,)*2m")
        nz = np.argwhere(array != 0)
        return cls(array.ndim // 2, array.shape[0], {tuple(k): array[tuple(k)] for k in nz})

    def submatrix_block(self, index_set: Sequence[int]) -> "ComplexTensor":
        """Sub-tensor whose indices all lie in ``index_set`` (0-based), reindexed from 0."""
        pos = {k: p for p, k in enumerate(index_set)}
        sub = {}
        for key, value in self._entries.items():
            if all(k in pos for k in key):
                sub[tuple(pos[k] for k in key)] = value
        return ComplexTensor(self._m, len(index_set), sub)


def build(m: int, n: int, entry_list: Iterable[tuple[Sequence[int], complex]]) -> ComplexTensor:
    """Build a tensor from ``(index_tuple, value)`` pairs with 1-based indices.

    Zero values are dropped. A tuple given twice raises :class:`DuplicateEntry`.
    """
    entries = {}
    for key, value in entry_list:
        key = tuple(int(k) for k in key)
        if len(key) != 2 * m:
            raise ArityMismatch(f"index tuple {key} has {len(key)} components, expected {2 * m}")
        if any(k < 1 or k > n for k in key):
            raise IndexOutOfRange(f"index tuple {key} outside [1, {n}]")
        key0 = tuple(k - 1 for k in key)
        if key0 in entries:
            raise DuplicateEntry(f"index tuple {key} given twice")
        entries[key0] = complex(value)
    return ComplexTensor(m, n, entries)


def identity(m: int, n: int) -> ComplexTensor:
    """Diagonal tensor with a[i..i, i..i] = 1."""
    return ComplexTensor(m, n, {(i,) * (2 * m): 1.0 for i in range(n)})


def conjugate_partner(key: Key, m: int) -> Key:
    return tuple(key[m:]) + tuple(key[:m])


def is_hermitian(A: ComplexTensor, tol: float = ZERO_TOL) -> bool:
    """True iff conj(a[I, J]) == a[J, I] for every index pair, within ``tol``."""
    m = A.m
    for key, value in A.entries.items():
        partner = A[conjugate_partner(key, m)]
        if abs(value.conjugate() - partner) > tol:
            return False
    return True


def _block_permutations(key: Key, m: int) -> set:
    left, right = key[:m], key[m:]
    return {p + q for p in set(itertools.permutations(left)) for q in set(itertools.permutations(right))}


def is_cps(A: ComplexTensor, tol: float = ZERO_TOL) -> bool:
    """Hermitian and invariant under independent permutations of the two index blocks."""
    if not is_hermitian(A, tol):
        return False
    m = A.m
    for key, value in A.entries.items():
        for other in _block_permutations(key, m):
            if abs(A[other] - value) > tol:
                return False
    return True


def _orbit_key(key: Key, m: int) -> Key:
    return tuple(sorted(key[:m])) + tuple(sorted(key[m:]))


def _orbit_size(key: Key, m: int) -> int:
    size = 1
    for block in (key[:m], key[m:]):
        count = math.factorial(m)
        for mult in _counts(block):
            count //= math.factorial(mult)
        size *= count
    return size


def _counts(block) -> list:
    seen = defaultdict(int)
    for k in block:
        seen[k] += 1
    return list(seen.values())


def symmetrize(A: ComplexTensor) -> ComplexTensor:
    """Average over independent permutations of the i-block and the j-block.

    Every entry of the result is the mean of the input over its orbit, so a
    tensor that is already block-symmetric comes back unchanged.
    """
    m = A.m
    if m == 1:
        return A
    orbits = defaultdict(list)
    for key, value in A.entries.items():
        orbits[_orbit_key(key, m)].append(value)
    out = {}
    for okey, members in orbits.items():
        size = _orbit_size(okey, m)
        if len(members) == size and all(v == members[0] for v in members):
            mean = members[0]
        else:
            mean = complex(math.fsum(v.real for v in members) / size,
                           math.fsum(v.imag for v in members) / size)
        if mean == 0:
            continue
        for member in _block_permutations(okey, m):
            out[member] = mean
    return ComplexTensor(m, A.n, out)


def _as_vector(A: ComplexTensor, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (A.n,):
        raise DimensionMismatch(f"vector of shape {x.shape} does not match dimension {A.n}")
    return x


def _monomials(A: ComplexTensor, x: np.ndarray, skip_first: bool) -> np.ndarray:
    m = A.m
    idx = A.indices
    start = 1 if skip_first else 0
    prod = np.prod(x[idx[:, start:m]], axis=1) * np.prod(np.conj(x[idx[:, m:]]), axis=1)
    return A.values * prod


def eval_form(A: ComplexTensor, x) -> complex:
    """f(A)(x) = sum a[I, J] x_I conj(x)_J over stored entries."""
    x = _as_vector(A, x)
    if A.nnz == 0:
        return 0j
    return complex(np.sum(_monomials(A, x, skip_first=False)))


def apply_contraction(A: ComplexTensor, x) -> np.ndarray:
    """Contract every index except the first: the left side of the eigen-equations."""
    x = _as_vector(A, x)
    out = np.zeros(A.n, dtype=complex)
    if A.nnz:
        terms = _monomials(A, x, skip_first=True)
        np.add.at(out, A.indices[:, 0], terms)
    return out
