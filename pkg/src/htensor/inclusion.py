"""Gershgorin and Brauer-type eigenvalue inclusion regions.

All three regions are built from off-diagonal absolute row sums of the
tensor. Regions are kept as predicates: membership is decided by evaluating
the defining inequality, never by a polygonal approximation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Union as _TUnion

import numpy as np

from .errors import DimensionTooSmallWarning, NotHermitian
from .tensor import ComplexTensor, is_hermitian, symmetrize


@dataclass(frozen=True)
class ExactRowData:
    """Row-sum data with moduli held as exact rationals.

    Moduli are rounded once by ``abs``; every later sum, difference and
    product is exact, so predicates built on this data cannot disagree
    with each other through rounding.
    """

    n: int
    diag: tuple            # complex diagonal entries
    r: tuple               # Fraction
    r_prime: tuple
    r_hat: tuple
    pivot: tuple           # pivot[i][j] = |a[i, j..j, j..j]|, 0 on the diagonal


def exact_row_data(A: ComplexTensor) -> ExactRowData:
    n = A.n
    diag = [0j] * n
    r_prime = [Fraction(0)] * n
    r_hat = [Fraction(0)] * n
    pivot = [[Fraction(0)] * n for _ in range(n)]
    for key, value in A.entries.items():
        i, rest = key[0], key[1:]
        if all(k == i for k in rest):
            diag[i] = value
            continue
        mod = Fraction(abs(value))
        if i in rest:
            r_hat[i] += mod
        else:
            r_prime[i] += mod
        if all(k == rest[0] for k in rest):
            pivot[i][rest[0]] = mod
    r = [r_prime[i] + r_hat[i] for i in range(n)]
    return ExactRowData(n, tuple(diag), tuple(r), tuple(r_prime), tuple(r_hat),
                        tuple(tuple(row) for row in pivot))


@dataclass(frozen=True, eq=False)
class RowSums:
    """Absolute off-diagonal row sums.

    r_minus_j[i, j] = r[i] - |a[i, j..j, j..j]| (and r[i] on the diagonal).
    r_prime sums over tuples that avoid index i entirely; r_hat over the rest.
    """

    r: np.ndarray
    r_minus_j: np.ndarray
    r_prime: np.ndarray
    r_hat: np.ndarray
    diag: np.ndarray
    pivot: np.ndarray


def row_sums(A: ComplexTensor) -> RowSums:
    data = exact_row_data(A)
    n = data.n
    r = np.array([float(v) for v in data.r])
    pivot = np.array([[float(v) for v in row] for row in data.pivot])
    r_minus_j = np.array([[float(data.r[i] - data.pivot[i][j]) for j in range(n)] for i in range(n)])
    return RowSums(
        r=r,
        r_minus_j=r_minus_j,
        r_prime=np.array([float(v) for v in data.r_prime]),
        r_hat=np.array([float(v) for v in data.r_hat]),
        diag=np.array(data.diag, dtype=complex),
        pivot=pivot,
    )


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def contains(self, z, tol: float = 0.0):
        return np.abs(np.asarray(z) - self.center) <= self.radius + tol

    def bounding_box(self) -> tuple[float, float, float, float]:
        c, r = self.center, self.radius
        return c.real - r, c.real + r, c.imag - r, c.imag + r

    def to_dict(self) -> dict:
        return {"kind": "disk", "center": self.center, "radius": self.radius}


@dataclass(frozen=True)
class ShiftedOval:
    """{z : (|z - a| - shift) * |z - b| <= bound}."""

    a: complex
    b: complex
    shift: float
    bound: float

    def contains(self, z, tol: float = 0.0):
        z = np.asarray(z)
        da = np.abs(z - self.a)
        db = np.abs(z - self.b)
        inside = (da - self.shift) * db <= self.bound
        if tol > 0:
            # inflate by tol: some point within distance tol satisfies the inequality
            inside = inside | ((np.maximum(da - tol, 0) - self.shift) * np.maximum(db - tol, 0) <= self.bound)
        return inside

    def outer_radius(self) -> float:
        """Radius about ``a`` outside of which no point belongs to the oval."""
        c = abs(self.a - self.b)
        s = self.shift
        return 0.5 * ((s + c) + math.sqrt((s - c) ** 2 + 4 * self.bound))

    def bounding_box(self) -> tuple[float, float, float, float]:
        R = self.outer_radius()
        return self.a.real - R, self.a.real + R, self.a.imag - R, self.a.imag + R

    def to_dict(self) -> dict:
        return {"kind": "oval", "a": self.a, "b": self.b, "shift": self.shift, "bound": self.bound}


@dataclass(frozen=True)
class RegionUnion:
    parts: tuple

    def contains(self, z, tol: float = 0.0):
        z = np.asarray(z)
        out = np.zeros(z.shape, dtype=bool)
        for part in self.parts:
            out |= part.contains(z, tol)
        return out

    def bounding_box(self) -> tuple[float, float, float, float]:
        boxes = np.array([p.bounding_box() for p in self.parts])
        return (float(boxes[:, 0].min()), float(boxes[:, 1].max()),
                float(boxes[:, 2].min()), float(boxes[:, 3].max()))

    def to_dict(self) -> dict:
        return {"kind": "union", "parts": [p.to_dict() for p in self.parts]}


Region = _TUnion[Disk, ShiftedOval, RegionUnion]


def contains(region, z, tol: float = 0.0) -> bool:
    """Membership of a single point; inequalities are non-strict."""
    return bool(region.contains(complex(z), tol))


def region_from_dict(data: dict):
    kind = data["kind"]
    if kind == "disk":
        return Disk(complex(data["center"]), float(data["radius"]))
    if kind == "oval":
        return ShiftedOval(complex(data["a"]), complex(data["b"]), float(data["shift"]), float(data["bound"]))
    if kind == "union":
        return RegionUnion(tuple(region_from_dict(p) for p in data["parts"]))
    raise ValueError(f"unknown region kind {kind!r}")


def gershgorin_set(A: ComplexTensor) -> RegionUnion:
    rs = row_sums(A)
    return RegionUnion(tuple(Disk(complex(rs.diag[i]), float(rs.r[i])) for i in range(A.n)))


def _pairs(n: int):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _fallback(A: ComplexTensor, name: str):
    warnings.warn(f"{name} needs dimension >= 2; returning the Gershgorin set", DimensionTooSmallWarning,
                  stacklevel=3)
    return gershgorin_set(A)


def llk_set(A: ComplexTensor) -> RegionUnion:
    """Union over ordered pairs i != j of (|z - d_i| - r_i^j) |z - d_j| <= |a_{ij..j}| r_j."""
    if A.n < 2:
        return _fallback(A, "llk_set")
    rs = row_sums(A)
    parts = tuple(
        ShiftedOval(complex(rs.diag[i]), complex(rs.diag[j]), float(rs.r_minus_j[i, j]),
                    float(rs.pivot[i, j] * rs.r[j]))
        for i, j in _pairs(A.n)
    )
    return RegionUnion(parts)


def ll_set(A: ComplexTensor) -> RegionUnion:
    """Union over ordered pairs i != j of (|z - d_i| - r_hat_i) |z - d_j| <= r'_i r_j."""
    if A.n < 2:
        return _fallback(A, "ll_set")
    rs = row_sums(A)
    parts = tuple(
        ShiftedOval(complex(rs.diag[i]), complex(rs.diag[j]), float(rs.r_hat[i]),
                    float(rs.r_prime[i] * rs.r[j]))
        for i, j in _pairs(A.n)
    )
    return RegionUnion(parts)


def eigen_lower_bound(A: ComplexTensor) -> float:
    """min_i (d_i - r_i) of the symmetrization: no eigenvalue of it lies below this."""
    if not is_hermitian(A):
        raise NotHermitian("eigen_lower_bound needs a Hermitian tensor")
    data = exact_row_data(symmetrize(A))
    return float(min(Fraction(d.real) - r for d, r in zip(data.diag, data.r)))


def sample_grid(box: tuple[float, float, float, float], size: int, inflate: float = 0.1) -> np.ndarray:
    """``size`` x ``size`` complex grid over ``box`` widened by ``inflate`` of its extent."""
    x0, x1, y0, y1 = box
    wx, wy = x1 - x0, y1 - y0
    pad_x = inflate * wx if wx > 0 else 1.0
    pad_y = inflate * wy if wy > 0 else 1.0
    xs = np.linspace(x0 - pad_x, x1 + pad_x, size)
    ys = np.linspace(y0 - pad_y, y1 + pad_y, size)
    return xs[None, :] + 1j * ys[:, None]
