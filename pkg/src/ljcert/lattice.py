"""Two-dimensional lattices: half-fundamental domain, quadratic forms, reduction.

A unit-density lattice is identified with a point ``(x, y)`` of the
half-fundamental domain

    D = {y > 0, 0 <= x <= 1/2, x^2 + y^2 >= 1}

through the basis ``u = (1/sqrt(y), 0)``, ``v = (x/sqrt(y), sqrt(y))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT3_2 = math.sqrt(3.0) / 2.0

# relative tolerance on squared norms in Gauss-Lagrange reduction
_REDUCTION_RTOL = 1e-12
_DOMAIN_ATOL = 1e-12


class DegenerateBasisError(ValueError):
    """Raised when a basis has zero (or numerically zero) determinant."""


def in_domain(x: float, y: float) -> bool:
    """True iff ``(x, y)`` lies in the closed half-fundamental domain."""
    return y > 0 and 0.0 <= x <= 0.5 and x * x + y * y >= 1.0


@dataclass(frozen=True)
class DomainPoint:
    """Shape parameter ``(x, y)`` of a unit-density lattice.

    ``reduced=True`` asserts membership of the half-fundamental domain (up to
    1e-12). Unreduced points (any ``y > 0``) are still genuine lattices and are
    what the certifier evaluates on the full rectangle.
    """

    x: float
    y: float
    reduced: bool = False

    def __post_init__(self):
        if not (self.y > 0 and math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"invalid lattice parameter ({self.x}, {self.y})")
        if self.reduced:
            ok = (
                -_DOMAIN_ATOL <= self.x <= 0.5 + _DOMAIN_ATOL
                and self.x * self.x + self.y * self.y >= 1.0 - _DOMAIN_ATOL
            )
            if not ok:
                raise ValueError(f"({self.x}, {self.y}) is not in the half-fundamental domain")


SQUARE = DomainPoint(0.0, 1.0, reduced=True)
TRIANGULAR = DomainPoint(0.5, SQRT3_2, reduced=True)


@dataclass(frozen=True)
class Basis:
    u: tuple[float, float]
    v: tuple[float, float]

    @property
    def det(self) -> float:
        return self.u[0] * self.v[1] - self.u[1] * self.v[0]

    @property
    def covolume(self) -> float:
        return abs(self.det)

    def point(self, m, n):
        """Cartesian coordinates of ``m u + n v`` (broadcasts over arrays)."""
        m = np.asarray(m, dtype=float)
        n = np.asarray(n, dtype=float)
        return m * self.u[0] + n * self.v[0], m * self.u[1] + n * self.v[1]


@dataclass(frozen=True)
class ScaledLattice:
    """The lattice ``sqrt(V) L`` for ``L`` the unit-density lattice of ``shape``."""

    shape: DomainPoint
    covolume: float

    def __post_init__(self):
        if not self.covolume > 0:
            raise ValueError("covolume must be positive")

    def quadratic_form(self, m, n):
        return self.covolume * quadratic_form(self.shape, m, n)

    def basis(self) -> Basis:
        b = basis_from_domain_point(self.shape)
        r = math.sqrt(self.covolume)
        return Basis((r * b.u[0], r * b.u[1]), (r * b.v[0], r * b.v[1]))


def quadratic_form(p: DomainPoint, m, n):
    """``Q_L(m, n) = (m + x n)^2 / y + y n^2``; broadcasts over integer arrays."""
    return (m + p.x * n) ** 2 / p.y + p.y * n**2


def form_sandwich(x, y, m, n):
    """Return ``(lower, middle, upper)`` of the two-sided bound

        (m^2 + n^2)/2 <= (m + x n)^2 + y^2 n^2 <= 3/2 m^2 + (3/4 + y^2) n^2

    which holds for every ``(x, y)`` in the half-fundamental domain.
    """
    lower = (m * m + n * n) / 2.0
    middle = (m + x * n) ** 2 + (y * n) ** 2
    upper = 1.5 * m * m + (0.75 + y * y) * n * n
    return lower, middle, upper


def basis_from_domain_point(p: DomainPoint) -> Basis:
    sy = math.sqrt(p.y)
    return Basis((1.0 / sy, 0.0), (p.x / sy, sy))


def reduce_to_domain(b: Basis) -> tuple[DomainPoint, float]:
    """Gauss-Lagrange reduction of an arbitrary basis.

    Returns the unique reduced shape and the covolume ``V`` such that the input
    lattice is a rotation/reflection of ``sqrt(V)`` times the lattice of the
    shape. The unimodular transform is tracked in integers and the final
    vectors are recomputed from the input basis, so rounding does not drift.
    """
    B = np.array([b.u, b.v], dtype=float)
    det = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    scale = float(np.dot(B[0], B[0]) + np.dot(B[1], B[1]))
    if not math.isfinite(det) or abs(det) <= 1e-14 * scale:
        raise DegenerateBasisError(f"degenerate basis u={b.u}, v={b.v}")

    U = [[1, 0], [0, 1]]  # rows: integer coordinates of current u, v

    def vec(row):
        return row[0] * B[0] + row[1] * B[1]

    for _ in range(10_000):
        u, v = vec(U[0]), vec(U[1])
        uu, vv = float(np.dot(u, u)), float(np.dot(v, v))
        if vv < uu * (1 - _REDUCTION_RTOL):
            U = [U[1], U[0]]
            continue
        mu = round(float(np.dot(u, v)) / uu)
        if mu == 0:
            break
        U[1] = [U[1][0] - mu * U[0][0], U[1][1] - mu * U[0][1]]
    else:  # pragma: no cover - unreachable for nondegenerate input
        raise RuntimeError("Gauss-Lagrange reduction did not terminate")

    u, v = vec(U[0]), vec(U[1])
    uu = float(np.dot(u, u))
    V = abs(det)
    x = abs(float(np.dot(u, v)) / uu)
    y = V / uu
    # snap ties produced by rounding onto the boundary
    x = min(x, 0.5)
    if x * x + y * y < 1.0 and x * x + y * y > 1.0 - 1e-12:
        y = math.sqrt(1.0 - x * x)
    return DomainPoint(x, y, reduced=True), V
