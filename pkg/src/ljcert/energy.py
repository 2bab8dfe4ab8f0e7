"""Lennard-Jones type lattice energies ``E_f[L] = a zeta_L(alpha) - b zeta_L(beta)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import DomainPoint
from .zeta import (
    CertifiedValue,
    IndeterminateQuotient,  # noqa: F401  (re-exported for callers)
    bulk_log_weighted,
    epstein_certified,
    triangular_zeta,
)


@dataclass(frozen=True)
class ExponentPair:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > self.beta > 2):
            raise ValueError(f"need alpha > beta > 2, got ({self.alpha}, {self.beta})")

    @property
    def ratio(self) -> float:
        return self.alpha / self.beta


@dataclass(frozen=True)
class LJParams:
    exponents: ExponentPair
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("LJ coefficients a, b must be positive")


@dataclass(frozen=True)
class EnergyValue:
    value: float
    repulsive: float
    attractive: float


def _zetas(p: DomainPoint, e: ExponentPair, tol: float) -> tuple[float, float]:
    za = epstein_certified(p, e.alpha, tol).mid
    zb = epstein_certified(p, e.beta, tol).mid
    return za, zb


def lj_energy(p: DomainPoint, V: float, params: LJParams, tol: float = 1e-10) -> EnergyValue:
    """Energy of ``sqrt(V) L`` via the scaling law of the Epstein zeta function."""
    if not V > 0:
        raise ValueError("covolume must be positive")
    e = params.exponents
    za, zb = _zetas(p, e, tol)
    rep = V ** (-0.5 * e.alpha) * za
    att = V ** (-0.5 * e.beta) * zb
    return EnergyValue(params.a * rep - params.b * att, rep, att)


def _volume_from_zetas(za, zb, params: LJParams) -> float:
    e = params.exponents
    return (params.a * e.alpha * za / (params.b * e.beta * zb)) ** (2.0 / (e.alpha - e.beta))


def optimal_volume(p: DomainPoint, params: LJParams, tol: float = 1e-10) -> float:
    """Unique minimizer of ``V -> E_f[sqrt(V) L]``."""
    za, zb = _zetas(p, params.exponents, tol)
    return _volume_from_zetas(za, zb, params)


def _min_energy_from_zetas(za, zb, params: LJParams) -> float:
    e = params.exponents
    a, b = params.a, params.b
    d = e.alpha - e.beta
    r = e.beta / e.alpha
    return (
        (b * zb) ** (e.alpha / d)
        / (a * za) ** (e.beta / d)
        * r ** (e.beta / d)
        * (r - 1.0)
    )


def min_dilated_energy(p: DomainPoint, params: LJParams, tol: float = 1e-10) -> float:
    """Closed-form ``min_V E_f[sqrt(V) L]``; always negative."""
    za, zb = _zetas(p, params.exponents, tol)
    return _min_energy_from_zetas(za, zb, params)


def global_volume_bound(params: LJParams) -> float:
    """Upper bound ``(a alpha / (b beta))^(2/(alpha-beta))`` on a global minimizer's covolume."""
    e = params.exponents
    return (params.a * e.alpha / (params.b * e.beta)) ** (2.0 / (e.alpha - e.beta))


def zeta_difference(p: DomainPoint, s: float, tol: float) -> CertifiedValue:
    """``zeta_L(s) - zeta_A2(s)`` as a certified value."""
    return epstein_certified(p, s, tol) - triangular_zeta(float(s), min(tol, 1e-10))


def quotient_Q(p: DomainPoint, e: ExponentPair, tol: float = 1e-8) -> CertifiedValue:
    """Certified ``(zeta_L(alpha) - zeta_A2(alpha)) / (zeta_L(beta) - zeta_A2(beta))``.

    Each of the four zeta values is computed to ``tol / 4``. Raises
    :class:`IndeterminateQuotient` when the denominator enclosure contains 0
    (near the triangular lattice).
    """
    q = tol / 4
    num = epstein_certified(p, e.alpha, q) - triangular_zeta(float(e.alpha), q)
    den = epstein_certified(p, e.beta, q) - triangular_zeta(float(e.beta), q)
    return num / den


def conjecture_scan(s: float, grid, half_width: float = 60.0):
    """Evaluate the log-weighted sum ``F_s`` on every point of ``grid``.

    ``grid`` is anything with ``xs`` and ``ys`` sequences (e.g. a GridSpec).
    Returns ``(rows, argmin)`` where rows is an ``(n, 3)`` array of
    ``(x, y, F_s)`` in row-major order (y outer) and argmin the minimizing
    ``(x, y)``.
    """
    X, Y = np.meshgrid(np.asarray(grid.xs, float), np.asarray(grid.ys, float))
    X, Y = X.ravel(), Y.ravel()
    F = bulk_log_weighted(X, Y, s, half_width)
    i = int(np.argmin(F))
    rows = np.column_stack([X, Y, F])
    return rows, (float(X[i]), float(Y[i]))


def delta_over_s(p: DomainPoint, s: float, tol: float = 1e-10) -> CertifiedValue:
    """``(zeta_L(s) - zeta_A2(s)) / s``; increasing in ``s`` iff ``Q > alpha/beta`` pairwise."""
    return zeta_difference(p, s, tol) * (1.0 / s)

