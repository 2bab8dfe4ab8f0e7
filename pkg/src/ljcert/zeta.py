"""Epstein and Riemann zeta values with explicit error radii.

Every certified radius is the sum of a proven truncation bound and a
floating-point allowance: the truncation part is inflated by ``1 + 1e-12 T``
(``T`` summed terms) and ``2 (B + K + 8) u |mid|`` is added for blocked
summation of positive terms in ``K`` blocks of at most ``B`` terms, ``u``
being the unit roundoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .lattice import DomainPoint, TRIANGULAR, SQUARE

UNIT_ROUNDOFF = 2.0**-53
MAX_BOX_N = 20_000
MAX_ROW_RADIUS = 1e5


class DivergentExponentError(ValueError):
    """The lattice sum diverges for the requested exponent."""


class PrecisionError(ArithmeticError):
    """Requested tolerance cannot be met at double precision."""


class IndeterminateQuotient(ArithmeticError):
    """Denominator enclosure contains zero."""


def _slop(block_len, n_blocks, mid):
    return 2.0 * (block_len + n_blocks + 8) * UNIT_ROUNDOFF * np.abs(mid)


def _inflate(tail: float, n_terms: int) -> float:
    return tail * (1.0 + 1e-12 * n_terms)


@dataclass(frozen=True)
class CertifiedValue:
    """A real number known to lie in ``[mid - rad, mid + rad]``."""

    mid: float
    rad: float = 0.0

    def __post_init__(self):
        if not self.rad >= 0:
            raise ValueError(f"negative or NaN radius {self.rad}")

    @property
    def lo(self) -> float:
        return self.mid - self.rad

    @property
    def hi(self) -> float:
        return self.mid + self.rad

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def _wrap(self, mid, rad):
        # outward step covering rounding of mid, rad and of the endpoints
        return CertifiedValue(mid, rad + 2 * UNIT_ROUNDOFF * (abs(mid) + rad))

    def __add__(self, other):
        o = _as_cv(other)
        return self._wrap(self.mid + o.mid, self.rad + o.rad)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedValue(-self.mid, self.rad)

    def __sub__(self, other):
        o = _as_cv(other)
        return self._wrap(self.mid - o.mid, self.rad + o.rad)

    def __rsub__(self, other):
        return _as_cv(other) - self

    def __mul__(self, other):
        o = _as_cv(other)
        rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return self._wrap(self.mid * o.mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_cv(other)
        if o.lo <= 0.0 <= o.hi:
            raise IndeterminateQuotient(f"denominator {o} contains zero")
        # exact enclosure of the quotient interval
        cands = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi]
        lo, hi = min(cands), max(cands)
        return self._wrap(0.5 * (lo + hi), 0.5 * (hi - lo))

    def __rtruediv__(self, other):
        return _as_cv(other) / self

    def __repr__(self):
        return f"CertifiedValue({self.mid!r} ± {self.rad:.3g})"


def _as_cv(v) -> CertifiedValue:
    return v if isinstance(v, CertifiedValue) else CertifiedValue(float(v), 0.0)


@dataclass(frozen=True)
class TruncationSpec:
    N: int = 40

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")


def _check_s(s: float, bound: float = 2.0):
    if not s > bound:
        raise DivergentExponentError(f"lattice sum diverges for s={s} (need s > {bound})")


def _min_form_eigen(y: float) -> float:
    """Smallest eigenvalue of ``[[1, x], [x, x^2 + y^2]]`` over ``x in [0, 1/2]``.

    Capped at 1/2, its value on the half-fundamental domain.
    """
    tr = 1.25 + y * y
    lam = 0.5 * (tr - math.sqrt(tr * tr - 4 * y * y))
    return min(0.5, lam)


# ---------------------------------------------------------------------------
# box-truncated sums
# ---------------------------------------------------------------------------


def epstein_partial(p: DomainPoint, s: float, t: TruncationSpec = TruncationSpec()) -> float:
    """Box partial sum over ``|m|, |n| <= N`` of ``Q_L(m, n)^(-s/2)``."""
    _check_s(s)
    return float(K.box_zeta(float(p.x), float(p.y), float(s), int(t.N)))


def epstein_tail_bound(y: float, s: float, t: TruncationSpec) -> float:
    """Upper bound on ``zeta_L(s) - zeta_L^N(s)`` uniform in ``x in [0, 1/2]``.

    Uses ``Q_L(m, n) >= c (m^2 + n^2) / y`` with ``c = 1/2`` for
    ``y >= sqrt(3)/2`` and at most ``8k`` index pairs on shell ``k``:
    ``(y/c)^(s/2) * 8 N^(2-s) / (s - 2)``.
    """
    _check_s(s)
    if not y > 0:
        raise ValueError("y must be positive")
    c = _min_form_eigen(y)
    return (y / c) ** (0.5 * s) * 8.0 * float(t.N) ** (2.0 - s) / (s - 2.0)


def _box_n_for(y: float, s: float, target: float) -> int:
    c = _min_form_eigen(y)
    est = ((y / c) ** (0.5 * s) * 8.0 / ((s - 2.0) * target)) ** (1.0 / (s - 2.0))
    if not est <= MAX_BOX_N:
        return int(MAX_BOX_N + 1)  # caller rejects; avoids stepping through huge N
    N = max(1, int(math.ceil(est)))
    # the closed form may be off by one through rounding
    while N > 1 and epstein_tail_bound(y, s, TruncationSpec(N - 1)) <= target:
        N -= 1
    while epstein_tail_bound(y, s, TruncationSpec(N)) > target:
        N += 1
    return N


def epstein_certified(p: DomainPoint, s: float, tol: float = 1e-8) -> CertifiedValue:
    """Box partial sum with the smallest ``N`` whose tail bound is ``<= tol/2``."""
    _check_s(s)
    if not tol > 0:
        raise ValueError("tol must be positive")
    N = _box_n_for(p.y, s, tol / 2)
    if N > MAX_BOX_N:
        raise PrecisionError(f"tol={tol} needs N={N} > {MAX_BOX_N} at y={p.y}, s={s}")
    mid = epstein_partial(p, s, TruncationSpec(N))
    T = (2 * N + 1) ** 2 - 1
    rad = _inflate(epstein_tail_bound(p.y, s, TruncationSpec(N)), T) + float(_slop(8 * N, N, mid))
    if rad > tol:
        raise PrecisionError(f"radius {rad:.3g} exceeds tol={tol} (rounding dominates)")
    return CertifiedValue(mid, rad)


def riemann_certified(s: float, tol: float = 1e-12) -> CertifiedValue:
    """Riemann zeta with tail bound ``s/(s-1) N^(1-s)``."""
    _check_s(s, 1.0)
    if not tol > 0:
        raise ValueError("tol must be positive")
    N = max(1, int(math.ceil((s / (s - 1.0) / (tol / 2)) ** (1.0 / (s - 1.0)))))
    if N > 10**8:
        raise PrecisionError(f"tol={tol} needs N={N} terms for s={s}")
    mid = float(K.riemann_partial(float(s), N))
    rad = _inflate(riemann_tail_bound(s, N), N) + float(_slop(N, 1, mid))
    if rad > tol:
        raise PrecisionError(f"radius {rad:.3g} exceeds tol={tol}")
    return CertifiedValue(mid, rad)


def riemann_tail_bound(s: float, N: int) -> float:
    return s / (s - 1.0) * float(N) ** (1.0 - s)


def epstein_gradient(p: DomainPoint, s: float, t: TruncationSpec = TruncationSpec()):
    """``(d/dx, d/dy)`` of the box partial sum at ``p``."""
    _check_s(s)
    dx, dy = K.box_zeta_gradient(float(p.x), float(p.y), float(s), int(t.N))
    return float(dx), float(dy)


def log_weighted_sum(p: DomainPoint, s: float, t: TruncationSpec = TruncationSpec()) -> float:
    """Box truncation of ``-sum' (s log|p| + 1) / |p|^s`` over the unit-density lattice."""
    _check_s(s)
    return float(K.box_log_weighted(float(p.x), float(p.y), float(s), int(t.N)))


@lru_cache(maxsize=None)
def triangular_zeta(s: float, tol: float = 1e-10) -> CertifiedValue:
    """Cached certified zeta of the triangular lattice (keyed on exact float bits)."""
    return epstein_certified(TRIANGULAR, s, tol)


@lru_cache(maxsize=None)
def square_zeta(s: float, tol: float = 1e-10) -> CertifiedValue:
    return epstein_certified(SQUARE, s, tol)


# ---------------------------------------------------------------------------
# row-truncated sums (bulk evaluation for sweeps)
# ---------------------------------------------------------------------------


def _gamma_ratio(s: float) -> float:
    # int_R (t^2 + 1)^(-s/2) dt
    return math.sqrt(math.pi) * math.exp(math.lgamma(0.5 * (s - 1)) - math.lgamma(0.5 * s))


def row_tail_bound(y_lo: float, y_hi: float, s: float, R: float, Nn: int) -> float:
    """Bound on the terms ``y^(s/2) F^(-s/2)`` left out by the row scheme.

    Valid for every ``y in [y_lo, y_hi]`` and every ``x`` (per-point row
    centering). Rows ``|n| > Nn``: a unimodal row sum is at most its integral
    plus its maximum. Inside rows, terms with ``|m + x n| > R``: first term plus
    ``int_R^inf (t^2 + a^2)^(-s/2) (t/R) dt``.
    """
    h = 0.5 * s
    Nn = max(1, int(Nn))
    n = np.arange(-Nn, Nn + 1, dtype=float)
    base = R * R + (y_lo * n) ** 2
    inner = 2.0 * float(np.sum(base ** (-h) + base ** (1.0 - h) / (R * (s - 2.0))))
    outer = 2.0 * (
        _gamma_ratio(s) * y_lo ** (1.0 - s) * Nn ** (2.0 - s) / (s - 2.0)
        + y_lo ** (-s) * Nn ** (1.0 - s) / (s - 1.0)
    )
    return y_hi**h * (inner + outer)


@dataclass(frozen=True)
class RowPlan:
    R: float
    Nn: int
    tail: float  # bound on omitted y^(s/2) F^(-s/2) terms over the y-range


def plan_rows(y_lo: float, y_hi: float, s: float, tol: float) -> RowPlan:
    """Smallest (geometric search) row truncation with tail ``<= tol/2``."""
    _check_s(s)
    rho = 2.0
    while True:
        Nn = max(1, int(math.ceil(rho / y_lo)))
        tail = row_tail_bound(y_lo, y_hi, s, rho, Nn)
        if tail <= tol / 2:
            return RowPlan(rho, Nn, tail)
        rho *= 1.05
        if rho > MAX_ROW_RADIUS:
            raise PrecisionError(f"no row plan reaches tol={tol} for y in [{y_lo}, {y_hi}], s={s}")


@dataclass
class BulkZeta:
    """Row-scheme values and gradients at many points, with radii."""

    value: np.ndarray
    value_rad: np.ndarray
    grad_x: np.ndarray
    grad_y: np.ndarray
    grad_rad: np.ndarray  # bound on the Euclidean error of the gradient
    terms: np.ndarray


def bulk_zeta(xs, ys, s: float, tol: float = 1e-8, plan: RowPlan | None = None) -> BulkZeta:
    """Certified zeta values and gradients at points sharing similar ``y``.

    One row plan is computed for ``[min(ys), max(ys)]`` unless given.
    """
    xs = np.ascontiguousarray(xs, dtype=float)
    ys = np.ascontiguousarray(ys, dtype=float)
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if plan is None:
        plan = plan_rows(y_lo, y_hi, s, tol)
    val, gx, gy, cnt = K.rows_value_gradient(xs, ys, float(s), float(plan.R), int(plan.Nn))
    T = cnt.astype(float)
    block, nblk = 2 * plan.R + 2, 2 * plan.Nn + 1
    vrad = _inflate(plan.tail, T) + _slop(block, nblk, val)
    tdx = s / y_lo * plan.tail
    tdy = 0.5 * s / y_lo * plan.tail
    gnorm = np.hypot(gx, gy)
    # gradient terms have mixed signs: allow for their absolute sum, at most s/y * value
    grad_rad = _inflate(math.hypot(tdx, tdy), T) + 2 * _slop(block, nblk, gnorm + s / y_lo * val)
    return BulkZeta(val, vrad, gx, gy, grad_rad, cnt)


def hessian_sup(x0, x1, y0, y1, s: float, tol: float = 1e-4) -> np.ndarray:
    """Upper bound of the Frobenius norm of the Hessian of ``zeta_L(s)`` on boxes.

    Boxes ``[x0, x1] x [y0, y1]`` should share similar ``y`` (one plan).
    ``tol`` only trades tightness for speed; the bound includes its tail.
    """
    x0 = np.ascontiguousarray(x0, dtype=float)
    x1 = np.ascontiguousarray(x1, dtype=float)
    y0 = np.ascontiguousarray(y0, dtype=float)
    y1 = np.ascontiguousarray(y1, dtype=float)
    y_lo, y_hi = float(y0.min()), float(y1.max())
    plan = plan_rows(y_lo, y_hi, s, tol)
    hxx, hxy, hyy = K.rows_hessian_sup(x0, x1, y0, y1, float(s), float(plan.R), int(plan.Nn))
    h = 0.5 * s
    scale = plan.tail / (y_lo * y_lo)
    hxx = hxx + s * (s + 1) * scale
    hxy = hxy + h * (3 * h + 2) * scale
    hyy = hyy + h * (3 * h + 3) * scale
    return np.sqrt(hxx**2 + 2 * hxy**2 + hyy**2) * (1 + 1e-10)


def bulk_log_weighted(xs, ys, s: float, half_width: float = 60.0) -> np.ndarray:
    """``F_s`` truncated to lattice points in the square ``|X|, |Y| <= half_width``.

    The cut-off region is the same physical square for every lattice, so
    truncation errors nearly cancel between nearby shapes.
    """
    _check_s(s)
    xs = np.ascontiguousarray(xs, dtype=float)
    ys = np.ascontiguousarray(ys, dtype=float)
    out = np.empty_like(xs)
    for y in np.unique(ys):
        sel = ys == y
        R = half_width * math.sqrt(y)
        Nn = int(math.floor(half_width / math.sqrt(y)))
        out[sel] = K.rows_log_weighted(xs[sel], ys[sel], float(s), float(R), max(Nn, 1))
    return out
