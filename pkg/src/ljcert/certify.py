"""Computer-assisted check that ``Q_{alpha,beta} > alpha/beta`` off the triangular lattice.

Pipeline: a threshold height above which the inequality holds analytically,
a grid/cell cover of the remaining compact set, and a margin test that turns
finitely many certified evaluations into a statement on the continuum.

Two sweep modes exist. ``paper`` evaluates the quotient on a uniform grid and
subtracts a single global Lipschitz margin ``M delta sqrt(2)/2``. ``adaptive``
tiles the region with cells, bounds the gradient of the quotient on each cell
from certified values, gradients and Hessian bounds of the two zeta
functions, and subdivides cells whose margin is not yet positive.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from decimal import Decimal, ROUND_CEILING
import multiprocessing as mp

import numpy as np

from . import _kernels as K
from .energy import ExponentPair
from .lattice import SQRT3_2, TRIANGULAR, SQUARE, form_sandwich, in_domain
from .zeta import (
    CertifiedValue,
    TruncationSpec,
    _slop,
    bulk_zeta,
    epstein_certified,
    epstein_partial,
    epstein_tail_bound,
    hessian_sup,
    plan_rows,
    riemann_certified,
    triangular_zeta,
)

WORKERS_ENV = "LJCERT_WORKERS"
A2_POINT = (TRIANGULAR.x, TRIANGULAR.y)

BRANCH_QUADRATIC = "alpha-equals-2beta"
BRANCH_GENERAL = "general"

CERTIFIED = "certified"
SUBDIVIDED = "subdivided"
FALLBACK = "near-A2-fallback"
FAILED = "failed"


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


def _map(func, tasks, workers: int):
    """Ordered map; results never depend on ``workers``."""
    if workers == 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
        return list(ex.map(func, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


# ---------------------------------------------------------------------------
# threshold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdResult:
    y_exact: float  # certified upper enclosure of the threshold
    y_bar: float
    y_bar_str: str
    k: int
    branch: str
    etas: tuple[float, float, float]
    y_mid: float
    y_general: float  # upper enclosure of the general-branch formula

    def to_dict(self):
        return asdict(self)


def eta3_lower_bound(e: ExponentPair, N: int = 100) -> float:
    """Certified positive lower bound of ``(alpha/beta) zeta_A2(beta) - zeta_A2(alpha)``.

    Every summand ``|p|^-beta (alpha/beta - |p|^(beta-alpha))`` is positive
    because ``|p| > 1`` on the triangular lattice, so any partial sum is a
    lower bound. The bracket is split as ``(alpha-beta)/beta - expm1(-d)`` to
    avoid cancellation when ``alpha`` is close to ``beta``. Works for every
    ``beta > 2``, unlike the two separate zeta values.
    """
    a, b = float(e.alpha), float(e.beta)
    m, n = np.meshgrid(np.arange(-N, N + 1, dtype=float), np.arange(-N, N + 1, dtype=float))
    m, n = m.ravel(), n.ravel()
    keep = (m != 0) | (n != 0)
    m, n = m[keep], n[keep]
    q = (m + TRIANGULAR.x * n) ** 2 / TRIANGULAR.y + TRIANGULAR.y * n * n
    d = 0.5 * (a - b) * np.log(q)
    terms = q ** (-0.5 * b) * ((a - b) / b - np.expm1(-d))
    total = float(np.sort(terms).sum())  # ascending order for accuracy
    return total * (1.0 - 1e-10)


def eta_constants(e: ExponentPair, tol: float = 1e-10):
    """Certified ``(eta1, eta2, eta3)`` entering the threshold height."""
    a, b = float(e.alpha), float(e.beta)
    eta1 = riemann_certified(a, tol) * (2.0 ** (1 + a / 2) * 3.0 ** (-a / 2))
    eta2 = epstein_certified(SQUARE, b, tol) * (2.0 ** (b / 2) * a / b)
    eta3 = triangular_zeta(b, tol) * (a / b) - triangular_zeta(a, tol)
    if not eta3.lo > 0:
        raise ArithmeticError(f"eta3 enclosure {eta3} not positive for {e}")
    return eta1, eta2, eta3


def round_up(value: float, k: int) -> Decimal:
    """Smallest ``d`` with ``10^k d`` integral and ``d >= value``."""
    return Decimal(value).quantize(Decimal(1).scaleb(-k), rounding=ROUND_CEILING)


def threshold_y(e: ExponentPair, tol: float = 1e-10, k: int = 2) -> ThresholdResult:
    """Height above which ``Q > alpha/beta`` holds on the whole domain."""
    eta1, eta2, eta3 = eta_constants(e, tol)
    a, b = float(e.alpha), float(e.beta)
    safety = 1 + 1e-13
    y_general = (eta2.hi / eta1.lo) ** (2.0 / (a - b)) * safety
    y_general_mid = (eta2.mid / eta1.mid) ** (2.0 / (a - b))
    if a == 2 * b:
        disc = eta2.hi**2 - 4 * eta1.lo * eta3.lo
        if not disc > 0:
            raise ArithmeticError("non-positive discriminant in the quadratic branch")
        X = (eta2.hi + math.sqrt(disc)) / (2 * eta1.lo)
        y_hi = X ** (2.0 / b) * safety
        Xm = (eta2.mid + math.sqrt(eta2.mid**2 - 4 * eta1.mid * eta3.mid)) / (2 * eta1.mid)
        y_mid = Xm ** (2.0 / b)
        branch = BRANCH_QUADRATIC
    else:
        y_hi, y_mid, branch = y_general, y_general_mid, BRANCH_GENERAL
    ybar = round_up(y_hi, k)
    return ThresholdResult(
        y_exact=y_hi,
        y_bar=float(ybar),
        y_bar_str=str(ybar),
        k=k,
        branch=branch,
        etas=(eta1.mid, eta2.mid, eta3.mid),
        y_mid=y_mid,
        y_general=y_general,
    )


# ---------------------------------------------------------------------------
# grid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    delta: float
    I: int
    J: int
    y1: float
    y_top: float
    xs: tuple
    ys: tuple

    def to_dict(self):
        return {"delta": self.delta, "I": self.I, "J": self.J, "y1": self.y1, "y_top": self.y_top}


def build_grid(threshold: ThresholdResult | float, delta: float = 0.01) -> GridSpec:
    """Uniform grid on ``[0, 1/2] x [y1, y_top]`` with spacing ``delta``.

    ``x`` runs over both endpoints (so ``I = 1/(2 delta) + 1``), ``y1`` is the
    first multiple of ``delta`` above ``sqrt(3)/2`` and ``y_top`` the first
    grid value ``>= y_bar``.
    """
    d = Decimal(repr(float(delta)))
    if d <= 0:
        raise ValueError("delta must be positive")
    steps = Decimal("0.5") / d
    if steps != steps.to_integral_value():
        raise ValueError(f"delta={delta} does not divide 1/2")
    ybar = Decimal(threshold.y_bar_str) if isinstance(threshold, ThresholdResult) else Decimal(repr(float(threshold)))
    n_x = int(steps) + 1
    xs = tuple(float(i * d) for i in range(n_x))
    j1 = math.ceil(SQRT3_2 / float(d))
    while Decimal(j1) * d <= Decimal(SQRT3_2):
        j1 += 1
    y1 = Decimal(j1) * d
    if ybar < y1:
        raise ValueError(f"threshold {ybar} below first grid row {y1}")
    ys = []
    y = y1
    while True:
        ys.append(float(y))
        if y >= ybar:
            break
        y += d
    return GridSpec(float(d), n_x, len(ys), float(y1), ys[-1], xs, tuple(ys))


# ---------------------------------------------------------------------------
# paper-mode Lipschitz constant and sweep
# ---------------------------------------------------------------------------


def _s_sums(s: float, N: int):
    m, n = np.meshgrid(np.arange(-N, N + 1), np.arange(-N, N + 1), indexing="ij")
    m, n = np.abs(m.ravel()).astype(float), np.abs(n.ravel()).astype(float)
    keep = (m + n) > 0
    m, n = m[keep], n[keep]
    den = (m * m + n * n) ** (s / 2 + 1)
    A = np.sum(2 * n * (m + 0.5 * n) / den)
    B = np.sum((m * m + 0.25 * n * n + m * n) / den)
    return float(A), float(B)


def s_bound(s: float, y_bar: float, N: int) -> float:
    """The gradient-square estimate ``S_{alpha,beta}(s)`` evaluated literally."""
    A, B = _s_sums(s, N)
    return 2.0**s * s * s * y_bar ** (s - 2) * (y_bar**2 * A * A + B * B)


def paper_lipschitz(e: ExponentPair, y_bar: float, t: TruncationSpec = TruncationSpec(40)) -> float:
    """Global constant ``zeta_{(0, y_bar)}(alpha) (S(alpha) + S(beta))`` as printed."""
    if y_bar < SQRT3_2:
        raise ValueError("y_bar must be >= sqrt(3)/2")
    from .lattice import DomainPoint

    z = epstein_partial(DomainPoint(0.0, y_bar), e.alpha, t)
    return z * (s_bound(e.alpha, y_bar, t.N) + s_bound(e.beta, y_bar, t.N))


def _paper_row(task):
    y, xs, alpha, beta, N = task
    ys = np.full(len(xs), y)
    xs = np.asarray(xs, float)
    za = K.box_zeta_many(xs, ys, alpha, N)
    zb = K.box_zeta_many(xs, ys, beta, N)
    return za, zb


@dataclass(frozen=True)
class CellVerdict:
    """Outcome for one cell; ``certified`` means ``q.lo - lipschitz * radius > required``."""

    center: tuple
    half_widths: tuple
    q: CertifiedValue | None
    lipschitz: float
    radius: float
    margin: float
    status: str
    depth: int


@dataclass
class CertificationReport:
    exponents: tuple
    mode: str
    threshold: ThresholdResult
    grid: GridSpec
    margin_required: float
    verdict: bool
    min_Q: CertifiedValue | None
    argmin: tuple | None
    M: float | None = None
    stats: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    cells: list = field(default_factory=list, repr=False)  # CellVerdict map (adaptive only)

    def to_dict(self) -> dict:
        """JSON-ready payload; ``timing`` is kept separate since it varies per run."""
        return {
            "exponents": list(self.exponents),
            "mode": self.mode,
            "threshold": self.threshold.to_dict(),
            "grid": self.grid.to_dict(),
            "margin_required": self.margin_required,
            "verdict": self.verdict,
            "min_Q": None if self.min_Q is None else {"mid": self.min_Q.mid, "rad": self.min_Q.rad},
            "argmin": None if self.argmin is None else list(self.argmin),
            "M": self.M,
            "stats": self.stats,
            "details": self.details,
        }


def sweep_paper_mode(
    e: ExponentPair,
    grid: GridSpec,
    M: float,
    t: TruncationSpec = TruncationSpec(40),
    threshold: ThresholdResult | None = None,
    workers: int | None = 1,
    margin_required: float | None = None,
) -> CertificationReport:
    """Evaluate ``Q`` on every grid point and test ``min Q - M delta sqrt(2)/2 > alpha/beta``."""
    t0 = time.perf_counter()
    workers = resolve_workers(workers)
    threshold = threshold or threshold_y(e)
    a, b = float(e.alpha), float(e.beta)
    N = int(t.N)
    tasks = [(y, grid.xs, a, b, N) for y in grid.ys]
    rows = _map(_paper_row, tasks, workers)

    za2, zb2 = triangular_zeta(a), triangular_zeta(b)
    T = (2 * N + 1) ** 2 - 1
    best = None
    excluded = []
    sandwich_violations = 0
    mi, ni = np.meshgrid(np.arange(-3, 4), np.arange(-3, 4))
    for y, (za, zb) in zip(grid.ys, rows):
        ra = epstein_tail_bound(y, a, t) * (1 + 1e-12 * T) + _slop(8 * N, N, za)
        rb = epstein_tail_bound(y, b, t) * (1 + 1e-12 * T) + _slop(8 * N, N, zb)
        num_lo = za - ra - za2.hi
        num_hi = za + ra - za2.lo
        den_lo = zb - rb - zb2.hi
        den_hi = zb + rb - zb2.lo
        for i, x in enumerate(grid.xs):
            if in_domain(x, y):
                lo, mid, hi = form_sandwich(x, y, mi, ni)
                sandwich_violations += int(np.sum((mid < lo * (1 - 1e-12)) | (mid > hi * (1 + 1e-12))))
            if den_lo[i] <= 0:
                excluded.append((x, y))
                continue
            qlo = num_lo[i] / den_hi[i]
            qhi = num_hi[i] / den_lo[i]
            if best is None or qlo < best[0]:
                best = (qlo, qhi, x, y)
    assert sandwich_violations == 0, "form sandwich violated on the grid"

    margin = M * grid.delta * math.sqrt(2) / 2
    required = e.ratio if margin_required is None else margin_required
    min_Q = CertifiedValue(0.5 * (best[0] + best[1]), 0.5 * (best[1] - best[0]))
    verdict = (min_Q.lo - margin > required) and not excluded
    return CertificationReport(
        exponents=(e.alpha, e.beta),
        mode="paper",
        threshold=threshold,
        grid=grid,
        margin_required=required,
        verdict=bool(verdict),
        min_Q=min_Q,
        argmin=(best[2], best[3]),
        M=M,
        stats={"points": grid.I * grid.J, "N": N, "terms_per_point": T},
        details={
            "lipschitz_margin": margin,
            "slack": min_Q.lo - margin - required,
            "excluded_near_A2": [list(p) for p in excluded],
        },
        timing={"seconds": time.perf_counter() - t0, "workers": workers},
    )


# ---------------------------------------------------------------------------
# adaptive mode
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdaptiveConfig:
    delta: float = 0.01
    max_depth: int = 8
    epsilon: float = 0.01
    zeta_tol: float = 1e-8
    hessian_tol: float = 1e-4
    k: int = 2
    margin_required: float | None = None  # defaults to alpha/beta
    ball_samples: int = 10_000
    ball_inner_fraction: float = 0.05
    workers: int | None = 1


@dataclass
class CellBatch:
    """Quotient data for a batch of cells sharing one y-row."""

    x0: np.ndarray
    x1: np.ndarray
    y0: np.ndarray
    y1: np.ndarray
    q_lo: np.ndarray
    q_mid: np.ndarray
    lipschitz: np.ndarray
    radius: np.ndarray
    margin: np.ndarray
    ok: np.ndarray  # denominators bounded away from zero on the cell
    terms: int


def _zeta_cell_data(x0, x1, y0, y1, s, zeta_tol, hessian_tol):
    xc, yc = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    r = 0.5 * np.hypot(x1 - x0, y1 - y0)
    bz = bulk_zeta(xc, yc, s, zeta_tol, plan=plan_rows(float(y0.min()), float(y1.max()), s, zeta_tol))
    H = hessian_sup(x0, x1, y0, y1, s, hessian_tol)
    ref = triangular_zeta(float(s))
    delta_mid = bz.value - ref.mid
    delta_rad = bz.value_rad + ref.rad + 4 * 2.0**-53 * np.abs(bz.value)
    G = np.hypot(bz.grad_x, bz.grad_y) + bz.grad_rad + H * r
    return delta_mid, delta_rad, G, r, int(bz.terms.sum())


def evaluate_cells(x0, x1, y0, y1, e: ExponentPair, zeta_tol=1e-8, hessian_tol=1e-4, required=None) -> CellBatch:
    """Certified centre quotient and local Lipschitz bound for each cell."""
    x0, x1, y0, y1 = (np.asarray(v, float) for v in (x0, x1, y0, y1))
    required = e.ratio if required is None else required
    da, ra, Ga, r, ta = _zeta_cell_data(x0, x1, y0, y1, float(e.alpha), zeta_tol, hessian_tol)
    db, rb, Gb, _, tb = _zeta_cell_data(x0, x1, y0, y1, float(e.beta), zeta_tol, hessian_tol)
    a_lo, a_hi = da - ra, da + ra
    b_lo, b_hi = db - rb, db + rb
    a_min, a_max = a_lo - Ga * r, a_hi + Ga * r
    b_min = b_lo - Gb * r
    ok = (a_min > 0) & (b_min > 0) & (b_lo > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        q_lo = np.where(ok, a_lo / b_hi, -np.inf)
        q_mid = np.where(b_lo > 0, da / db, np.nan)
        q_max = a_max / b_min
        L = np.where(ok, q_max * (Ga / a_min + Gb / b_min), np.inf)
        margin = np.where(ok, q_lo - L * r - required, -np.inf)
    return CellBatch(x0, x1, y0, y1, q_lo, q_mid, L, r, margin, ok, ta + tb)


def local_lipschitz(cell, e: ExponentPair, tol: float = 1e-8) -> float:
    """Upper bound of the gradient norm of ``Q`` on ``cell = ((x0, x1), (y0, y1))``."""
    (x0, x1), (y0, y1) = cell
    batch = evaluate_cells([x0], [x1], [y0], [y1], e, zeta_tol=tol)
    if not batch.ok[0]:
        from .zeta import IndeterminateQuotient

        raise IndeterminateQuotient(f"cell {cell} is too close to the triangular lattice")
    return float(batch.lipschitz[0])


def _inside_ball(x0, x1, y0, y1, eps):
    cx, cy = A2_POINT
    far_x = np.maximum(np.abs(x0 - cx), np.abs(x1 - cx))
    far_y = np.maximum(np.abs(y0 - cy), np.abs(y1 - cy))
    return far_x**2 + far_y**2 <= eps * eps


def _cells_task(task):
    x0, x1, y0, y1, alpha, beta, zeta_tol, hessian_tol, required = task
    b = evaluate_cells(x0, x1, y0, y1, ExponentPair(alpha, beta), zeta_tol, hessian_tol, required)
    return b


def quotient_at_points(xs, ys, e: ExponentPair, tol: float = 1e-10):
    """Certified ``Q`` at arbitrary points: arrays ``(lo, mid, hi)``; ``lo = -inf`` if indeterminate."""
    xs = np.asarray(xs, float)
    ys = np.asarray(ys, float)
    out = []
    for s in (float(e.alpha), float(e.beta)):
        bz = bulk_zeta(xs, ys, s, tol)
        ref = triangular_zeta(s)
        out.append((bz.value - ref.mid, bz.value_rad + ref.rad + 4 * 2.0**-53 * bz.value))
    (da, ra), (db, rb) = out
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = (db - rb > 0) & (da - ra > 0)
        lo = np.where(ok, (da - ra) / (db + rb), -np.inf)
        hi = np.where(ok, (da + ra) / (db - rb), np.inf)
    return lo, da / db, hi


def ball_samples(eps: float, count: int, inner_fraction: float, y_min: float = -math.inf):
    """Deterministic polar sample of the ball around A2 restricted to ``x <= 1/2, y >= y_min``."""
    n_r = max(1, int(round(math.sqrt(count))))
    n_t = max(1, count // n_r)
    radii = eps * np.linspace(inner_fraction, 1.0, n_r)
    # half-disc facing x < 1/2, endpoints included
    theta = np.linspace(0.5 * math.pi, 1.5 * math.pi, n_t)
    R, T = np.meshgrid(radii, theta, indexing="ij")
    xs = np.minimum(A2_POINT[0] + (R * np.cos(T)).ravel(), 0.5)
    ys = A2_POINT[1] + (R * np.sin(T)).ravel()
    keep = ys >= y_min
    return xs[keep], ys[keep]


def certify_adaptive(e: ExponentPair, config: AdaptiveConfig = AdaptiveConfig()) -> CertificationReport:
    """Cell-wise certification with quadtree refinement."""
    t0 = time.perf_counter()
    workers = resolve_workers(config.workers)
    required = e.ratio if config.margin_required is None else config.margin_required
    threshold = threshold_y(e, k=config.k)
    grid = build_grid(threshold, config.delta)
    xe = np.asarray(grid.xs)
    ye = np.concatenate([[grid.y1 - grid.delta], np.asarray(grid.ys)])
    X0, Y0 = np.meshgrid(xe[:-1], ye[:-1])
    X1, Y1 = np.meshgrid(xe[1:], ye[1:])
    cells = np.column_stack([X0.ravel(), X1.ravel(), Y0.ravel(), Y1.ravel()])

    counts = {CERTIFIED: 0, SUBDIVIDED: 0, FALLBACK: 0, FAILED: 0}
    by_depth = []
    fallback_cells, failed_cells = [], []
    worst = None  # (margin, cell, q_lo, L)
    min_q = None  # (q_lo, q_mid, x, y)
    max_L = 0.0
    terms = 0
    verdicts = []

    for depth in range(config.max_depth + 1):
        if len(cells) == 0:
            break
        inside = _inside_ball(cells[:, 0], cells[:, 1], cells[:, 2], cells[:, 3], config.epsilon)
        for c in cells[inside]:
            fallback_cells.append([float(v) for v in c] + [depth])
            verdicts.append(_verdict_for(c, None, math.inf, 0.0, -math.inf, FALLBACK, depth))
        counts[FALLBACK] += int(inside.sum())
        work = cells[~inside]
        # batch by y-row; the batch key depends only on the cell set
        order = np.lexsort((work[:, 0], work[:, 2], work[:, 3]))
        work = work[order]
        keys = work[:, 2:4]
        splits = np.flatnonzero(np.any(np.diff(keys, axis=0) != 0, axis=1)) + 1
        groups = np.split(np.arange(len(work)), splits) if len(work) else []
        tasks = [
            (work[g, 0], work[g, 1], work[g, 2], work[g, 3], float(e.alpha), float(e.beta),
             config.zeta_tol, config.hessian_tol, required)
            for g in groups
        ]
        results = _map(_cells_task, tasks, workers)

        level = {CERTIFIED: 0, SUBDIVIDED: 0, FAILED: 0}
        children = []
        for b in results:
            terms += b.terms
            good = b.margin > 0
            for i in np.flatnonzero(good):
                if min_q is None or b.q_lo[i] < min_q[0]:
                    xc = 0.5 * (b.x0[i] + b.x1[i])
                    yc = 0.5 * (b.y0[i] + b.y1[i])
                    min_q = (float(b.q_lo[i]), float(b.q_mid[i]), float(xc), float(yc))
                if worst is None or b.margin[i] < worst[0]:
                    worst = (float(b.margin[i]), [float(b.x0[i]), float(b.x1[i]), float(b.y0[i]), float(b.y1[i])],
                             float(b.q_lo[i]), float(b.lipschitz[i]))
            if good.any():
                max_L = max(max_L, float(b.lipschitz[good].max()))
            level[CERTIFIED] += int(good.sum())
            bad = np.flatnonzero(~good)
            final = depth == config.max_depth
            for i in range(len(b.x0)):
                status = CERTIFIED if good[i] else (FAILED if final else SUBDIVIDED)
                q = None
                if np.isfinite(b.q_lo[i]):
                    q = CertifiedValue(float(b.q_mid[i]), max(0.0, float(b.q_mid[i] - b.q_lo[i])))
                verdicts.append(_verdict_for((b.x0[i], b.x1[i], b.y0[i], b.y1[i]), q, float(b.lipschitz[i]),
                                             float(b.radius[i]), float(b.margin[i]), status, depth))
            if depth == config.max_depth:
                level[FAILED] += len(bad)
                for i in bad:
                    failed_cells.append([float(b.x0[i]), float(b.x1[i]), float(b.y0[i]), float(b.y1[i]),
                                         float(b.q_lo[i]) if np.isfinite(b.q_lo[i]) else None,
                                         float(b.margin[i]) if np.isfinite(b.margin[i]) else None])
                continue
            level[SUBDIVIDED] += len(bad)
            for i in bad:
                xm = 0.5 * (b.x0[i] + b.x1[i])
                ym = 0.5 * (b.y0[i] + b.y1[i])
                children += [
                    (b.x0[i], xm, b.y0[i], ym), (xm, b.x1[i], b.y0[i], ym),
                    (b.x0[i], xm, ym, b.y1[i]), (xm, b.x1[i], ym, b.y1[i]),
                ]
        for key in level:
            counts[key] += level[key]
        by_depth.append({"depth": depth, "fallback": int(inside.sum()), **level})
        cells = np.array(children, dtype=float).reshape(-1, 4)

    # near-A2 fallback: dense certified sample of the ball
    bx, by = ball_samples(config.epsilon, config.ball_samples, config.ball_inner_fraction,
                          y_min=float(ye[0]))
    blo, bmid, _ = quotient_at_points(bx, by, e, tol=config.zeta_tol / 100)
    ball_ok = bool(np.all(blo > required))
    j = int(np.argmin(blo))
    ball = {
        "epsilon": config.epsilon,
        "samples": int(bx.size),
        "inner_radius": config.epsilon * config.ball_inner_fraction,
        "min_Q_lo": float(blo[j]) if np.isfinite(blo[j]) else None,
        "argmin": [float(bx[j]), float(by[j])],
        "all_above_margin": ball_ok,
        "limit_profile": near_a2_profile(e),
        "justification": (
            "strict local minimality of the triangular lattice for every Epstein zeta function "
            "plus dense certified sampling; not a computer-assisted certificate"
        ),
    }

    verdict = counts[FAILED] == 0 and ball_ok
    return CertificationReport(
        exponents=(e.alpha, e.beta),
        mode="adaptive",
        threshold=threshold,
        grid=grid,
        margin_required=required,
        verdict=bool(verdict),
        min_Q=None if min_q is None else CertifiedValue(min_q[1], max(0.0, min_q[1] - min_q[0])),
        argmin=None if min_q is None else (min_q[2], min_q[3]),
        M=None,
        stats={
            "cells": counts,
            "by_depth": by_depth,
            "max_local_lipschitz": max_L,
            "terms": terms,
            "config": {k: v for k, v in asdict(config).items() if k != "workers"},
        },
        details={
            "worst_cell": None if worst is None else {
                "margin": worst[0], "cell": worst[1], "q_lo": worst[2], "lipschitz": worst[3]},
            "failed_cells": failed_cells,
            "fallback_cells": fallback_cells,
            "ball": ball,
        },
        timing={"seconds": time.perf_counter() - t0, "workers": workers},
        cells=verdicts,
    )


def _verdict_for(c, q, L, r, margin, status, depth) -> CellVerdict:
    x0, x1, y0, y1 = (float(v) for v in c)
    return CellVerdict(
        center=(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
        half_widths=(0.5 * (x1 - x0), 0.5 * (y1 - y0)),
        q=q,
        lipschitz=L,
        radius=r,
        margin=margin,
        status=status,
        depth=depth,
    )


def near_a2_profile(e: ExponentPair, radii=(1e-2, 5e-3, 2e-3, 1e-3, 5e-4), tol: float = 1e-12):
    """Empirical ``Q`` along the two axis directions approaching A2 (no certified limit)."""
    out = []
    for r in radii:
        pts_x = np.array([A2_POINT[0] - r, A2_POINT[0]])
        pts_y = np.array([A2_POINT[1], A2_POINT[1] + r])
        _, mid, _ = quotient_at_points(pts_x, pts_y, e, tol)
        out.append({"r": r, "Q_along_x": float(mid[0]), "Q_along_y": float(mid[1])})
    return out
