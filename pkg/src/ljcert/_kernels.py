"""Compiled lattice-sum kernels.

Two truncation schemes are used:

* box: ``|m| <= N, |n| <= N``, accumulated shell by shell in increasing
  ``max(|m|, |n|)``;
* rows: ``|n| <= Nn`` and ``|m + x n| <= R``, accumulated row by row in the
  order ``n = 0, 1, -1, 2, -2, ...``.

All kernels work with ``q = Q_L(m, n) = F / y`` where
``F = (m + x n)^2 + y^2 n^2``. Per-point results never depend on how points
are batched, so callers may partition work freely.
"""
import math

import numpy as np
from numba import njit, prange  # noqa: F401  (prange kept for future use)


@njit(cache=True, inline="always")
def _negpow(q, s):
    # q ** (-s / 2) with a fast path for integer s
    si = int(s)
    if si == s and si <= 64:
        half = si // 2
        if si % 2 == 0:
            return 1.0 / q**half
        return 1.0 / (q**half * math.sqrt(q))
    return q ** (-0.5 * s)


# ---------------------------------------------------------------------------
# box scheme
# ---------------------------------------------------------------------------


@njit(cache=True)
def _shell_indices(k):
    # the 8k index pairs with max(|m|, |n|) == k, in a fixed order
    out = np.empty((8 * k, 2), dtype=np.int64)
    i = 0
    for m in range(-k, k + 1):
        out[i, 0] = m
        out[i, 1] = k
        i += 1
        out[i, 0] = m
        out[i, 1] = -k
        i += 1
    for n in range(-k + 1, k):
        out[i, 0] = k
        out[i, 1] = n
        i += 1
        out[i, 0] = -k
        out[i, 1] = n
        i += 1
    return out


@njit(cache=True)
def box_zeta(x, y, s, N):
    total = 0.0
    for k in range(1, N + 1):
        shell = 0.0
        idx = _shell_indices(k)
        for i in range(idx.shape[0]):
            m = idx[i, 0]
            n = idx[i, 1]
            t = m + x * n
            q = (t * t) / y + y * n * n
            shell += _negpow(q, s)
        total += shell
    return total


@njit(cache=True)
def box_zeta_gradient(x, y, s, N):
    h = 0.5 * s
    gx = 0.0
    gy = 0.0
    for k in range(1, N + 1):
        sx = 0.0
        sy = 0.0
        idx = _shell_indices(k)
        for i in range(idx.shape[0]):
            m = idx[i, 0]
            n = idx[i, 1]
            t = m + x * n
            u2 = y * y * n * n
            F = t * t + u2
            w = _negpow(F / y, s) / F
            sx += n * t * w
            sy += (t * t - u2) * w
        gx += sx
        gy += sy
    return -s * gx, h / y * gy


@njit(cache=True)
def box_log_weighted(x, y, s, N):
    # -sum (s log|p| + 1) / |p|^s with |p|^2 = q
    total = 0.0
    for k in range(1, N + 1):
        shell = 0.0
        idx = _shell_indices(k)
        for i in range(idx.shape[0]):
            m = idx[i, 0]
            n = idx[i, 1]
            t = m + x * n
            q = (t * t) / y + y * n * n
            shell += (0.5 * s * math.log(q) + 1.0) * _negpow(q, s)
        total += shell
    return -total


@njit(cache=True)
def box_zeta_many(xs, ys, s, N):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = box_zeta(xs[i], ys[i], s, N)
    return out


@njit(cache=True)
def box_log_weighted_many(xs, ys, s, N):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = box_log_weighted(xs[i], ys[i], s, N)
    return out


# ---------------------------------------------------------------------------
# row scheme
# ---------------------------------------------------------------------------


@njit(cache=True)
def _row_order(Nn):
    out = np.empty(2 * Nn + 1, dtype=np.int64)
    out[0] = 0
    for k in range(1, Nn + 1):
        out[2 * k - 1] = k
        out[2 * k] = -k
    return out


@njit(cache=True)
def rows_value_gradient(xs, ys, s, R, Nn):
    """Value, d/dx, d/dy of the row-truncated Epstein sum at each point.

    Also returns the number of terms summed per point.
    """
    h = 0.5 * s
    npts = xs.shape[0]
    val = np.empty(npts)
    gx = np.empty(npts)
    gy = np.empty(npts)
    cnt = np.empty(npts, dtype=np.int64)
    order = _row_order(Nn)
    for i in range(npts):
        x = xs[i]
        y = ys[i]
        tv = 0.0
        tx = 0.0
        ty = 0.0
        c = 0
        for j in range(order.shape[0]):
            n = order[j]
            u2 = y * y * n * n
            lo = math.ceil(-R - x * n)
            hi = math.floor(R - x * n)
            rv = 0.0
            rx = 0.0
            ry = 0.0
            for m in range(lo, hi + 1):
                if m == 0 and n == 0:
                    continue
                t = m + x * n
                F = t * t + u2
                p = _negpow(F / y, s)
                w = p / F
                rv += p
                rx += n * t * w
                ry += (t * t - u2) * w
                c += 1
            tv += rv
            tx += rx
            ty += ry
        val[i] = tv
        gx[i] = -s * tx
        gy[i] = h / y * ty
        cnt[i] = c
    return val, gx, gy, cnt


@njit(cache=True)
def rows_value(xs, ys, s, R, Nn):
    npts = xs.shape[0]
    val = np.empty(npts)
    order = _row_order(Nn)
    for i in range(npts):
        x = xs[i]
        y = ys[i]
        tv = 0.0
        for j in range(order.shape[0]):
            n = order[j]
            u2 = y * y * n * n
            lo = math.ceil(-R - x * n)
            hi = math.floor(R - x * n)
            rv = 0.0
            for m in range(lo, hi + 1):
                if m == 0 and n == 0:
                    continue
                t = m + x * n
                rv += _negpow((t * t + u2) / y, s)
            tv += rv
        val[i] = tv
    return val


@njit(cache=True)
def rows_log_weighted(xs, ys, s, R, Nn):
    npts = xs.shape[0]
    val = np.empty(npts)
    order = _row_order(Nn)
    for i in range(npts):
        x = xs[i]
        y = ys[i]
        tv = 0.0
        for j in range(order.shape[0]):
            n = order[j]
            u2 = y * y * n * n
            lo = math.ceil(-R - x * n)
            hi = math.floor(R - x * n)
            rv = 0.0
            for m in range(lo, hi + 1):
                if m == 0 and n == 0:
                    continue
                t = m + x * n
                q = (t * t + u2) / y
                rv += (0.5 * s * math.log(q) + 1.0) * _negpow(q, s)
            tv += rv
        val[i] = -tv
    return val


@njit(cache=True)
def _abs_sup(lo, hi):
    return max(abs(lo), abs(hi))


@njit(cache=True)
def rows_hessian_sup(x0s, x1s, y0s, y1s, s, R, Nn):
    """Termwise upper bounds of |d2/dx2|, |d2/dxdy|, |d2/dy2| over boxes.

    For box ``i`` every index pair whose ``m + x n`` can fall in ``[-R, R]``
    for some ``x`` in ``[x0, x1]`` is included, so the complement is covered
    by the row tail bound with the same ``(R, Nn)``.
    """
    h = 0.5 * s
    npts = x0s.shape[0]
    hxx = np.empty(npts)
    hxy = np.empty(npts)
    hyy = np.empty(npts)
    order = _row_order(Nn)
    for i in range(npts):
        x0 = x0s[i]
        x1 = x1s[i]
        y0 = y0s[i]
        y1 = y1s[i]
        yh = y1**h
        yh1 = y1 ** (h - 1.0)
        yh2 = y1 ** (h - 2.0) if h >= 2.0 else y0 ** (h - 2.0)
        sxx = 0.0
        sxy = 0.0
        syy = 0.0
        for j in range(order.shape[0]):
            n = order[j]
            an = abs(n)
            if n >= 0:
                lo = math.ceil(-R - x1 * n)
                hi = math.floor(R - x0 * n)
            else:
                lo = math.ceil(-R - x0 * n)
                hi = math.floor(R - x1 * n)
            umin2 = (y0 * an) ** 2
            umax2 = (y1 * an) ** 2
            for m in range(lo, hi + 1):
                if m == 0 and n == 0:
                    continue
                ta = m + x0 * n
                tb = m + x1 * n
                tmax = max(abs(ta), abs(tb))
                if ta * tb <= 0.0:
                    tmin = 0.0
                else:
                    tmin = min(abs(ta), abs(tb))
                tmin2 = tmin * tmin
                tmax2 = tmax * tmax
                Fmin = tmin2 + umin2
                Fmax = tmax2 + umax2
                base = 1.0 / (Fmin**h * Fmin * Fmin)  # Fmin^(-h-2)
                # xx: 2h n^2 y^h F^(-h-2) (F - 2(h+1) t^2)
                e_xx = _abs_sup(Fmin - 2 * (h + 1) * tmax2, Fmax - 2 * (h + 1) * tmin2)
                sxx += 2 * h * n * n * yh * base * e_xx
                # xy: 2h n t y^(h-1) F^(-h-2) (h F - 2(h+1) u^2)
                e_xy = _abs_sup(h * Fmin - 2 * (h + 1) * umax2, h * Fmax - 2 * (h + 1) * umin2)
                sxy += 2 * h * an * tmax * yh1 * base * e_xy
                # yy: h y^(h-2) F^(-h-2) [(t^2-u^2)((h-1)F - 2(h+1)u^2) - 2u^2 F]
                a_abs = _abs_sup(tmin2 - umax2, tmax2 - umin2)
                b_abs = _abs_sup((h - 1) * Fmin - 2 * (h + 1) * umax2, (h - 1) * Fmax - 2 * (h + 1) * umin2)
                syy += h * yh2 * base * (a_abs * b_abs + 2 * umax2 * Fmax)
        hxx[i] = sxx
        hxy[i] = sxy
        hyy[i] = syy
    return hxx, hxy, hyy


@njit(cache=True)
def riemann_partial(s, N):
    # summed from the smallest term upwards
    total = 0.0
    for m in range(N, 0, -1):
        total += float(m) ** (-s)
    return total
