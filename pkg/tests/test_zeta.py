import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from ljcert import _kernels as K
from ljcert.lattice import DomainPoint, SQUARE, TRIANGULAR
from ljcert.zeta import (
    CertifiedValue,
    DivergentExponentError,
    IndeterminateQuotient,
    PrecisionError,
    TruncationSpec,
    bulk_zeta,
    epstein_certified,
    epstein_gradient,
    epstein_partial,
    epstein_tail_bound,
    hessian_sup,
    plan_rows,
    riemann_certified,
    riemann_tail_bound,
    row_tail_bound,
)


def direct_sum(x, y, s, N):
    """Independent numpy summation over the box ``|m|, |n| <= N``."""
    m, n = np.meshgrid(np.arange(-N, N + 1, dtype=float), np.arange(-N, N + 1, dtype=float))
    q = (m + x * n) ** 2 / y + y * n * n
    q[N, N] = np.inf
    return float(np.sort(q.ravel() ** (-s / 2)).sum())


def square_closed_form(s):
    # zeta_Z2(s) = 4 zeta(s/2) beta(s/2)
    k = s / 2
    beta = mpmath.nsum(lambda j: (-1) ** j / (2 * j + 1) ** k, [0, mpmath.inf])
    return float(4 * mpmath.zeta(k) * beta)


@pytest.mark.parametrize("s", [6.0, 12.0])
def test_square_lattice_values(s):
    v = epstein_certified(SQUARE, s, 1e-8)
    assert v.rad <= 1e-8
    assert v.contains(square_closed_form(s))


def test_triangular_value_against_direct_sum():
    v = epstein_certified(TRIANGULAR, 12.0, 1e-8)
    assert v.mid == pytest.approx(direct_sum(0.5, math.sqrt(3) / 2, 12.0, 200), abs=1e-8)
    assert round(v.mid, 2) == 2.54


def test_divergent_and_bad_tolerance():
    with pytest.raises(DivergentExponentError):
        epstein_certified(SQUARE, 2.0)
    with pytest.raises(DivergentExponentError):
        riemann_certified(1.0)
    with pytest.raises(ValueError):
        epstein_certified(SQUARE, 6.0, tol=0.0)
    with pytest.raises(PrecisionError):
        epstein_certified(SQUARE, 6.0, tol=1e-17)
    with pytest.raises(PrecisionError):
        epstein_certified(SQUARE, 2.5, tol=1e-10)


def test_riemann():
    v = riemann_certified(6.0, 1e-12)
    assert v.contains(math.pi**6 / 945)
    assert v.rad <= 1e-12


@given(
    st.floats(0, 0.5),
    st.floats(math.sqrt(3) / 2, 4.0),
    st.floats(3.0, 20.0),
    st.integers(2, 30),
)
def test_box_tail_bound_is_sound(x, y, s, N):
    p = DomainPoint(x, y)
    gap = epstein_partial(p, s, TruncationSpec(4 * N)) - epstein_partial(p, s, TruncationSpec(N))
    assert 0 <= gap <= epstein_tail_bound(y, s, TruncationSpec(N)) * (1 + 1e-9) + 1e-13


@given(st.floats(1.5, 20.0), st.integers(1, 400))
def test_riemann_tail_bound_is_sound(s, N):
    full = K.riemann_partial(s, 4 * N)
    gap = full - K.riemann_partial(s, N)
    slack = 4 * 2.0**-53 * full  # rounding of the two partial sums
    assert -slack <= gap <= riemann_tail_bound(s, N) + slack


def test_row_scheme_tail_is_sound():
    # rows with a loose radius compared to a generous box reference
    for y in (0.87, 1.0, 2.5):
        for x in (0.0, 0.23, 0.5):
            ref = epstein_certified(DomainPoint(x, y), 6.0, 1e-9)
            for R in (3.0, 6.0, 10.0):
                Nn = math.ceil(R / y)
                part = K.rows_value(np.array([x]), np.array([y]), 6.0, R, Nn)[0]
                miss = ref.hi - part
                assert miss <= row_tail_bound(y, y, 6.0, R, Nn) + ref.rad


def test_bulk_agrees_with_box_route():
    xs = np.array([0.0, 0.1, 0.37, 0.5])
    ys = np.array([1.2, 1.2, 1.21, 1.25])
    b = bulk_zeta(xs, ys, 12.0, 1e-9)
    for i in range(4):
        ref = epstein_certified(DomainPoint(xs[i], ys[i]), 12.0, 1e-10)
        assert abs(b.value[i] - ref.mid) <= b.value_rad[i] + ref.rad


def test_gradient_against_finite_differences():
    xs = np.array([0.05, 0.3, 0.45])
    ys = np.array([1.1, 1.6, 0.95])
    h = 1e-5
    for s in (6.0, 12.0):
        b = bulk_zeta(xs, ys, s, 1e-10)
        for i in range(3):
            f = lambda x, y: epstein_certified(DomainPoint(x, y), s, 1e-10).mid
            fx = (f(xs[i] + h, ys[i]) - f(xs[i] - h, ys[i])) / (2 * h)
            fy = (f(xs[i], ys[i] + h) - f(xs[i], ys[i] - h)) / (2 * h)
            assert b.grad_x[i] == pytest.approx(fx, rel=1e-5, abs=1e-6)
            assert b.grad_y[i] == pytest.approx(fy, rel=1e-5, abs=1e-6)
            gx, gy = epstein_gradient(DomainPoint(xs[i], ys[i]), s, TruncationSpec(200))
            assert (gx, gy) == pytest.approx((b.grad_x[i], b.grad_y[i]), rel=1e-7, abs=1e-8)


def test_zeta_is_stationary_at_special_lattices():
    for p in (SQUARE, TRIANGULAR):
        gx, gy = epstein_gradient(p, 6.0, TruncationSpec(200))
        assert abs(gx) < 1e-8 and abs(gy) < 1e-8


def test_hessian_sup_dominates_sampled_second_derivatives():
    s = 6.0
    x0, x1, y0, y1 = 0.2, 0.26, 1.0, 1.06
    H = hessian_sup([x0], [x1], [y0], [y1], s)[0]
    h = 1e-3
    plan = plan_rows(y0 - h, y1 + h, s, 1e-11)
    f = lambda x, y: bulk_zeta(np.array([x]), np.array([y]), s, plan=plan).value[0]
    for x, y in [(0.2, 1.0), (0.26, 1.06), (0.23, 1.03), (0.2, 1.06)]:
        fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h**2
        fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h**2
        fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)
        assert math.sqrt(fxx**2 + 2 * fxy**2 + fyy**2) <= H


def test_certified_value_arithmetic():
    a = CertifiedValue(2.0, 0.1)
    b = CertifiedValue(1.0, 0.5)
    assert (a + b).contains(3.6) and (a - b).contains(0.4)
    assert (a * b).contains(2.1 * 1.5)
    assert (a / CertifiedValue(4.0, 1.0)).contains(1.9 / 5.0)
    with pytest.raises(IndeterminateQuotient):
        a / CertifiedValue(0.1, 0.2)
    with pytest.raises(ValueError):
        CertifiedValue(1.0, -1.0)


@given(st.floats(-1e3, 1e3), st.floats(0, 10), st.floats(-1e3, 1e3), st.floats(0, 10))
def test_interval_ops_enclose(m1, r1, m2, r2):
    # exact rational endpoints, so the oracle itself does not round
    F = Fraction
    a, b = CertifiedValue(m1, r1), CertifiedValue(m2, r2)

    def inside(c, value):
        return F(c.mid) - F(c.rad) <= value <= F(c.mid) + F(c.rad)

    for u in (F(m1) - F(r1), F(m1), F(m1) + F(r1)):
        for v in (F(m2) - F(r2), F(m2), F(m2) + F(r2)):
            assert inside(a + b, u + v)
            assert inside(a - b, u - v)
            assert inside(a * b, u * v)
