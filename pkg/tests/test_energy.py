import math

import numpy as np
import pytest

from conftest import random_domain_points
from ljcert.energy import (
    ExponentPair,
    LJParams,
    conjecture_scan,
    delta_over_s,
    global_volume_bound,
    lj_energy,
    min_dilated_energy,
    optimal_volume,
    quotient_Q,
    zeta_difference,
)
from ljcert.lattice import DomainPoint, SQUARE, TRIANGULAR
from ljcert.zeta import IndeterminateQuotient, TruncationSpec, epstein_partial, log_weighted_sum


def test_exponent_pair_validation():
    with pytest.raises(ValueError):
        ExponentPair(6, 12)
    with pytest.raises(ValueError):
        ExponentPair(4, 2)
    with pytest.raises(ValueError):
        LJParams(ExponentPair(12, 6), a=0.0)
    assert ExponentPair(12, 6).ratio == 2.0


def test_optimal_volume_of_triangular_lattice():
    V = optimal_volume(TRIANGULAR, LJParams(ExponentPair(12, 6)))
    assert V == pytest.approx(1.07, abs=5e-3)


def test_triangular_lattice_has_lowest_minimal_energy():
    params = LJParams(ExponentPair(12, 6))
    e_tri = min_dilated_energy(TRIANGULAR, params)
    for p in (SQUARE, DomainPoint(0.3, 1.2), DomainPoint(0.45, 0.95)):
        assert min_dilated_energy(p, params) > e_tri


def test_global_volume_bound_exceeds_optimal_volume():
    params = LJParams(ExponentPair(12, 6), a=1.0, b=2.0)
    assert optimal_volume(TRIANGULAR, params) < global_volume_bound(params)


def test_scaling_identity_with_explicit_scaled_sum():
    # direct sum over the scaled lattice sqrt(V) L
    p, V, s, N = DomainPoint(0.2, 1.3), 2.7, 7.0, 60
    m, n = np.meshgrid(np.arange(-N, N + 1), np.arange(-N, N + 1))
    q = V * ((m + p.x * n) ** 2 / p.y + p.y * n**2).astype(float)
    q[N, N] = np.inf
    scaled = float(np.sum(q ** (-s / 2)))

    assert scaled == pytest.approx(V ** (-s / 2) * epstein_partial(p, s, TruncationSpec(N)), rel=1e-12)


def test_quotient_at_square_lattice():
    q = quotient_Q(SQUARE, ExponentPair(12, 6))
    assert q.contains(2.95298) or abs(q.mid - 2.95298) < 1e-4
    assert q.lo > 2


def test_quotient_refuses_triangular_lattice():
    with pytest.raises(IndeterminateQuotient):
        quotient_Q(TRIANGULAR, ExponentPair(12, 6))


def test_zeta_difference_and_monotone_ratio():
    p = DomainPoint(0.2, 1.1)
    assert zeta_difference(p, 6.0, 1e-9).lo > 0
    # Q > alpha/beta  <=>  Delta(s)/s increases from beta to alpha
    assert delta_over_s(p, 12.0, 1e-9).lo > delta_over_s(p, 6.0, 1e-9).hi


def test_log_weighted_identity(rng):
    # F_s = s d/ds zeta - zeta, checked by central differences in s
    for x, y in random_domain_points(rng, 5, y_max=2.0):
        p = DomainPoint(x, y)
        s, h = 8.0, 1e-4
        z = lambda t: epstein_partial(p, t, TruncationSpec(300))
        dz = (z(s + h) - z(s - h)) / (2 * h)
        F = log_weighted_sum(p, s, TruncationSpec(300))
        assert F == pytest.approx(s * dz - z(s), rel=1e-6)


def test_conjecture_scan_small_grid():
    class G:
        xs = (0.0, 0.25, 0.5)
        ys = (0.87, 1.0, 1.5)

    rows, arg = conjecture_scan(6.0, G)
    assert rows.shape == (9, 3)
    assert arg == (0.5, 0.87)
