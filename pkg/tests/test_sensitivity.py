import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subplanck import sensitivity as sens
from subplanck.overlap import gamma_approx
from subplanck.states import Displacement, DomainError

phis = st.floats(0, math.pi / 2, allow_nan=False)


@given(phis)
def test_raw_vs_bessel_n2(phi):
    raw = sens.taylor_coeffs_raw(2, 8, phi, 0.15)
    bes = sens.taylor_coeffs_bessel(2, 8, phi, 0.15)
    for u, v in [(raw.a_coef, bes.a_coef), (raw.b_coef, bes.b_coef), (raw.c_coef, bes.c_coef)]:
        assert abs(u - v) < 1e-11


@given(phis, st.floats(0.05, 0.3))
def test_quadratic_matches_taylor(phi, y):
    n, a = 2, 8.0
    q = sens.taylor_coeffs_raw(n, a, phi, y)
    f0 = sens.root_condition(n, a, Displacement(y, phi))
    h = 1e-4
    fp = sens.root_condition(n, a, Displacement(y + h, phi))
    fm = sens.root_condition(n, a, Displacement(y - h, phi))
    assert q(y) == pytest.approx(f0, abs=1e-11)
    assert 2 * q.a_coef * y + q.b_coef == pytest.approx((fp - fm) / (2 * h), abs=1e-4 * a * a)
    assert 2 * q.a_coef == pytest.approx((fp - 2 * f0 + fm) / h ** 2, abs=1e-3 * a * a)


def test_single_harmonic_error_within_dropped_bound():
    n, a, y = 2, 8.0, 0.15
    bound = sens.dropped_harmonic_bound(n, a, y)
    for phi in np.linspace(0, math.pi / 4, 9):
        full = sens.taylor_coeffs_bessel(n, a, phi, y)
        one = sens.taylor_coeffs_bessel(n, a, phi, y, harmonics=1)
        assert abs(full.a_coef - one.a_coef) <= bound * 1.01


def test_quadratic_solver():
    q = sens.QuadraticCoefficients(1.0, -3.0, 2.0, 1.1, 1, 1.0, 0.0, "test")
    assert sens.solve_quadratic_root(q) == pytest.approx(1.0)
    q = sens.QuadraticCoefficients(1.0, -3.0, 2.0, 1.9, 1, 1.0, 0.0, "test")
    assert sens.solve_quadratic_root(q) == pytest.approx(2.0)
    with pytest.raises(sens.NoRealRootError):
        sens.solve_quadratic_root(sens.QuadraticCoefficients(1.0, 0.0, 1.0, 1.0, 1, 1.0, 0.0, "t"))
    # linear case
    q = sens.QuadraticCoefficients(0.0, 2.0, -1.0, 0.5, 1, 1.0, 0.0, "t")
    assert sens.solve_quadratic_root(q) == pytest.approx(0.5)


def test_refine_not_converged():
    with pytest.raises(sens.RootNotConvergedError) as info:
        sens.refine_root(2, 8, 0.1, 0.15, maxiter=0)
    assert info.value.last_iterate == 0.15


@given(phis)
def test_ring_root_is_a_zero_and_innermost(phi):
    n, a = 2, 8.0
    r = sens.ring_root(n, a, phi)
    assert abs(sens.root_condition(n, a, Displacement(r, phi))) < 1e-12
    grid = np.linspace(1e-6, r * (1 - 1e-7), 4000)
    vals = sens.root_condition_scan(n, a, phi, grid)
    assert np.all(vals > 0)
    assert gamma_approx(n, a, Displacement(r, phi)).gamma < 1e-15


def test_n1_tangent_direction():
    # at arg delta = 0 the n=1 condition only touches zero; the innermost zero is farther out
    a = 5.0
    r = sens.ring_root(1, a, 0.0)
    assert r * a >= math.pi / (2 * math.sqrt(2))


def test_sweep_periodicity():
    n, a = 2, 8.0
    rep = sens.sensitivity_sweep(n, a, steps=48)
    assert 0 <= rep.arg_min < rep.sweep_period
    assert rep.root_range_low <= min(r for _, r in rep.samples) + 1e-15
    assert rep.root_range_high >= max(r for _, r in rep.samples) - 1e-15
    shifted = sens.ring_root(n, a, 0.1 + rep.sweep_period)
    assert shifted == pytest.approx(sens.ring_root(n, a, 0.1), abs=1e-13)
    rows = rep.rows().splitlines()
    assert len(rows) == 48 and rows[0].split()[0] == "2"
    assert "isotropy" in rep.table()


def test_sweep_domain():
    with pytest.raises(DomainError):
        sens.sensitivity_sweep(0, 5)
    with pytest.raises(DomainError):
        sens.sensitivity_sweep(1, -5)
    with pytest.raises(DomainError):
        sens.sensitivity_sweep(1, 5, steps=3)


def test_isotropy_table_warns_on_crowding():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = sens.asymptotic_isotropy_table(3, 8.0, steps=16)
    assert [n for n, _ in rows] == [1, 2, 3]
    assert any("closer than 6" in str(w.message) for w in caught)
    with pytest.raises(DomainError):
        sens.asymptotic_isotropy_table(1, 8.0)
