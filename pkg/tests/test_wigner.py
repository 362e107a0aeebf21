import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subplanck import wigner
from subplanck.states import (DomainError, components_from, gram_norm_squared, make_cat, make_coherent,
                              make_n_compass)
from subplanck.wigner import PhasePoint, wigner_exact, wigner_grid

coord = st.floats(-14, 14, allow_nan=False)


def test_coherent_peak():
    a = 3.0
    v = wigner_exact(make_coherent(a), PhasePoint(2 * a, 0.0)).value
    assert v == pytest.approx(1 / (2 * math.pi))


def test_cat_formula():
    a = 2.5
    s = make_cat(a)
    for x, p in [(0.0, 0.0), (0.0, 0.4), (1.0, -0.7), (5.0, 0.1)]:
        peak = (wigner.coherent_lobe(x, p, a) + wigner.coherent_lobe(x, p, -a)
                 + wigner.cat_interference(x, p, a))
        assert wigner_exact(s, PhasePoint(x, p)).value == pytest.approx(
            peak / (2 * math.pi * gram_norm_squared(s)), abs=1e-15)


@given(coord, coord)
def test_value_is_real(x, p):
    s = components_from([2 + 1j, -1.5, 0.5 - 2j], [1, 0.3j, -0.7 + 0.2j])
    w = wigner_exact(s, PhasePoint(x, p))
    assert abs(w.raw_complex_imag) < 1e-14


@given(coord, coord)
def test_compass_decomposition(x, p):
    a = 5.0
    s = make_n_compass(1, a)
    peak = wigner_exact(s, PhasePoint(x, p)).value * 2 * math.pi * gram_norm_squared(s)
    assert peak == pytest.approx(float(wigner.compass_wigner_decomposed(x, p, a)), abs=1e-12)


def test_grid_matches_pointwise():
    s = make_n_compass(2, 4.0)
    xs = np.linspace(-9, 9, 13)
    ps = np.linspace(-8, 8, 11)
    g = wigner_grid(s, xs, ps)
    assert g.shape == (11, 13)
    for i, p in enumerate(ps):
        for j, x in enumerate(xs):
            assert g[i, j] == pytest.approx(wigner_exact(s, PhasePoint(x, p)).value, abs=1e-15)


@pytest.mark.parametrize("n,a", [(1, 5), (2, 8)])
def test_unit_integral(n, a):
    h = 2 * a + 6
    m = 300
    xs = -h + (np.arange(m) + 0.5) * 2 * h / m
    g = wigner_grid(make_n_compass(n, a), xs, xs)
    assert g.sum() * (2 * h / m) ** 2 == pytest.approx(1.0, abs=1e-4)


@given(coord, coord, st.integers(0, 7))
def test_rotational_symmetry(x, p, k):
    n, a = 2, 4.0
    s = make_n_compass(n, a)
    pt = PhasePoint(x, p)
    rot = wigner.rotate_point(pt, k * math.pi / (2 * n))
    assert wigner_exact(s, rot).value == pytest.approx(wigner_exact(s, pt).value, abs=1e-13)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_centre_approximation_near_origin(x, p):
    n, a = 2, 8.0
    s = make_n_compass(n, a)
    exact = wigner_exact(s, PhasePoint(x, p)).value * 2 * math.pi * gram_norm_squared(s)
    # dropped pairs have midpoints 2a cos(3pi/8) ~ 6.1 from the origin
    tol = 16 * math.exp(-0.5 * (2 * a * math.cos(3 * math.pi / 8) - math.hypot(x, p)) ** 2)
    assert wigner.wigner_center_approx(n, a, PhasePoint(x, p)) == pytest.approx(exact, abs=tol)


def test_tile_area():
    assert wigner.tile_area(5) == pytest.approx(math.pi ** 2 / 50)
    with pytest.raises(DomainError):
        wigner.tile_area(0)


def test_phase_point_finite():
    with pytest.raises(DomainError):
        PhasePoint(math.nan, 0)
