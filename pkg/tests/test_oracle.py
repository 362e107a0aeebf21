import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subplanck import oracle, overlap, wigner
from subplanck.states import Displacement, make_cat, make_coherent, make_n_compass


def test_vacuum():
    v = oracle.fock_coherent(0.0, 1.0, 20)
    assert v.amplitudes[0] == 1 and np.all(v.amplitudes[1:] == 0)


def test_coherent_norm_and_tail():
    v = oracle.fock_coherent(5.0, 0.3, 120)
    assert v.norm2() == pytest.approx(1.0, abs=1e-12)
    assert v.tail_ok()
    with pytest.raises(oracle.TruncationError):
        oracle.fock_coherent(5.0, 0.0, 70)


def test_cat_inner_product_extended_precision():
    # e^{-50} is far below the Poisson tail at the default cutoff, so go further out
    dim = 200
    u = oracle.fock_coherent_mp(5.0, 0.0, dim, dps=80)
    w = oracle.fock_coherent_mp(5.0, mpmath.pi, dim, dps=80)
    ip = oracle.inner_mp(u, w, dps=80)
    assert float(abs(ip - mpmath.exp(-50)) / mpmath.exp(-50)) < 1e-15


def test_displace_vacuum_is_coherent():
    dim = 40
    d = Displacement(1.2, 0.7)
    out = oracle.fock_displace(oracle.fock_coherent(0.0, 0.0, dim), d)
    ref = oracle.fock_coherent(1.2, 0.7, dim)
    assert np.max(np.abs(out.amplitudes - ref.amplitudes)) < 1e-10
    same = oracle.fock_displace(ref, Displacement(0.0))
    assert np.max(np.abs(same.amplitudes - ref.amplitudes)) < 1e-14


def test_truncation_detected():
    v = oracle.fock_coherent(3.0, 0.0, 60)
    with pytest.raises(oracle.TruncationError):
        oracle.fock_displace(v, Displacement(4.0))


@settings(max_examples=15)
@given(st.floats(0, 4), st.floats(0, 2 * math.pi), st.floats(0, 4), st.floats(0, 2 * math.pi),
       st.floats(0, 2), st.floats(0, 2 * math.pi))
def test_pair_overlap_against_fock(a1, t1, a2, t2, r, t):
    d = Displacement(r, t)
    dim = oracle.fock_dimension(max(a1, a2) + r)
    u = oracle.fock_coherent(a1, t1, dim)
    v = oracle.fock_displace(oracle.fock_coherent(a2, t2, dim), d)
    assert abs(u.inner(v) - overlap.pair_overlap(a1, t1, a2, t2, d)) < 1e-10


def test_compass_amplitude_against_fock():
    s = make_n_compass(1, 5)
    d = Displacement(0.3, 1.1)
    _, amp = oracle.fock_gamma(s, d)
    assert abs(amp - overlap.amplitude_exact(s, d)) < 1e-8


def test_quadrature_coherent_peak():
    a = 2.0
    assert oracle.wigner_quadrature(make_coherent(a), 2 * a, 0.0) == pytest.approx(1 / (2 * math.pi), abs=1e-9)


def test_quadrature_cat_node():
    a = 5.0
    s = make_cat(a)
    # fringes go as cos(2ap): first node at p = pi/(4a)
    v = oracle.wigner_quadrature(s, 0.0, math.pi / (4 * a))
    assert abs(v) < 1e-9
    p = math.pi / (2 * a)
    assert oracle.wigner_quadrature(s, 0.0, p) == pytest.approx(
        wigner.wigner_exact(s, wigner.PhasePoint(0.0, p)).value, abs=1e-9)


def test_position_density_normalised():
    s = make_n_compass(1, 3)
    xs = np.linspace(-20, 20, 4001)
    assert np.trapezoid(oracle.position_density(s, xs), xs) == pytest.approx(1.0, abs=1e-9)
