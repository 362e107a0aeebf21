"""Cross-checks of the closed forms against independent references.

Each check returns a :class:`Check` carrying the observed error and the
tolerance it was held to.  The ``validate`` subcommand prints them as a
table; the test suite asserts on the same objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from . import oracle, overlap, sensitivity, special, wigner
from .states import Displacement, default_amplitude, gram_norm_squared, make_n_compass


@dataclass(frozen=True)
class Check:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<34} {self.error:11.3e} {self.tolerance:9.1e}  {status}"


def bessel_vs_mpmath(z_values=(0.5, 3.0, 14.4, 28.8, 30.0), max_order=60) -> Check:
    worst = 0.0
    for z in z_values:
        table = special.bessel_j_table(max_order, z)
        for k in range(max_order + 1):
            ref = float(mpmath.besselj(k, z))
            worst = max(worst, abs(table[k] - ref) / max(abs(ref), 1e-300) if abs(ref) > 1e-280 else 0.0)
    return Check("bessel vs mpmath (relative)", worst, 1e-12)


def bessel_recurrence(z_values=(1.0, 9.6, 14.4, 30.0), max_order=80) -> Check:
    worst = 0.0
    for z in z_values:
        J = special.bessel_j_table(max_order, z)
        k = np.arange(1, max_order)
        resid = J[k - 1] + J[k + 1] - (2 * k / z) * J[k]
        worst = max(worst, float(np.max(np.abs(resid))))
    return Check("bessel three-term recurrence", worst, 1e-13)


def bessel_normalisation(z_values=(0.1, 2.0, 14.4, 30.0)) -> Check:
    worst = 0.0
    for z in z_values:
        J = special.bessel_j_table(int(z) + 60, z)
        worst = max(worst, abs(J[0] + 2 * np.sum(J[2::2]) - 1.0))
        worst = max(worst, abs(J[0] ** 2 + 2 * np.sum(J[1:] ** 2) - 1.0))
    return Check("bessel normalisation sums", worst, 1e-13)


_CLOSED: dict[str, Callable[[float, float], float]] = {
    "cos_cos": lambda z, t: math.cos(z * math.cos(t)),
    "cos_sin": lambda z, t: math.cos(z * math.sin(t)),
    "sin_sin": lambda z, t: math.sin(z * math.sin(t)),
    "sin_cos": lambda z, t: math.sin(z * math.cos(t)),
}


def jacobi_anger_closed_forms(z_values=(0.0, 1.0, 7.5, 19.2, 30.0), n_theta=17) -> Check:
    worst = 0.0
    for kind, closed in _CLOSED.items():
        for z in z_values:
            for t in np.linspace(-math.pi, math.pi, n_theta):
                worst = max(worst, abs(special.jacobi_anger(kind, z, float(t)) - closed(z, float(t))))
    return Check("jacobi-anger closed forms", worst, 1e-12)


def fock_overlap(n: int, a: float, count: int = 12, seed: int = 7) -> Check:
    rng = np.random.default_rng(seed)
    state = make_n_compass(n, a)
    worst = 0.0
    for _ in range(count):
        d = Displacement(float(rng.uniform(0, 1)), float(rng.uniform(0, 2 * math.pi)))
        g_ref, _ = oracle.fock_gamma(state, d)
        worst = max(worst, abs(overlap.gamma_exact(state, d).gamma - g_ref))
    return Check(f"fock gamma n={n} a={a:g}", worst, 1e-8)


def wigner_quadrature(n: int, a: float, count: int = 6, seed: int = 11) -> Check:
    rng = np.random.default_rng(seed)
    state = make_n_compass(n, a)
    h = 2 * a + 4
    worst = 0.0
    for _ in range(count):
        x, p = (float(v) for v in rng.uniform(-h, h, 2))
        exact = wigner.wigner_exact(state, wigner.PhasePoint(x, p)).value
        worst = max(worst, abs(exact - oracle.wigner_quadrature(state, x, p)))
    return Check(f"wigner quadrature n={n} a={a:g}", worst, 1e-7)


def compass_decomposition(a: float = 5.0) -> Check:
    xs = np.linspace(-2 * a - 6, 2 * a + 6, 121)
    X, P = np.meshgrid(xs, xs)
    state = make_n_compass(1, a)
    grid = wigner.wigner_grid(state, xs, xs) * 2 * math.pi * gram_norm_squared(state)
    err = float(np.max(np.abs(grid - wigner.compass_wigner_decomposed(X, P, a))))
    return Check(f"compass term decomposition a={a:g}", err, 1e-9)


def taylor_forms(n: int, a: float, y: float, samples: int = 32) -> Check:
    worst = 0.0
    for i in range(samples):
        phi = i * math.pi / (2 * n * samples)
        raw = sensitivity.taylor_coeffs_raw(n, a, phi, y)
        bes = sensitivity.taylor_coeffs_bessel(n, a, phi, y)
        worst = max(worst, abs(raw.a_coef - bes.a_coef), abs(raw.b_coef - bes.b_coef),
                    abs(raw.c_coef - bes.c_coef))
    return Check(f"taylor raw vs bessel n={n}", worst, 1e-11)


def run_checks(n: int | None = None, a: float | None = None, quick: bool = False) -> list[Check]:
    """All checks; ``n``/``a`` restrict the state-dependent ones to a single state."""
    checks = [bessel_vs_mpmath(), bessel_recurrence(), bessel_normalisation(), jacobi_anger_closed_forms()]
    if n is not None:
        pairs = [(n, a if a is not None else default_amplitude(n))]
    else:
        pairs = [(1, 5.0), (2, 8.0)]
    for nn, aa in pairs:
        checks.append(fock_overlap(nn, aa))
    checks.append(taylor_forms(2, 8.0, 0.15))
    checks.append(taylor_forms(3, 12.0, 0.1))
    if not quick:
        checks.append(compass_decomposition())
        for nn, aa in pairs:
            checks.append(wigner_quadrature(nn, aa))
    return checks
