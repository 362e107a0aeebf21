"""Displacement sensitivity of n-compass states.

The self-term overlap vanishes exactly where

    f(r; phi) = sum_m [cos(2 a r cos(phi + m pi/2n)) + cos(2 a r sin(phi + m pi/2n))]

is zero (``r = |delta|``, ``phi = arg delta``).  Around an expansion point
``y`` the function is truncated to a quadratic ``A r^2 + B r + C``; the
coefficients come either from direct trigonometric sums or from their
Jacobi-Anger/Bessel reduction.  The quadratic root is then polished by
Newton iteration on ``f`` itself.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .special import bessel_j_table
from .states import Displacement, DomainError, default_amplitude, separation_ok

log = logging.getLogger(__name__)

NEWTON_TOL = 1e-13
NEWTON_MAXITER = 50
DEFAULT_STEPS = 720


class NoRealRootError(ArithmeticError):
    """The quadratic truncation has no real root near the expansion point."""


class RootNotConvergedError(ArithmeticError):
    def __init__(self, message: str, last_iterate: float):
        super().__init__(message)
        self.last_iterate = last_iterate


@dataclass(frozen=True)
class QuadraticCoefficients:
    a_coef: float
    b_coef: float
    c_coef: float
    expansion_point: float
    n: int
    a: float
    arg_delta: float
    form: str

    def __call__(self, r: float) -> float:
        return (self.a_coef * r + self.b_coef) * r + self.c_coef


@dataclass
class SensitivityReport:
    n: int
    a: float
    delta_min: float
    arg_min: float
    root_range_low: float
    root_range_high: float
    sweep_period: float
    samples: list[tuple[float, float]] = field(default_factory=list)
    arg_max: float = 0.0
    expansion_point: float = 0.0

    @property
    def isotropy(self) -> float:
        return isotropy_metric(self)

    def table(self) -> str:
        a = self.a
        lines = [
            f"n               {self.n}",
            f"a               {a:.17g}",
            f"y (expansion)   {self.expansion_point:.17g}",
            f"delta_min       {self.delta_min:.12e}",
            f"a*delta_min     {a * self.delta_min:.12f}",
            f"arg_min         {self.arg_min:.12f}  ({self.arg_min * 4 * self.n / math.pi:.6f} x pi/4n)",
            f"root range      [{self.root_range_low:.12e}, {self.root_range_high:.12e}]",
            f"a*root range    [{a * self.root_range_low:.12f}, {a * self.root_range_high:.12f}]",
            f"isotropy        {isotropy_metric(self):.6e}",
            f"period          {self.sweep_period:.12f}",
        ]
        return "\n".join(lines) + "\n"

    def rows(self) -> str:
        """Machine-readable ``n a arg_delta root`` rows, ordered by arg delta."""
        return "".join(f"{self.n} {self.a!r} {phi!r} {r!r}\n" for phi, r in self.samples)


def _check_na(n, a):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")


def _angles(n: int, arg_delta: float) -> np.ndarray:
    return arg_delta + np.arange(n) * (math.pi / (2 * n))


def _f_and_df(n: int, a: float, arg_delta: float, r: float) -> tuple[float, float]:
    th = _angles(n, arg_delta)
    c = np.cos(th)
    s = np.sin(th)
    f = np.sum(np.cos(2 * a * r * c) + np.cos(2 * a * r * s))
    df = -2 * a * np.sum(c * np.sin(2 * a * r * c) + s * np.sin(2 * a * r * s))
    return float(f), float(df)


def root_condition(n: int, a: float, delta: Displacement) -> float:
    _check_na(n, a)
    return _f_and_df(int(n), a, delta.direction, delta.magnitude)[0]


def root_condition_scan(n: int, a: float, arg_delta: float, r: np.ndarray) -> np.ndarray:
    th = _angles(n, arg_delta)
    rr = np.asarray(r, dtype=float)[..., None]
    return np.sum(np.cos(2 * a * rr * np.cos(th)) + np.cos(2 * a * rr * np.sin(th)), axis=-1)


def taylor_coeffs_raw(n: int, a: float, arg_delta: float, y: float) -> QuadraticCoefficients:
    """Quadratic truncation about ``y`` from direct trigonometric sums."""
    _check_na(n, a)
    if y <= 0:
        raise DomainError(f"expansion point must be positive, got {y}")
    th = _angles(int(n), arg_delta)
    c = np.cos(th)
    s = np.sin(th)
    z = 2 * a * y
    cc = np.cos(z * c)
    cs = np.cos(z * s)
    sc = np.sin(z * c)
    ss = np.sin(z * s)
    A = float(np.sum(-2 * a * a * s * s * cs - 2 * a * a * c * c * cc))
    B = float(np.sum(4 * a * a * y * s * s * cs - 2 * a * s * ss
                     + 4 * a * a * y * c * c * cc - 2 * a * c * sc))
    C = float(np.sum(2 * a * y * s * ss - 2 * a * a * y * y * s * s * cs + cs + cc
                     + 2 * a * y * c * sc - 2 * a * a * y * y * c * c * cc))
    return QuadraticCoefficients(A, B, C, y, int(n), a, arg_delta, "raw_taylor")


def _harmonic_count(n: int, z: float) -> int:
    # keep multiples k of the 4n-th harmonic while J_{4kn-2}(z) can matter
    k = 1
    while 4 * n * (k + 1) - 2 <= abs(z) + 40:
        k += 1
    return k


def taylor_coeffs_bessel(n: int, a: float, arg_delta: float, y: float,
                         harmonics: int | None = None) -> QuadraticCoefficients:
    """Quadratic truncation about ``y`` in Bessel form.

    Summing over the ``n`` rotated compasses leaves only the harmonics
    ``cos(4 k n arg_delta)``.  ``harmonics=1`` keeps just ``k = 1``, the
    closed form usually quoted; the default keeps every ``k`` whose Bessel
    orders are within reach of ``2 a y``, which makes the form agree with
    :func:`taylor_coeffs_raw` to rounding.
    """
    _check_na(n, a)
    if y <= 0:
        raise DomainError(f"expansion point must be positive, got {y}")
    n = int(n)
    z = 2 * a * y
    K = _harmonic_count(n, z) if harmonics is None else int(harmonics)
    if K < 1:
        raise DomainError(f"harmonics must be >= 1, got {harmonics}")
    J = bessel_j_table(4 * n * K + 2, z)
    A = 2 * a * a * n * (J[2] - J[0])
    dB = -4 * a * n * J[1]
    C0 = 2 * n * J[0]
    for k in range(1, K + 1):
        q = 4 * n * k
        ck = math.cos(q * arg_delta)
        A += n * a * a * ck * (2 * J[q - 2] + 2 * J[q + 2] - 4 * J[q])
        dB += 4 * a * n * ck * (J[q - 1] - J[q + 1])
        C0 += 4 * n * ck * J[q]
    B = -2 * A * y + dB
    C = -A * y * y - B * y + C0
    return QuadraticCoefficients(A, B, C, y, n, a, arg_delta, "bessel")


def dropped_harmonic_bound(n: int, a: float, y: float) -> float:
    """Size of the first harmonic left out by the single-harmonic Bessel form."""
    z = 2 * a * y
    J = bessel_j_table(8 * n + 2, z)
    q = 8 * n
    return n * a * a * (2 * abs(J[q - 2]) + 2 * abs(J[q + 2]) + 4 * abs(J[q]))


def solve_quadratic_root(coeffs: QuadraticCoefficients, disc_tol: float = 1e-12) -> float:
    """Positive root of ``A r^2 + B r + C`` nearest the expansion point."""
    A, B, C = coeffs.a_coef, coeffs.b_coef, coeffs.c_coef
    y = coeffs.expansion_point
    scale = max(abs(A) * y * y, abs(B) * y, abs(C), 1e-300)
    if abs(A) * y * y <= 1e-14 * scale:
        if B == 0:
            raise NoRealRootError("degenerate quadratic: A and B both vanish")
        roots = [-C / B]
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            if disc < -disc_tol:
                raise NoRealRootError(f"negative discriminant {disc:.3e} at arg_delta={coeffs.arg_delta}")
            disc = 0.0
        sq = math.sqrt(disc)
        # cancellation-free pair of roots
        q = -0.5 * (B + math.copysign(sq, B))
        roots = [q / A, C / q] if q != 0 else [-B / (2 * A)]
    positive = [r for r in roots if r > 0]
    if not positive:
        raise NoRealRootError(f"no positive root among {roots}")
    return min(positive, key=lambda r: abs(r - y))


def refine_root(n: int, a: float, arg_delta: float, seed_root: float,
                tol: float = NEWTON_TOL, maxiter: int = NEWTON_MAXITER) -> float:
    """Newton iteration on the root condition at fixed direction."""
    if seed_root <= 0:
        raise DomainError(f"seed must be positive, got {seed_root}")
    r = seed_root
    f, df = _f_and_df(n, a, arg_delta, r)
    for _ in range(maxiter):
        if abs(f) < tol:
            return r
        if df == 0.0:
            break
        r = r - f / df
        f, df = _f_and_df(n, a, arg_delta, r)
    if abs(f) < tol:
        return r
    raise RootNotConvergedError(f"Newton did not converge (|f| = {abs(f):.3e})", r)


def first_root(n: int, a: float, arg_delta: float, upper: float, step: float | None = None) -> float | None:
    """Smallest sign change of the root condition in ``(0, upper]``, bracketed and solved."""
    h = step if step is not None else 1e-3 / a
    grid = np.arange(h, upper + h, h)
    vals = root_condition_scan(n, a, arg_delta, grid)
    idx = np.nonzero(vals[:-1] * vals[1:] <= 0.0)[0]
    if idx.size == 0:
        return None
    i = idx[0]
    return brentq(lambda r: _f_and_df(n, a, arg_delta, r)[0], grid[i], grid[i + 1],
                  xtol=1e-16, rtol=4 * np.finfo(float).eps)


def quadratic_seed(n: int, a: float, arg_delta: float, y: float) -> float:
    return solve_quadratic_root(taylor_coeffs_bessel(n, a, arg_delta, y))


def ring_root(n: int, a: float, arg_delta: float, y: float | None = None) -> float:
    """Innermost zero of the self-term overlap in direction ``arg_delta``.

    Quadratic seed about ``y`` then Newton; a scan from the origin makes sure
    no earlier zero was skipped.
    """
    y = 6.0 / (5.0 * a) if y is None else y
    try:
        r = refine_root(n, a, arg_delta, quadratic_seed(n, a, arg_delta, y))
    except (NoRealRootError, RootNotConvergedError) as exc:
        log.debug("seeded solve failed at arg_delta=%g: %s", arg_delta, exc)
        r = None
    upper = r if r is not None else 4.0 * y
    earlier = first_root(n, a, arg_delta, upper * (1 - 1e-9))
    if earlier is not None:
        try:
            r = refine_root(n, a, arg_delta, earlier)
        except RootNotConvergedError:
            r = earlier
    if r is None:
        raise NoRealRootError(f"no zero of the root condition below {upper:g} at arg_delta={arg_delta}")
    return r


def sensitivity_sweep(n: int, a: float, steps: int = DEFAULT_STEPS, y: float | None = None) -> SensitivityReport:
    """Innermost-ring radius over one period ``[0, pi/2n)`` of ``arg delta``."""
    _check_na(n, a)
    if steps < 8:
        raise DomainError(f"steps must be >= 8, got {steps}")
    n = int(n)
    y = 6.0 / (5.0 * a) if y is None else y
    period = math.pi / (2 * n)
    phis = [i * period / steps for i in range(steps)]
    samples = [(phi, ring_root(n, a, phi, y)) for phi in phis]
    roots = np.array([r for _, r in samples])
    i_min = int(np.argmin(roots))
    i_max = int(np.argmax(roots))
    h = period / steps

    def polish(i: int, sign: float) -> tuple[float, float]:
        phi0 = phis[i]
        res = minimize_scalar(lambda t: sign * ring_root(n, a, t, y), bounds=(phi0 - h, phi0 + h),
                              method="bounded", options={"xatol": 1e-10})
        best = (phi0, roots[i])
        if sign * res.fun < sign * best[1]:
            best = (float(res.x) % period, sign * float(res.fun))
        return best

    arg_min, low = polish(i_min, 1.0)
    arg_max, high = polish(i_max, -1.0)
    return SensitivityReport(n, a, low, arg_min, low, high, period, samples, arg_max, y)


def isotropy_metric(report: SensitivityReport) -> float:
    """Dimensionless oscillation width ``a (r_max - r_min)`` of the innermost ring."""
    return (report.root_range_high - report.root_range_low) * report.a


def asymptotic_isotropy_table(n_max: int, a: float | None = None, steps: int = DEFAULT_STEPS,
                              n_min: int = 1) -> list[tuple[int, float]]:
    """Isotropy metric for ``n = n_min .. n_max``.

    Every sweep expands about ``y = 6/(5a)``, so ``2 a y`` is the same for
    all ``n``.  With ``a=None`` each ``n`` uses its default amplitude.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    rows = []
    for n in range(n_min, n_max + 1):
        a_n = default_amplitude(n) if a is None else a
        if not separation_ok(n, a_n):
            warnings.warn(f"a={a_n:g} puts adjacent coherent states of the n={n} state closer than 6 units",
                          RuntimeWarning, stacklevel=2)
        rows.append((n, isotropy_metric(sensitivity_sweep(n, a_n, steps))))
    return rows
