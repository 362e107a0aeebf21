"""Bessel functions of the first kind (integer order) and Jacobi-Anger sums.

Small arguments use the ascending power series directly. Everywhere else
the whole ladder ``J_0 .. J_N`` comes from Miller's backward recurrence,
normalised with ``J_0 + 2 sum_k J_2k = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import DomainError

_EPS = np.finfo(float).eps
_RESCALE = 1e250

JACOBI_ANGER_KINDS = ("cos_cos", "cos_sin", "sin_sin", "sin_cos")


@dataclass(frozen=True)
class BesselEval:
    order: int
    argument: float
    value: float
    abs_error_bound: float


def _check(order: int, z: float) -> tuple[int, float]:
    if int(order) != order or order < 0:
        raise DomainError(f"order must be a non-negative integer, got {order}")
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"argument must be finite, got {z}")
    return int(order), z


def _use_series(order: int, x: float) -> bool:
    # below |z| = 5 the largest series term is < 10, so cancellation costs < 1 digit;
    # when z^2/4 < order + 1 the terms decrease monotonically from the first
    return x < 5.0 or 0.25 * x * x < order + 1


def _series(order: int, x: float) -> tuple[float, float]:
    """Ascending series for ``J_order(x)``, ``x >= 0``; returns (value, abs error bound)."""
    if x == 0.0:
        return (1.0 if order == 0 else 0.0), 0.0
    half = 0.5 * x
    if half == 0.0:  # subnormal x
        return (1.0 if order == 0 else 0.0), 5e-324
    log_first = order * math.log(half) - math.lgamma(order + 1)
    if log_first < -745.0:
        return 0.0, 5e-324
    term = math.exp(log_first)
    q = -half * half
    total = term
    abs_total = abs(term)
    l = 0
    while True:
        l += 1
        term *= q / (l * (order + l))
        total += term
        abs_total += abs(term)
        if abs(term) <= 1e-17 * abs(total) or term == 0.0:
            break
    return total, 4.0 * _EPS * abs_total


def _miller_start(nmax: int, x: float) -> int:
    m = max(nmax, int(x)) + 30 + int(math.sqrt(60.0 * max(nmax, x, 1.0)))
    return m + (m % 2)


def _miller(nmax: int, x: float) -> np.ndarray:
    """``J_0 .. J_nmax`` at ``x > 0`` by backward recurrence."""
    start = _miller_start(nmax, x)
    out = np.zeros(nmax + 1)
    two_over_x = 2.0 / x
    j_next = 0.0
    j_cur = 1e-30
    norm = 0.0
    for k in range(start, 0, -1):
        j_prev = k * two_over_x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            out /= _RESCALE
            norm /= _RESCALE
        idx = k - 1
        if idx <= nmax:
            out[idx] = j_cur
        if idx % 2 == 0 and idx > 0:
            norm += 2.0 * j_cur
    # j_cur now holds the unnormalised J_0
    norm += j_cur
    return out / norm


def bessel_j_table(max_order: int, z: float) -> np.ndarray:
    """Array ``[J_0(z), ..., J_max_order(z)]``."""
    max_order, z = _check(max_order, z)
    x = abs(z)
    if x == 0.0:
        out = np.zeros(max_order + 1)
        out[0] = 1.0
        return out
    if _use_series(0, x):
        out = np.array([_series(k, x)[0] for k in range(max_order + 1)])
    else:
        out = _miller(max_order, x)
    if z < 0:
        out[1::2] *= -1.0
    return out


def bessel_eval(order: int, z: float) -> BesselEval:
    order, z = _check(order, z)
    x = abs(z)
    if _use_series(order, x):
        value, bound = _series(order, x)
    else:
        value = float(_miller(order, x)[order])
        bound = 16.0 * _EPS * max(1.0, abs(value))
    if z < 0 and order % 2:
        value = -value
    return BesselEval(order, z, value, bound)


def bessel_j(order: int, z: float) -> float:
    """``J_order(z)`` for integer ``order >= 0`` and finite real ``z``."""
    return bessel_eval(order, z).value


def default_max_harmonic(z: float) -> int:
    return int(math.ceil(abs(z))) + 30


def jacobi_anger(kind: str, z: float, theta: float, max_harmonic: int | None = None) -> float:
    """Partial Jacobi-Anger sum through harmonic index ``max_harmonic``.

    ``kind`` names the closed form being expanded: ``cos_cos`` is
    ``cos(z cos theta)``, ``sin_cos`` is ``sin(z cos theta)`` and so on.
    """
    if kind not in JACOBI_ANGER_KINDS:
        raise DomainError(f"unknown Jacobi-Anger kind {kind!r}; expected one of {JACOBI_ANGER_KINDS}")
    if max_harmonic is None:
        max_harmonic = default_max_harmonic(z)
    if max_harmonic < 1:
        raise DomainError(f"max_harmonic must be >= 1, got {max_harmonic}")
    J = bessel_j_table(2 * max_harmonic, z)
    k = np.arange(1, max_harmonic + 1)
    sign = np.where(k % 2 == 0, 1.0, -1.0)  # (-1)^k
    if kind == "cos_cos":
        return float(J[0] + 2.0 * np.sum(sign * J[2 * k] * np.cos(2 * k * theta)))
    if kind == "cos_sin":
        return float(J[0] + 2.0 * np.sum(J[2 * k] * np.cos(2 * k * theta)))
    if kind == "sin_sin":
        return float(2.0 * np.sum(J[2 * k - 1] * np.sin((2 * k - 1) * theta)))
    return float(-2.0 * np.sum(sign * J[2 * k - 1] * np.cos((2 * k - 1) * theta)))
