"""Overlap of a state with its phase-space displaced copy.

``gamma(delta) = |<psi|D(delta)|psi>|^2 / <psi|psi>^2``.  The exact form sums
every ordered component pair; the approximate form keeps only the self
terms of an n-compass state, which is what the root analysis in
:mod:`subplanck.sensitivity` works with.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .states import Displacement, DomainError, StateSpec, gram_norm_squared


@dataclass(frozen=True)
class OverlapResult:
    gamma: float
    amplitude: complex
    mode: str


def _pair(alpha: complex, beta: complex, delta: complex) -> complex:
    # D(d)|b> = exp((d b* - d* b)/2) |b + d>
    phase = (delta * beta.conjugate()).imag + (alpha.conjugate() * (beta + delta)).imag
    return cmath.exp(complex(-0.5 * abs(alpha - beta - delta) ** 2, phase))


def pair_overlap(a1: float, theta1: float, a2: float, theta2: float, delta: Displacement) -> complex:
    """``<a1 e^{i theta1}| D(delta) |a2 e^{i theta2}>`` in closed form."""
    if a1 < 0 or a2 < 0:
        raise DomainError("coherent amplitudes must be non-negative")
    return _pair(cmath.rect(a1, theta1), cmath.rect(a2, theta2), delta.value)


def _pair_matrix(state: StateSpec, delta: complex) -> np.ndarray:
    al = np.array(state.alphas)
    A = al[:, None]
    B = al[None, :]
    phase = (delta * B.conj()).imag + (A.conj() * (B + delta)).imag
    return np.exp(-0.5 * np.abs(A - B - delta) ** 2 + 1j * phase)


def amplitude_exact(state: StateSpec, delta: Displacement) -> complex:
    """``<psi|D(delta)|psi> / <psi|psi>`` summed component-index-major."""
    w = np.array(state.weights)
    M = _pair_matrix(state, delta.value)
    amp = np.sum((w.conj()[:, None] * w[None, :]) * M)
    return complex(amp) / gram_norm_squared(state)


def gamma_exact(state: StateSpec, delta: Displacement) -> OverlapResult:
    amp = amplitude_exact(state, delta)
    return OverlapResult(abs(amp) ** 2, amp, "exact")


def _self_sum(n: int, a: float, delta: Displacement) -> float:
    r = delta.magnitude
    total = 0.0
    for m in range(n):
        th = delta.direction + m * math.pi / (2 * n)
        total += math.cos(2 * a * r * math.cos(th)) + math.cos(2 * a * r * math.sin(th))
    return total


def gamma_approx(n: int, a: float, delta: Displacement) -> OverlapResult:
    """Self-term-only overlap of the n-compass state, scaled so ``gamma(0) = 1``."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")
    r = delta.magnitude
    amp = math.exp(-0.5 * r * r) * _self_sum(int(n), a, delta) / (2 * n)
    return OverlapResult(amp * amp, complex(amp), "approx")


def cross_term_bound(state: StateSpec, delta: Displacement) -> float:
    """Sum of |cross-pair| magnitudes over ``<psi|psi>``: bounds the amplitude error of the self-term form."""
    w = np.abs(np.array(state.weights))
    M = np.abs(_pair_matrix(state, delta.value))
    W = w[:, None] * w[None, :] * M
    np.fill_diagonal(W, 0.0)
    return float(np.sum(W)) / gram_norm_squared(state)


def gamma_exact_grid(state: StateSpec, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Vectorised exact gamma at ``delta = re + i im`` (broadcast arrays)."""
    d = np.asarray(re) + 1j * np.asarray(im)
    w = state.weights
    al = state.alphas
    amp = np.zeros(np.broadcast(d).shape, dtype=complex)
    reach = float(np.max(np.abs(d))) if d.size else 0.0
    for wj, aj in zip(w, al):
        for wk, ak in zip(w, al):
            gap = abs(aj - ak) - reach
            # exp(-gap^2/2) < 1e-20 everywhere on the grid
            if gap > 0 and 0.5 * gap * gap > 46.0:
                continue
            phase = (d * ak.conjugate()).imag + (aj.conjugate() * (ak + d)).imag
            amp += (wj.conjugate() * wk) * np.exp(-0.5 * np.abs(aj - ak - d) ** 2 + 1j * phase)
    amp /= gram_norm_squared(state)
    return np.abs(amp) ** 2


def gamma_approx_grid(n: int, a: float, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    d = np.asarray(re) + 1j * np.asarray(im)
    r = np.abs(d)
    phi = np.angle(d)
    s = np.zeros(r.shape)
    for m in range(n):
        th = phi + m * math.pi / (2 * n)
        s += np.cos(2 * a * r * np.cos(th)) + np.cos(2 * a * r * np.sin(th))
    return np.exp(-r * r) * s * s / (4.0 * n * n)
