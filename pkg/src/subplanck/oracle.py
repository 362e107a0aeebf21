"""Brute-force references for validation only.

Nothing in the computational path imports this module; it backs the test
suite and the ``validate`` subcommand.  Everything here is deliberately
simple: a truncated Fock basis with dense matrices, and direct numerical
quadrature of the Wigner integral over position wavefunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.linalg import expm

from .states import Displacement, StateSpec, gram_norm_squared

TAIL_TOL = 1e-20


class TruncationError(ValueError):
    """The Fock cutoff is too small for the requested state."""


@dataclass(frozen=True)
class FockVector:
    dim: int
    amplitudes: np.ndarray

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def tail_ok(self) -> bool:
        return abs(self.amplitudes[-1]) ** 2 < TAIL_TOL * self.norm2()

    def inner(self, other: "FockVector") -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.dim, self.amplitudes + other.amplitudes)

    def scaled(self, w: complex) -> "FockVector":
        return FockVector(self.dim, w * self.amplitudes)


def fock_dimension(a: float) -> int:
    return int(math.ceil(a * a + 10 * a + 20))


def _log_amplitudes(a: float, dim: int) -> np.ndarray:
    if a == 0:
        out = np.full(dim, -np.inf)
        out[0] = 0.0
        return out
    k = np.arange(dim)
    return -0.5 * a * a + k * math.log(a) - 0.5 * np.array([math.lgamma(j + 1) for j in k])


def fock_coherent(a: float, theta: float, dim: int) -> FockVector:
    """``|a e^{i theta}>`` truncated to ``dim`` Fock levels, amplitudes built in log space."""
    if dim <= a * a + 10 * a:
        raise TruncationError(f"dim={dim} too small for a={a}: need > a^2 + 10a = {a * a + 10 * a:g}")
    k = np.arange(dim)
    amps = np.exp(_log_amplitudes(a, dim)) * np.exp(1j * k * theta)
    return FockVector(dim, amps)


def fock_coherent_mp(a: float, theta: float, dim: int, dps: int = 60) -> list:
    """Extended-precision amplitudes (mpmath) for cancellation-sensitive inner products."""
    with mpmath.workdps(dps):
        a_mp = mpmath.mpf(a)
        pref = mpmath.exp(-a_mp * a_mp / 2)
        ph = mpmath.expj(mpmath.mpf(theta))
        return [pref * (a_mp * ph) ** j / mpmath.sqrt(mpmath.factorial(j)) for j in range(dim)]


def inner_mp(u: list, v: list, dps: int = 60):
    with mpmath.workdps(dps):
        return mpmath.fsum(mpmath.conj(x) * y for x, y in zip(u, v))


def ladder(dim: int) -> np.ndarray:
    """Truncated annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def displacement_matrix(delta: Displacement, dim: int) -> np.ndarray:
    a_op = ladder(dim)
    d = delta.value
    return expm(d * a_op.conj().T - d.conjugate() * a_op)


def fock_displace(v: FockVector, delta: Displacement) -> FockVector:
    out = FockVector(v.dim, displacement_matrix(delta, v.dim) @ v.amplitudes)
    if not out.tail_ok():
        raise TruncationError(f"displaced state leaks into the cutoff (dim={v.dim}, |delta|={delta.magnitude:g})")
    return out


def fock_state(state: StateSpec, dim: int | None = None) -> FockVector:
    dim = dim or fock_dimension(max(c.radius for c in state.components))
    total = FockVector(dim, np.zeros(dim, dtype=complex))
    for c in state.components:
        total = total + fock_coherent(c.radius, c.angle, dim).scaled(c.weight)
    return total


def fock_gamma(state: StateSpec, delta: Displacement, dim: int | None = None) -> tuple[float, complex]:
    """Overlap ``|<psi|D|psi>|^2/<psi|psi>^2`` and its amplitude from dense Fock algebra."""
    if dim is None:
        # headroom for the displaced lobes, not just the original ones
        dim = fock_dimension(max(c.radius for c in state.components) + delta.magnitude)
    v = fock_state(state, dim)
    amp = v.inner(fock_displace(v, delta)) / v.norm2()
    return abs(amp) ** 2, amp


# Position-space route: x = a + a^dagger has unit vacuum variance and p = -2i d/dx.

def coherent_wavefunction(alpha: complex, x):
    x0 = 2.0 * alpha.real
    p0 = 2.0 * alpha.imag
    x = np.asarray(x, dtype=float)
    return ((2 * math.pi) ** -0.25 * np.exp(-((x - x0) ** 2) / 4.0)
            * np.exp(1j * (0.5 * p0 * x - 0.25 * p0 * x0)))


def wavefunction(state: StateSpec, x):
    return sum(c.weight * coherent_wavefunction(c.alpha, x) for c in state.components)


def _norm_quadrature(state: StateSpec) -> float:
    lo = min(2 * c.alpha.real for c in state.components) - 40.0
    hi = max(2 * c.alpha.real for c in state.components) + 40.0
    val, _ = quad(lambda t: abs(wavefunction(state, t)) ** 2, lo, hi, limit=400,
                  epsabs=1e-13, epsrel=1e-13)
    return val


def wigner_quadrature(state: StateSpec, x: float, p: float, epsabs: float = 1e-9) -> float:
    """Unit-integral Wigner value by adaptive quadrature of the defining integral.

    With hbar = 2 in these units the integrand is
    ``exp(i p y / 2) psi*(x + y/2) psi(x - y/2)`` and the density carries ``1/(4 pi)``.
    """
    centres = [2 * c.alpha.real for c in state.components]
    # psi(x +- y/2) is negligible once x +- y/2 is 20 sigma away from every lobe
    span = 2.0 * (max(abs(x - c) for c in centres) + 20.0)

    def integrand(y):
        return np.exp(0.5j * p * y) * np.conj(wavefunction(state, x + 0.5 * y)) * wavefunction(state, x - 0.5 * y)

    opts = dict(limit=2000, epsabs=epsabs * 1e-2, epsrel=1e-12)
    # the imaginary part integrates to zero for a Hermitian density
    re, _ = quad(lambda y: float(integrand(y).real), -span, span, **opts)
    return re / (4.0 * math.pi * _norm_quadrature(state))


def position_density(state: StateSpec, x) -> np.ndarray:
    """``|psi(x)|^2 / <psi|psi>`` from the closed-form wavefunctions."""
    return np.abs(wavefunction(state, x)) ** 2 / gram_norm_squared(state)
