"""Wigner functions of coherent-state superpositions.

Conventions: ``x = a + a^dagger``, ``p = -i(a - a^dagger)`` so a coherent state
``|alpha>`` peaks at ``(2 Re alpha, 2 Im alpha)`` with unit variance in each
quadrature.  The "peak scale" used by the kernel and the named terms is
the unnormalised one in which a single coherent state has peak value 1;
:func:`wigner_exact` and :func:`wigner_grid` divide by ``2 pi <psi|psi>`` so
the field integrates to one.

The Wigner function of ``|alpha><beta|`` at ``g = (x + ip)/2`` is

    exp(-2 |g - m|^2 + i [Im(alpha beta*) - 4 Im((g - m) d*)])

with ``m = (alpha + beta)/2`` and ``d = (alpha - beta)/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import CoherentComponent, DomainError, StateSpec, gram_norm_squared

# exp(-r^2/2) < 1e-16 beyond this distance from a pair midpoint
ENVELOPE_RADIUS = math.sqrt(2.0 * math.log(1e16))


@dataclass(frozen=True)
class PhasePoint:
    x: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.p)):
            raise DomainError(f"phase point must be finite, got ({self.x}, {self.p})")


@dataclass(frozen=True)
class WignerValue:
    value: float
    raw_complex_imag: float


def rotate_point(pt: PhasePoint, theta: float) -> PhasePoint:
    z = complex(pt.x, pt.p) * complex(math.cos(theta), math.sin(theta))
    return PhasePoint(z.real, z.imag)


def _kernel(alpha: complex, beta: complex, x, p):
    m = 0.5 * (alpha + beta)
    d = 0.5 * (alpha - beta)
    gx = 0.5 * x - m.real
    gp = 0.5 * p - m.imag
    # Im((g - m) d*) with d* = d.real - i d.imag
    im_gd = gp * d.real - gx * d.imag
    phase = (alpha * beta.conjugate()).imag - 4.0 * im_gd
    env = -2.0 * (gx * gx + gp * gp)
    return np.exp(env + 1j * phase)


def wigner_pair_kernel(c1: CoherentComponent, c2: CoherentComponent, pt: PhasePoint) -> complex:
    """Peak-scale Wigner contribution of ``|alpha_1><alpha_2|`` (weights not applied)."""
    return complex(_kernel(c1.alpha, c2.alpha, pt.x, pt.p))


def wigner_exact(state: StateSpec, pt: PhasePoint) -> WignerValue:
    total = 0.0j
    for cj in state.components:
        for ck in state.components:
            total += cj.weight * ck.weight.conjugate() * _kernel(cj.alpha, ck.alpha, pt.x, pt.p)
    scale = 2.0 * math.pi * gram_norm_squared(state)
    return WignerValue(total.real / scale, total.imag / scale)


def wigner_grid(state: StateSpec, xs: np.ndarray, ps: np.ndarray) -> np.ndarray:
    """Unit-integral Wigner function on the lattice ``ps x xs`` (rows are p).

    Pairs are visited in fixed order ``j <= k``; each pair only touches the
    bounding box where its Gaussian envelope exceeds 1e-16.
    """
    xs = np.asarray(xs, dtype=float)
    ps = np.asarray(ps, dtype=float)
    out = np.zeros((ps.size, xs.size))
    comps = state.components
    for j, cj in enumerate(comps):
        for k in range(j, len(comps)):
            ck = comps[k]
            mid = cj.alpha + ck.alpha  # = 2m, the envelope centre in (x, p)
            ix = np.nonzero(np.abs(xs - mid.real) <= ENVELOPE_RADIUS)[0]
            ip = np.nonzero(np.abs(ps - mid.imag) <= ENVELOPE_RADIUS)[0]
            if ix.size == 0 or ip.size == 0:
                continue
            xsl = slice(ix[0], ix[-1] + 1)
            psl = slice(ip[0], ip[-1] + 1)
            K = _kernel(cj.alpha, ck.alpha, xs[None, xsl], ps[psl, None])
            w = cj.weight * ck.weight.conjugate()
            factor = 1.0 if j == k else 2.0
            out[psl, xsl] += factor * (w * K).real
    out /= 2.0 * math.pi * gram_norm_squared(state)
    return out


def wigner_center_approx(n: int, a: float, pt: PhasePoint) -> float:
    """Peak-scale centre interference of the n-compass state (antipodal pairs only)."""
    return float(wigner_center_grid(n, a, np.array(pt.x), np.array(pt.p)))


def wigner_center_grid(n: int, a: float, x, p):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    total = np.zeros(np.broadcast(x, p).shape)
    for m in range(int(n)):
        s = math.sin(m * math.pi / (2 * n))
        c = math.cos(m * math.pi / (2 * n))
        # the antipodal pair at angle theta and the one at theta + pi/2
        total = total + np.cos(2 * a * x * s - 2 * a * p * c) + np.cos(2 * a * x * c + 2 * a * p * s)
    return 2.0 * np.exp(-0.5 * (x * x + p * p)) * total


def tile_area(a: float) -> float:
    """Area of one tile of the central chessboard pattern, ``pi^2 / (2 a^2)``."""
    if a <= 0:
        raise DomainError(f"a must be positive, got {a}")
    return math.pi ** 2 / (2.0 * a * a)


# Named terms of the single-compass Wigner function (peak scale).

def coherent_lobe(x, p, a):
    return np.exp(-0.5 * (p ** 2 + (x - 2 * a) ** 2))


def cat_interference(x, p, a):
    return 2.0 * np.exp(-0.5 * (x ** 2 + p ** 2)) * np.cos(2 * a * p)


def rhombus_g(x, p, a):
    return np.exp(-0.5 * ((x - a) ** 2 + (p - a) ** 2)) * np.cos(a * (x + p - a))


def compass_terms(x, p, a) -> dict[str, np.ndarray]:
    """North-south lobes, east-west lobes, rhombus and centre terms of one compass state."""
    ns = coherent_lobe(p, x, a) + coherent_lobe(p, x, -a)
    ew = coherent_lobe(x, p, a) + coherent_lobe(x, p, -a)
    rhombus = 2.0 * sum(rhombus_g(sx * x, sp * p, a) for sx in (1, -1) for sp in (1, -1))
    centre = 2.0 * np.exp(-0.5 * (p ** 2 + x ** 2)) * (np.cos(2 * a * p) + np.cos(2 * a * x))
    return {"north_south": ns, "east_west": ew, "rhombus": rhombus, "centre": centre}


def compass_wigner_decomposed(x, p, a):
    """Peak-scale compass Wigner function assembled from its four named terms."""
    t = compass_terms(x, p, a)
    return t["north_south"] + t["east_west"] + t["rhombus"] + t["centre"]
