"""Superpositions of coherent states on a circle in phase space.

A state is stored as a list of coherent components ``w |r e^{i theta}>``.
Nothing here normalises: the norm is computed on demand with
:func:`gram_norm_squared` and applied only where a physical quantity
(Wigner density, overlap) is produced.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def canonical_angle(theta: float) -> float:
    """Map ``theta`` into ``[0, 2pi)``."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod of values just below a multiple of 2pi can round up to 2pi
    if t >= TWO_PI:
        t = 0.0
    return t


@dataclass(frozen=True)
class CoherentComponent:
    radius: float
    angle: float
    weight: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise DomainError(f"radius must be finite and non-negative, got {self.radius}")
        angle = 0.0 if self.radius == 0.0 else canonical_angle(self.angle)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "weight", complex(self.weight))

    @property
    def alpha(self) -> complex:
        """Complex coherent amplitude."""
        return cmath.rect(self.radius, self.angle)


def _same_point(c1: CoherentComponent, c2: CoherentComponent) -> bool:
    if abs(c1.radius - c2.radius) > MERGE_TOL:
        return False
    if c1.radius <= MERGE_TOL:
        return True
    d = abs(c1.angle - c2.angle)
    return min(d, TWO_PI - d) <= MERGE_TOL


def merge_components(components: Iterable[CoherentComponent]) -> tuple[CoherentComponent, ...]:
    """Merge coincident components by summing their weights, keeping first-seen order."""
    merged: list[CoherentComponent] = []
    for c in components:
        for i, m in enumerate(merged):
            if _same_point(m, c):
                merged[i] = CoherentComponent(m.radius, m.angle, m.weight + c.weight)
                break
        else:
            merged.append(c)
    return tuple(merged)


@dataclass(frozen=True)
class StateSpec:
    components: tuple[CoherentComponent, ...]
    label: str = ""

    def __post_init__(self):
        comps = merge_components(self.components)
        if not comps:
            raise DomainError("a state needs at least one component")
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    @property
    def alphas(self) -> list[complex]:
        return [c.alpha for c in self.components]

    @property
    def weights(self) -> list[complex]:
        return [c.weight for c in self.components]

    def to_text(self) -> str:
        """Serialise as ``radius angle_degrees weight_re weight_im`` lines."""
        lines = []
        if self.label:
            lines.append(f"# {self.label}")
        for c in self.components:
            w = c.weight
            lines.append(f"{c.radius!r} {math.degrees(c.angle)!r} {w.real!r} {w.imag!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "StateSpec":
        label = ""
        comps = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if not label:
                    label = line.lstrip("#").strip()
                continue
            parts = line.split()
            if len(parts) not in (2, 3, 4):
                raise ValueError(f"line {lineno}: expected 'radius angle_deg [w_re [w_im]]', got {raw!r}")
            vals = [float(v) for v in parts] + [1.0, 0.0][len(parts) - 2:]
            r, deg, wr, wi = vals[:4]
            comps.append(CoherentComponent(r, math.radians(deg), complex(wr, wi)))
        return cls(tuple(comps), label)


@dataclass(frozen=True)
class Displacement:
    magnitude: float
    direction: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.magnitude) or self.magnitude < 0.0:
            raise DomainError(f"displacement magnitude must be non-negative, got {self.magnitude}")

    @classmethod
    def from_complex(cls, delta: complex) -> "Displacement":
        return cls(abs(delta), cmath.phase(delta))

    @property
    def value(self) -> complex:
        return cmath.rect(self.magnitude, self.direction)

    @property
    def re(self) -> float:
        return self.magnitude * math.cos(self.direction)

    @property
    def im(self) -> float:
        return self.magnitude * math.sin(self.direction)

    def __neg__(self) -> "Displacement":
        return Displacement(self.magnitude, self.direction + math.pi)


def make_coherent(a: float) -> StateSpec:
    if a < 0:
        raise DomainError(f"a must be non-negative, got {a}")
    return StateSpec((CoherentComponent(a, 0.0, 1.0),), f"coherent a={a:g}")


def make_cat(a: float) -> StateSpec:
    """Even cat ``|a> + |-a>``."""
    if a < 0:
        raise DomainError(f"a must be non-negative, got {a}")
    comps = (CoherentComponent(a, 0.0), CoherentComponent(a, math.pi))
    return StateSpec(comps, f"cat a={a:g}")


def compass_angles(n: int) -> list[float]:
    """Angles ``m pi/(2n) + k pi/2`` ordered compass-major (m outer, k inner)."""
    return [m * math.pi / (2 * n) + k * math.pi / 2 for m in range(n) for k in range(4)]


def make_n_compass(n: int, a: float) -> StateSpec:
    """Superposition of ``n`` compass states, each rotated by ``pi/(2n)`` from the last.

    ``n = 1`` is the ordinary four-headed compass state.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    if a < 0:
        raise DomainError(f"a must be non-negative, got {a}")
    n = int(n)
    comps = tuple(CoherentComponent(a, t) for t in compass_angles(n))
    return StateSpec(comps, f"n-compass n={n} a={a:g}")


def rotate(state: StateSpec, theta: float) -> StateSpec:
    comps = tuple(CoherentComponent(c.radius, c.angle + theta, c.weight) for c in state.components)
    return StateSpec(comps, state.label)


def coherent_inner(alpha: complex, beta: complex) -> complex:
    """``<alpha|beta>`` for normalised coherent states."""
    return cmath.exp(-0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2 + alpha.conjugate() * beta)


def gram_norm_squared(state: StateSpec) -> float:
    """``<psi|psi>`` of the unnormalised superposition."""
    total = 0.0j
    comps = state.components
    for cj in comps:
        for ck in comps:
            total += cj.weight.conjugate() * ck.weight * coherent_inner(cj.alpha, ck.alpha)
    return total.real


def states_close(s1: StateSpec, s2: StateSpec, tol: float = 1e-12) -> bool:
    """Component-wise equality up to ``tol`` (order-insensitive)."""
    if len(s1) != len(s2):
        return False
    remaining: list[CoherentComponent] = list(s2.components)
    for c in s1.components:
        for i, d in enumerate(remaining):
            if abs(c.alpha - d.alpha) <= tol and abs(c.weight - d.weight) <= tol:
                del remaining[i]
                break
        else:
            return False
    return True


def separation_ok(n: int, a: float, min_distance: float = 6.0) -> bool:
    """True when adjacent coherent components are at least ``min_distance`` apart."""
    return 2.0 * a * math.sin(math.pi / (4 * n)) >= min_distance


def default_amplitude(n: int) -> float:
    """Reference amplitudes 5, 8, 12 for n = 1, 2, 3; beyond that the smallest integer meeting the separation rule."""
    known = {1: 5.0, 2: 8.0, 3: 12.0}
    if n in known:
        return known[n]
    return float(math.ceil(3.0 / math.sin(math.pi / (4 * n))))


def components_from(alphas: Sequence[complex], weights: Sequence[complex] | None = None,
                    label: str = "") -> StateSpec:
    weights = weights if weights is not None else [1.0] * len(alphas)
    comps = tuple(CoherentComponent(abs(al), cmath.phase(al), w) for al, w in zip(alphas, weights))
    return StateSpec(comps, label)
