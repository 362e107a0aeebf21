"""Sampled phase-space fields and their file formats.

Fields are sampled at cell centres of a rectangular window.  Wigner kinds
live on ``(x, p)``; overlap kinds live on ``(Re delta, Im delta)`` and reuse
the same ``x``/``p`` axis names.  CSV is the interchange format (see
``docs/FORMATS.md``), 16-bit PGM a dependency-free preview.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import overlap, wigner
from .states import DomainError, gram_norm_squared, make_n_compass

KINDS = ("wigner", "wigner_center", "gamma", "gamma_zero_mask")
DEFAULT_CUTOFF = 1e-3


class GridIOError(OSError):
    pass


@dataclass(frozen=True)
class GridMeta:
    n: int
    a: float
    mode: str


@dataclass(frozen=True)
class GridField:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    n_p: int
    values: np.ndarray  # shape (n_p, nx): row i is p index i, ascending
    kind: str
    meta: GridMeta = field(default_factory=lambda: GridMeta(0, 0.0, ""))

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown field kind {self.kind!r}")
        if self.nx < 2 or self.n_p < 2:
            raise DomainError("a grid needs at least 2 cells per axis")
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise DomainError("degenerate window")
        vals = np.asarray(self.values, dtype=float).reshape(self.n_p, self.nx)
        if not np.all(np.isfinite(vals)):
            raise DomainError("field values must be finite")
        if self.kind == "gamma" and (vals.min() < -1e-12 or vals.max() > 1 + 1e-9):
            raise DomainError("gamma values must lie in [0, 1]")
        if self.kind == "gamma_zero_mask" and not np.all((vals == 0) | (vals == 1)):
            raise DomainError("mask values must be 0 or 1")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / self.n_p

    @property
    def xs(self) -> np.ndarray:
        return cell_centres(self.x_min, self.x_max, self.nx)

    @property
    def ps(self) -> np.ndarray:
        return cell_centres(self.p_min, self.p_max, self.n_p)

    def integral(self) -> float:
        return float(self.values.sum() * self.dx * self.dp)

    def same_as(self, other: "GridField") -> bool:
        return (
            (self.x_min, self.x_max, self.p_min, self.p_max, self.nx, self.n_p, self.kind, self.meta)
            == (other.x_min, other.x_max, other.p_min, other.p_max, other.nx, other.n_p, other.kind, other.meta)
            and np.array_equal(self.values, other.values)
        )


def cell_centres(lo: float, hi: float, count: int) -> np.ndarray:
    return lo + (np.arange(count) + 0.5) * ((hi - lo) / count)


def default_window(kind: str, a: float) -> tuple[float, float, float, float]:
    if kind.startswith("wigner"):
        h = 2 * a + 6
    else:
        h = 3.0 / a
    return (-h, h, -h, h)


def sample_field(kind: str, n: int, a: float, window=None, resolution=400, mode: str = "exact",
                 cutoff: float = DEFAULT_CUTOFF, state=None) -> GridField:
    """Sample one of the supported fields of the n-compass state on a grid.

    ``resolution`` is a single count or an ``(nx, np)`` pair.  ``state``
    overrides the n-compass state for the exact kinds.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown field kind {kind!r}; expected one of {KINDS}")
    nx, n_p = (resolution, resolution) if np.isscalar(resolution) else resolution
    nx, n_p = int(nx), int(n_p)
    if nx < 2 or n_p < 2:
        raise DomainError("resolution must be >= 2")
    x_min, x_max, p_min, p_max = window if window is not None else default_window(kind, a)
    xs = cell_centres(x_min, x_max, nx)
    ps = cell_centres(p_min, p_max, n_p)
    if kind == "wigner":
        st = state if state is not None else make_n_compass(n, a)
        vals = wigner.wigner_grid(st, xs, ps)
        mode = "exact"
    elif kind == "wigner_center":
        st = make_n_compass(n, a)
        vals = wigner.wigner_center_grid(n, a, xs[None, :], ps[:, None]) / (2 * math.pi * gram_norm_squared(st))
        mode = "center"
    else:
        X, P = np.meshgrid(xs, ps)
        if mode == "exact":
            st = state if state is not None else make_n_compass(n, a)
            vals = overlap.gamma_exact_grid(st, X, P)
        elif mode == "approx":
            vals = overlap.gamma_approx_grid(n, a, X, P)
        else:
            raise DomainError(f"overlap mode must be 'exact' or 'approx', got {mode!r}")
        vals = np.clip(vals, 0.0, None)
        if kind == "gamma_zero_mask":
            vals = (vals < cutoff).astype(float)
    return GridField(x_min, x_max, p_min, p_max, nx, n_p, vals, kind, GridMeta(int(n), float(a), mode))


CSV_FIELDS = "kind n a x_min x_max p_min p_max nx np"


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def format_csv(grid: GridField) -> str:
    """Header lines then ``x p value`` rows, p-major, 17 significant digits."""
    m = grid.meta
    parts = [
        f"# {CSV_FIELDS}\n",
        "# " + " ".join([grid.kind, str(m.n), _fmt(m.a), _fmt(grid.x_min), _fmt(grid.x_max),
                         _fmt(grid.p_min), _fmt(grid.p_max), str(grid.nx), str(grid.n_p)]) + "\n",
        f"# mode {m.mode}\n",
    ]
    xs = [_fmt(x) for x in grid.xs]
    for i, p in enumerate(grid.ps):
        ps = _fmt(p)
        parts.append("".join(f"{x} {ps} {v:.17g}\n" for x, v in zip(xs, grid.values[i])))
    return "".join(parts)


def write_csv(grid: GridField, path) -> None:
    text = format_csv(grid)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise GridIOError(f"cannot write CSV to {os.fspath(path)!r}: {exc}") from exc


def read_csv(path) -> GridField:
    try:
        with open(path, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise GridIOError(f"cannot read CSV from {os.fspath(path)!r}: {exc}") from exc
    comments = [ln[1:].strip() for ln in lines if ln.startswith("#")]
    if len(comments) < 2 or comments[0] != CSV_FIELDS:
        raise GridIOError(f"{os.fspath(path)!r} is missing the grid header")
    kind, n, a, x_min, x_max, p_min, p_max, nx, n_p = comments[1].split()
    mode = ""
    for c in comments[2:]:
        if c.startswith("mode"):
            mode = c.split(maxsplit=1)[1] if " " in c else ""
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    vals = np.array([float(ln.split()[2]) for ln in data])
    return GridField(float(x_min), float(x_max), float(p_min), float(p_max), int(nx), int(n_p),
                     vals, kind, GridMeta(int(n), float(a), mode))


def pgm_levels(values: np.ndarray, scale: str) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if scale == "symmetric":
        m = float(np.max(np.abs(v)))
        ratio = v / m if m > 0 else np.zeros_like(v)
        levels = np.floor((ratio + 1.0) * 0.5 * 65535.0)
    elif scale == "linear":
        m = float(np.max(v))
        ratio = v / m if m > 0 else np.zeros_like(v)
        levels = np.floor(np.clip(ratio, 0.0, 1.0) * 65535.0)
    else:
        raise DomainError(f"unknown PGM scale {scale!r}")
    return np.clip(levels, 0, 65535).astype(">u2")


def write_pgm(grid: GridField, path, scale: str = "linear") -> None:
    """Binary 16-bit PGM (P5, big-endian); top row is the largest p."""
    levels = pgm_levels(grid.values, scale)[::-1]
    header = f"P5\n{grid.nx} {grid.n_p}\n65535\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(levels.tobytes())
    except OSError as exc:
        raise GridIOError(f"cannot write PGM to {os.fspath(path)!r}: {exc}") from exc


def read_pgm(path) -> np.ndarray:
    """Pixel levels as written (top row first)."""
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise GridIOError(f"{os.fspath(path)!r} is not a binary PGM")
    w, h = (int(t) for t in parts[1].split())
    return np.frombuffer(parts[3], dtype=">u2").reshape(h, w)


def default_scale(kind: str) -> str:
    return "symmetric" if kind.startswith("wigner") else "linear"
