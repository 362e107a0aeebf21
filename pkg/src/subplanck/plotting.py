"""PNG renderings of sampled fields and sensitivity sweeps (matplotlib, Agg)."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .grid_io import GridField, GridIOError  # noqa: E402
from .sensitivity import SensitivityReport  # noqa: E402

_AXIS_LABELS = {
    "wigner": ("x", "p"),
    "wigner_center": ("x", "p"),
    "gamma": (r"Re $\delta$", r"Im $\delta$"),
    "gamma_zero_mask": (r"Re $\delta$", r"Im $\delta$"),
}


def _save(fig, path) -> None:
    try:
        fig.savefig(path, dpi=150, metadata={"Software": None})
    except OSError as exc:
        raise GridIOError(f"cannot write figure to {os.fspath(path)!r}: {exc}") from exc
    finally:
        plt.close(fig)


def render_field(grid: GridField, path, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(5, 4.2))
    extent = (grid.x_min, grid.x_max, grid.p_min, grid.p_max)
    v = grid.values
    if grid.kind.startswith("wigner"):
        m = float(np.max(np.abs(v))) or 1.0
        im = ax.imshow(v, origin="lower", extent=extent, cmap="RdBu_r", vmin=-m, vmax=m,
                       interpolation="nearest")
    elif grid.kind == "gamma_zero_mask":
        im = ax.imshow(v, origin="lower", extent=extent, cmap="Greys", vmin=0, vmax=1,
                       interpolation="nearest")
    else:
        im = ax.imshow(v, origin="lower", extent=extent, cmap="viridis", vmin=0, vmax=1,
                       interpolation="nearest")
    fig.colorbar(im, ax=ax)
    xl, pl = _AXIS_LABELS[grid.kind]
    ax.set_xlabel(xl)
    ax.set_ylabel(pl)
    m = grid.meta
    ax.set_title(title or f"{grid.kind}  n={m.n}  a={m.a:g}  ({m.mode})", fontsize=9)
    fig.tight_layout()
    _save(fig, path)


def render_sweep(report: SensitivityReport, path) -> None:
    phis = np.array([p for p, _ in report.samples])
    roots = np.array([r for _, r in report.samples]) * report.a
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(phis * 4 * report.n / math.pi, roots, "k-", lw=1)
    ax.axhline(report.root_range_low * report.a, color="tab:blue", lw=0.6, ls="--")
    ax.axhline(report.root_range_high * report.a, color="tab:red", lw=0.6, ls="--")
    ax.set_xlabel(r"arg $\delta$  [units of $\pi/4n$]")
    ax.set_ylabel(r"$a\,|\delta|$ at first zero")
    ax.set_title(f"innermost ring  n={report.n}  a={report.a:g}", fontsize=9)
    ax.ticklabel_format(axis="y", useOffset=False)
    fig.tight_layout()
    _save(fig, path)


def render_isotropy(rows: list[tuple[int, float]], path) -> None:
    ns = [n for n, _ in rows]
    vals = [max(v, 1e-18) for _, v in rows]
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.semilogy(ns, vals, "ko-")
    ax.set_xticks(ns)
    ax.set_xlabel("n")
    ax.set_ylabel(r"$a(|\delta|_{max} - |\delta|_{min})$")
    fig.tight_layout()
    _save(fig, path)
