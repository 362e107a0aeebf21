"""Command-line front end.

    subplanck wigner      --n 1 --a 5 --mode exact --output w.csv
    subplanck overlap     --n 1 --a 5 --mask --output mask.pgm --format pgm
    subplanck sensitivity --n 2 --a 8
    subplanck isotropy    --n 5
    subplanck validate    --quick

Exit status: 0 on success, 1 on runtime, I/O or validation failure,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import grid_io, sensitivity, validation
from .states import DomainError, StateSpec, default_amplitude, separation_ok

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONFIG_KEYS = {
    "n": int, "a": float, "resolution": int, "mode": str, "epsilon": float, "cutoff": float,
    "y_over": float, "output": str, "format": str, "figure": str, "steps": int,
    "state_file": str, "window": lambda s: [float(t) for t in s.replace(",", " ").split()],
}


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys act as underscores."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from exc
    return out


def _common(p: argparse.ArgumentParser, modes: tuple[str, ...], default_mode: str) -> None:
    p.add_argument("--n", type=int, default=1, help="number of superposed compass states (default 1)")
    p.add_argument("--a", type=float, default=None,
                   help="coherent amplitude; defaults 5, 8, 12 for n = 1, 2, 3, larger n from the separation rule")
    p.add_argument("--config", help="key=value file; explicit flags win over its entries")
    p.add_argument("--epsilon", type=float, default=1e-15,
                   help="threshold below which the overlap counts as vanishing (default 1e-15)")
    p.add_argument("--output", help="output file ('-' for stdout)")
    p.add_argument("--figure", help="also render a PNG to this path")
    if modes:
        p.add_argument("--mode", choices=modes, default=default_mode)


def _grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=float, nargs=4, metavar=("XMIN", "XMAX", "PMIN", "PMAX"),
                   help="sampling window; default +-(2a+6) for Wigner, +-3/a for overlap")
    p.add_argument("--resolution", type=int, default=400, help="cells per axis (default 400)")
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--state-file", dest="state_file",
                   help="component list 'radius angle_deg w_re w_im' replacing the n-compass state")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subplanck", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wigner", help="sample the Wigner function (heat-map data)")
    _common(w, ("exact", "center"), "exact")
    _grid_args(w)

    o = sub.add_parser("overlap", help="sample gamma(delta), the overlap with a displaced copy")
    _common(o, ("exact", "approx"), "exact")
    _grid_args(o)
    o.add_argument("--cutoff", type=float, default=grid_io.DEFAULT_CUTOFF,
                   help="gamma below this counts as zero in the mask (default 0.001)")
    o.add_argument("--mask", action="store_true", help="write the zero mask gamma < cutoff instead")
    o.add_argument("--compare", action="store_true",
                   help="also sample the other mode and print the max absolute difference")

    s = sub.add_parser("sensitivity", help="innermost zero ring of gamma and its oscillation")
    _common(s, (), "")
    s.add_argument("--y-over", dest="y_over", type=float, default=None,
                   help="expansion point y of the quadratic seed (default 6/(5a))")
    s.add_argument("--steps", type=int, default=sensitivity.DEFAULT_STEPS,
                   help="sweep samples per period pi/(2n) (default 720)")
    s.add_argument("--format", choices=("table", "csv"), default="table")
    s.add_argument("--rows", action="store_true", help="print 'n a arg_delta root' rows")

    i = sub.add_parser("isotropy", help="oscillation width of the innermost ring for n = 1..N")
    _common(i, (), "")
    i.add_argument("--steps", type=int, default=sensitivity.DEFAULT_STEPS)

    v = sub.add_parser("validate", help="check closed forms against the reference computations")
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--a", type=float, default=None)
    v.add_argument("--quick", action="store_true", help="skip the quadrature checks")
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    path = getattr(args, "config", None)
    if not path:
        return args
    conf = read_config(path)
    given = {tok.lstrip("-").split("=")[0].replace("-", "_") for tok in argv if tok.startswith("--")}
    for key, val in conf.items():
        if key in given or not hasattr(args, key):
            continue
        setattr(args, key, val)
    return args


def _check(args: argparse.Namespace) -> None:
    if getattr(args, "n", None) is not None and args.n < 1:
        raise UsageError("--n must be >= 1")
    if getattr(args, "a", None) is not None and not (args.a > 0 and math.isfinite(args.a)):
        raise UsageError("--a must be positive")
    if hasattr(args, "epsilon") and not 0 < args.epsilon < 1:
        raise UsageError("--epsilon must lie in (0, 1)")
    if hasattr(args, "cutoff") and not 0 < args.cutoff < 1:
        raise UsageError("--cutoff must lie in (0, 1)")
    if hasattr(args, "resolution") and args.resolution < 2:
        raise UsageError("--resolution must be >= 2")
    if hasattr(args, "steps") and args.steps < 8:
        raise UsageError("--steps must be >= 8")
    if getattr(args, "window", None) is not None:
        x0, x1, p0, p1 = args.window
        if not (x0 < x1 and p0 < p1):
            raise UsageError("--window needs XMIN < XMAX and PMIN < PMAX")
    if args.command in ("wigner", "overlap") and args.format == "pgm" and args.output == "-":
        raise UsageError("PGM output needs a file path")


def _amplitude(args) -> float:
    a = args.a if args.a is not None else default_amplitude(args.n)
    if not separation_ok(args.n, a):
        gap = 2 * a * math.sin(math.pi / (4 * args.n))
        print(f"warning: adjacent coherent states are {gap:.3g} apart (< 6); the self-term picture degrades",
              file=sys.stderr)
    return a


def _emit_grid(grid: grid_io.GridField, args) -> None:
    if args.output is None:
        return
    if args.format == "pgm":
        grid_io.write_pgm(grid, args.output, grid_io.default_scale(grid.kind))
    elif args.output == "-":
        sys.stdout.write(grid_io.format_csv(grid))
    else:
        grid_io.write_csv(grid, args.output)


def _summary(grid: grid_io.GridField, out) -> None:
    v = grid.values
    print(f"kind      {grid.kind}", file=out)
    print(f"n a mode  {grid.meta.n} {grid.meta.a:g} {grid.meta.mode}", file=out)
    print(f"cells     {grid.nx} x {grid.n_p}", file=out)
    print(f"min       {v.min():.10e}", file=out)
    print(f"max       {v.max():.10e}", file=out)
    print(f"integral  {grid.integral():.10e}", file=out)


def _load_state(args):
    if not args.state_file:
        return None
    try:
        return StateSpec.from_text(Path(args.state_file).read_text())
    except OSError as exc:
        raise OSError(f"cannot read state file {args.state_file!r}: {exc}") from exc


def _info_stream(args):
    # keep stdout clean when the CSV itself goes there
    return sys.stderr if getattr(args, "output", None) == "-" else sys.stdout


def cmd_wigner(args) -> int:
    a = _amplitude(args)
    kind = "wigner" if args.mode == "exact" else "wigner_center"
    state = _load_state(args)
    if state is not None and kind == "wigner_center":
        raise UsageError("--state-file only applies to --mode exact")
    grid = grid_io.sample_field(kind, args.n, a, args.window, args.resolution, args.mode, state=state)
    _emit_grid(grid, args)
    _summary(grid, _info_stream(args))
    if args.figure:
        from .plotting import render_field
        render_field(grid, args.figure)
    return EXIT_OK


def cmd_overlap(args) -> int:
    a = _amplitude(args)
    state = _load_state(args)
    if state is not None and args.mode == "approx":
        raise UsageError("--state-file only applies to --mode exact")
    gamma = grid_io.sample_field("gamma", args.n, a, args.window, args.resolution, args.mode, state=state)
    out = _info_stream(args)
    grid = gamma
    if args.mask:
        mask = (gamma.values < args.cutoff).astype(float)
        grid = grid_io.GridField(gamma.x_min, gamma.x_max, gamma.p_min, gamma.p_max, gamma.nx, gamma.n_p,
                                 mask, "gamma_zero_mask", gamma.meta)
    _emit_grid(grid, args)
    _summary(grid, out)
    below = int(np.count_nonzero(gamma.values < args.epsilon))
    print(f"cells with gamma < {args.epsilon:g}: {below}", file=out)
    if args.compare:
        other = "approx" if args.mode == "exact" else "exact"
        alt = grid_io.sample_field("gamma", args.n, a, args.window, args.resolution, other, state=state)
        print(f"max |exact - approx|  {float(np.max(np.abs(gamma.values - alt.values))):.6e}", file=out)
    if args.figure:
        from .plotting import render_field
        render_field(grid, args.figure)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    a = _amplitude(args)
    report = sensitivity.sensitivity_sweep(args.n, a, args.steps, args.y_over)
    out = sys.stdout
    if args.format == "csv":
        text = "n,a,arg_delta,root\n" + report.rows().replace(" ", ",")
    else:
        text = report.table()
        if args.rows:
            text += "# n a arg_delta root\n" + report.rows()
    from .overlap import gamma_approx
    from .states import Displacement
    g = gamma_approx(args.n, a, Displacement(report.delta_min, report.arg_min)).gamma
    ok = "yes" if g < args.epsilon else "no"
    text += f"gamma_approx(delta_min) {g:.3e}  below epsilon: {ok}\n"
    if args.output and args.output != "-":
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {args.output!r}: {exc}") from exc
    else:
        out.write(text)
    if args.figure:
        from .plotting import render_sweep
        render_sweep(report, args.figure)
    return EXIT_OK


def cmd_isotropy(args) -> int:
    if args.n < 2:
        raise UsageError("isotropy needs --n >= 2 (the largest n in the table)")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        rows = sensitivity.asymptotic_isotropy_table(args.n, args.a, args.steps)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    lines = ["# n a metric"]
    for n, metric in rows:
        a_n = args.a if args.a is not None else default_amplitude(n)
        lines.append(f"{n} {a_n:g} {metric:.6e}")
    text = "\n".join(lines) + "\n"
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.figure:
        from .plotting import render_isotropy
        render_isotropy(rows, args.figure)
    return EXIT_OK


def cmd_validate(args) -> int:
    checks = validation.run_checks(args.n, args.a, args.quick)
    print(f"{'check':<34} {'error':>11} {'tol':>9}  result")
    for c in checks:
        print(c.line())
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "wigner": cmd_wigner,
    "overlap": cmd_overlap,
    "sensitivity": cmd_sensitivity,
    "isotropy": cmd_isotropy,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        _check(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"subplanck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"subplanck: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ArithmeticError, OSError, ValueError) as exc:
        print(f"subplanck: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
