"""Command-line surface.

Exit codes: 0 success, 2 usage or config error, 3 I/O error, 4 domain
error (for example a diverging shortest time at alpha = 0).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from .brachistochrone import solve as solve_brachistochrone
from .config import ConfigError, build_spec, load_config
from .dynamics import Method
from .figures import write_figures
from .model import Convention
from .output import (
    EVOLVE_HEADER,
    PHASE_HEADER,
    SCAN_HEADER,
    fmt,
    render_csv,
    write_text,
)
from .sweeps import evolve_rows, phase_rows, scan_rows
from .verify import DEFAULT_TOLS, run_verify

#: the denser default grid the phase profile needs for its 1e-6 gate
PHASE_DEFAULT_POINTS = 4001


def _tol_dest(name: str) -> str:
    return "tol_" + name.replace("-", "_")


def _add_model_flags(p: argparse.ArgumentParser, many_alphas: bool) -> None:
    p.add_argument("--J", type=float, default=None, help="exchange coupling")
    p.add_argument("--gamma", type=float, default=None, help="zz anisotropy")
    p.add_argument("--B", type=float, default=None, help="magnetic field")
    p.add_argument(
        "--alpha", type=float, default=None, help="intrinsic noise rate"
    )
    if many_alphas:
        p.add_argument(
            "--alphas",
            default=None,
            help="comma-separated noise rates, one sweep cell each",
        )
    p.add_argument(
        "--convention",
        choices=[c.value for c in Convention],
        default=None,
        help="decoherence-rate convention",
    )


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--eta-max", dest="eta_max", type=float, default=None,
        help="end of the eta grid",
    )
    p.add_argument(
        "--steps", type=int, default=None, help="number of grid points"
    )
    p.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=None,
        help="propagation route",
    )


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--seed", type=int, default=None, help="search seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxzgeom",
        description=(
            "Exact dynamics, entanglement geometry, and geometric phases "
            "of two XXZ-coupled spins under intrinsic decoherence"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energies and eigenstates")
    p.add_argument("--J", type=float, required=True, help="exchange coupling")
    p.add_argument("--gamma", type=float, default=0.0, help="zz anisotropy")
    p.add_argument("--B", type=float, default=0.0, help="magnetic field")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("evolve", help="single-alpha state evolution CSV")
    _add_model_flags(p, many_alphas=False)
    _add_grid_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("scan", help="geometry quantities over an eta grid")
    _add_model_flags(p, many_alphas=True)
    _add_grid_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser(
        "brachistochrone", help="shortest-time summary at fixed J, alpha"
    )
    _add_model_flags(p, many_alphas=False)
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_brachistochrone)

    p = sub.add_parser("geomphase", help="kinematic geometric phase CSV")
    _add_model_flags(p, many_alphas=False)
    _add_grid_flags(p)
    _add_io_flags(p)
    p.add_argument(
        "--closed-form",
        action="store_true",
        dest="closed_form",
        help="also evaluate the printed closed form and the gap to it",
    )
    p.set_defaults(func=cmd_geomphase)

    p = sub.add_parser("verify", help="run the oracle check list")
    p.add_argument(
        "--convention",
        choices=[c.value for c in Convention],
        default=Convention.PAPER.value,
    )
    for name in DEFAULT_TOLS:
        p.add_argument(
            f"--tol-{name}",
            dest=_tol_dest(name),
            type=float,
            default=None,
            help=argparse.SUPPRESS,
        )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write every figure panel CSV")
    p.add_argument(
        "--out-dir", dest="out_dir", default="figures",
        help="directory for the panel files",
    )
    p.set_defaults(func=cmd_figures)

    return parser


def _spec_from_args(args: argparse.Namespace):
    """SweepSpec from config file plus flags, and whether the file set the grid."""
    file_values = load_config(args.config) if args.config else {}
    alphas = None
    if getattr(args, "alphas", None) is not None:
        if args.alpha is not None:
            raise ConfigError("give either --alpha or --alphas, not both")
        parts = [p.strip() for p in args.alphas.split(",") if p.strip()]
        if not parts:
            raise ConfigError("empty --alphas list")
        try:
            alphas = tuple(float(p) for p in parts)
        except ValueError:
            raise ConfigError(
                f"--alphas must be comma-separated numbers, got {args.alphas!r}"
            ) from None
    elif args.alpha is not None:
        alphas = (args.alpha,)
    cli_values = {
        "J": args.J,
        "gamma": args.gamma,
        "B": args.B,
        "alphas": alphas,
        "eta_max": getattr(args, "eta_max", None),
        "n_points": getattr(args, "steps", None),
        "method": Method(args.method) if getattr(args, "method", None) else None,
        "convention": Convention(args.convention) if args.convention else None,
        "seed": getattr(args, "seed", None),
    }
    return build_spec(file_values, cli_values), "n_points" in file_values


def cmd_spectrum(args: argparse.Namespace) -> int:
    j, g, b = args.J, args.gamma, args.B
    energies = (g + 2 * b, -g + 2 * j, -g - 2 * j, g - 2 * b)
    s = 2.0 ** -0.5
    states = (
        (1.0, 0.0, 0.0, 0.0),
        (0.0, s, s, 0.0),
        (0.0, s, -s, 0.0),
        (0.0, 0.0, 0.0, 1.0),
    )
    lines = ["energies:"]
    lines += [f"  E{k + 1} = {fmt(e)}" for k, e in enumerate(energies)]
    lines.append("eigenstates (rows, basis uu ud du dd):")
    lines += [
        f"  psi{k + 1}: " + " ".join(fmt(x) for x in row)
        for k, row in enumerate(states)
    ]
    write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    spec, _ = _spec_from_args(args)
    write_text(render_csv(EVOLVE_HEADER, evolve_rows(spec)), args.out)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    spec, _ = _spec_from_args(args)
    write_text(render_csv(SCAN_HEADER, scan_rows(spec)), args.out)
    return 0


def _fmt_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}j"


def cmd_brachistochrone(args: argparse.Namespace) -> int:
    file_values = load_config(args.config) if args.config else {}
    cli_values = {
        "J": args.J,
        "gamma": args.gamma,
        "B": args.B,
        "alphas": (args.alpha,) if args.alpha is not None else None,
        "convention": Convention(args.convention) if args.convention else None,
    }
    spec = build_spec(file_values, cli_values)
    if len(spec.alphas) != 1:
        raise ConfigError(
            f"brachistochrone takes exactly one alpha, got {len(spec.alphas)}"
        )
    params = dataclasses.replace(spec.params_base, noise_alpha=spec.alphas[0])
    r = solve_brachistochrone(params)
    lines = [
        f"v_hs_max = {fmt(r.v_max)}",
        f"l_hs_at_c1 = {fmt(r.length)}",
        f"t_min = {fmt(r.t_min)}",
        f"eta_min = {fmt(r.eta_min)}",
        f"concurrence = {fmt(r.concurrence)}",
        "optimal state:",
    ]
    for row in np.asarray(r.state):
        lines.append("  " + " ".join(_fmt_complex(z) for z in row))
    lines.append(f"milburn_residual = {fmt(r.residual)}")
    write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_geomphase(args: argparse.Namespace) -> int:
    spec, file_has_points = _spec_from_args(args)
    if len(spec.alphas) != 1:
        raise ConfigError(
            f"geomphase takes exactly one alpha, got {len(spec.alphas)}"
        )
    n_points = spec.n_points
    if args.steps is None and not file_has_points:
        n_points = PHASE_DEFAULT_POINTS
    params = dataclasses.replace(spec.params_base, noise_alpha=spec.alphas[0])
    rows = phase_rows(
        params,
        spec.eta_max,
        n_points,
        method=spec.method,
        closed_form=args.closed_form,
    )
    write_text(render_csv(PHASE_HEADER, rows), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    overrides = {}
    for name in DEFAULT_TOLS:
        value = getattr(args, _tol_dest(name), None)
        if value is not None:
            overrides[name] = value
    report = run_verify(Convention(args.convention), overrides)
    print(report.render(), end="")
    return 0 if report.exit_ok else 1


def cmd_figures(args: argparse.Namespace) -> int:
    names = write_figures(args.out_dir)
    for name in names:
        print(name)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
