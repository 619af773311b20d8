"""Command-line interface: ``lhtl {compute,sweep,verify,classical}``.

Exit codes: 0 success, 1 failed verification check, 2 domain error,
3 I/O error, 4 oracle convergence error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from .classical import LineParams, line_quantities
from .errors import ConvergenceError, DomainError
from .nri import CellContext, NriMethod, fluctuation_bracket, nri
from .sweep import (
    Axis,
    FixedParams,
    Scale,
    SweepSpec,
    figure_preset,
    render_svg,
    run_sweeps,
    write_csv,
)
from .thermal import ThermalFockSpec, ThetaConvention
from .units import FrequencyConvention, FrequencySpec, UnitKind, to_angular, unit_system
from .verify import run_verification

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_CONVERGENCE = 4

DEFAULTS = {
    "units": "SI",
    "freq_convention": "angular",
    "method": "eq11",
    "theta_convention": "paper",
    "tilde_rule": "equal_n",
    "tol": 1e-8,
    "temperature": 1.0,
    "omega": 1.0,
    "n": 0,
    "dj2": 1.0,
    "z0": 1.0,
    "zl": 1.0,
    "scale": "linear",
    "points": 50,
    "out": ".",
    "theta_max": 1.0,
    "dim_cap": 128,
    "name": None,
}


class FlagError(DomainError):
    def __init__(self, flag: str, message: str):
        super().__init__(f"--{flag.replace('_', '-')}: {message}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with kebab-case keys mirroring the flags")
    p.add_argument("--units", type=str.upper, choices=["SI", "NATURAL"])
    p.add_argument("--freq-convention", type=str.lower, choices=["angular", "cyclic"])
    p.add_argument("--method", type=str.lower, choices=["eq11", "chain"])
    p.add_argument("--theta-convention", type=str.lower, choices=["paper", "standard"])
    p.add_argument("--tilde-rule", type=str.lower, choices=["equal_n", "zero"])


def _add_point(p: argparse.ArgumentParser) -> None:
    p.add_argument("--temperature", type=float, help="bath temperature T")
    p.add_argument("--omega", type=float, help="mode frequency")
    p.add_argument("--n", type=int, help="photon number")
    p.add_argument("--dj2", type=float, help="current fluctuation")
    p.add_argument("--z0", type=float, help="cell length")
    p.add_argument("--zl", type=float, help="characteristic impedance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhtl", description="Negative refractive index of a quantized left-handed line."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate n_r at one point")
    _add_common(p)
    _add_point(p)

    p = sub.add_parser("sweep", help="parameter sweep to CSV (and SVG)")
    _add_common(p)
    _add_point(p)
    p.add_argument("--preset", type=str.lower, choices=["fig2", "fig3", "fig4"])
    p.add_argument("--axis", type=str.lower, choices=["temperature", "omega", "photon_n", "dj2"])
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--scale", type=str.lower, choices=["linear", "log"])
    p.add_argument("--series-param", type=str.lower,
                   choices=["temperature", "omega", "photon_n", "dj2"])
    p.add_argument("--series", help="comma-separated values of the series parameter")
    p.add_argument("--name", help="output file stem")
    p.add_argument("--out", help="output directory")
    p.add_argument("--svg", action="store_true", default=None, help="also write an SVG plot")

    p = sub.add_parser("verify", help="run the self-check suite")
    _add_common(p)
    p.add_argument("--theta-max", type=float)
    p.add_argument("--dim-cap", type=int)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("classical", help="print the classical line quantities")
    _add_common(p)
    p.add_argument("--c-cell", type=float, required=True, help="C_l (F*m)")
    p.add_argument("--l-cell", type=float, required=True, help="L_l (H*m)")
    p.add_argument("--omega", type=float)
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from --config, then LHTL_UNITS, then built-in defaults."""
    config = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except OSError as exc:
            raise OSError(exc.errno, f"cannot read config {args.config}: {exc.strerror}")
        except json.JSONDecodeError as exc:
            raise FlagError("config", f"invalid JSON: {exc}") from None
        if not isinstance(config, dict):
            raise FlagError("config", "top level must be an object")
    config = {k.replace("-", "_"): v for k, v in config.items()}
    config.setdefault("start", config.pop("from", None))
    config.setdefault("stop", config.pop("to", None))
    env_units = os.environ.get("LHTL_UNITS")
    for key, value in vars(args).items():
        if value is not None:
            continue
        if config.get(key) is not None:
            value = config[key]
        elif key == "units" and env_units:
            value = env_units.upper()
        else:
            value = DEFAULTS.get(key)
        setattr(args, key, value)
    if str(args.units).upper() not in ("SI", "NATURAL"):
        raise FlagError("units", f"unknown unit system {args.units!r}")
    return args


def _require(flag: str, value, ok, message: str):
    if value is None or (isinstance(value, float) and math.isnan(value)) or not ok(value):
        raise FlagError(flag, f"{message}, got {value!r}")
    return value


def _validate_point(args) -> None:
    _require("temperature", args.temperature, lambda v: 0 <= v < math.inf, "must be >= 0")
    _require("omega", args.omega, lambda v: 0 < v < math.inf, "must be > 0")
    _require("n", args.n, lambda v: int(v) == v and v >= 0, "must be an integer >= 0")
    _require("dj2", args.dj2, lambda v: 0 <= v < math.inf, "must be >= 0")
    _require("z0", args.z0, lambda v: 0 < v < math.inf, "must be > 0")
    _require("zl", args.zl, lambda v: 0 < v < math.inf, "must be > 0")


def _fixed(args) -> FixedParams:
    return FixedParams(
        temperature=float(args.temperature),
        omega=float(args.omega),
        n=int(args.n),
        dj2=float(args.dj2),
        z0=float(args.z0),
        z_char=float(args.zl),
        units=UnitKind(str(args.units).upper()),
        freq_convention=FrequencyConvention(str(args.freq_convention).upper()),
        method=NriMethod(str(args.method).upper()),
        theta_convention=ThetaConvention(str(args.theta_convention).upper()),
    )


def cmd_compute(args) -> int:
    _validate_point(args)
    units = unit_system(args.units)
    omega = to_angular(FrequencySpec(args.omega, FrequencyConvention(args.freq_convention.upper())))
    spec = ThermalFockSpec(args.n, args.temperature, omega)
    ctx = CellContext(args.z0, args.zl, omega)
    res = nri(args.dj2, spec, ctx, units, NriMethod(args.method.upper()))
    bracket = fluctuation_bracket(spec.n, res.n0)
    print(
        f"n_r={res.n_r:.6e} x={res.x:.6e} n0={res.n0:.6e} bracket={bracket:.6e} "
        f"method={res.method.value}"
    )
    return EXIT_OK


_AXIS = {"temperature": Axis.TEMPERATURE, "omega": Axis.OMEGA, "photon_n": Axis.PHOTON_N,
         "dj2": Axis.DJ2}


def _sweep_specs(args) -> list:
    if args.preset:
        specs = figure_preset(args.preset)
        if "points" in _explicit(args):
            specs = [replace(s, points=args.points) for s in specs]
        return specs
    if args.axis is None:
        raise FlagError("axis", "required unless --preset is given")
    _validate_point(args)
    axis = _AXIS[args.axis]
    _require("from", args.start, math.isfinite, "must be a finite number")
    _require("to", args.stop, math.isfinite, "must be a finite number")
    if not args.start < args.stop:
        raise FlagError("from", f"must be below --to ({args.stop!r}), got {args.start!r}")
    points = args.points
    if axis is Axis.PHOTON_N and "points" not in _explicit(args):
        points = int(args.stop - args.start) + 1
    _require("points", points, lambda v: v >= 2, "must be >= 2")
    series_param = _AXIS[args.series_param] if args.series_param else (
        Axis.DJ2 if axis is not Axis.DJ2 else Axis.TEMPERATURE)
    series = ()
    if args.series:
        try:
            series = tuple(float(v) for v in str(args.series).split(","))
        except ValueError:
            raise FlagError("series", f"not a comma-separated number list: {args.series!r}")
    return [SweepSpec(axis, args.start, args.stop, points, Scale(args.scale.upper()),
                      _fixed(args), series_param, series, args.name or "sweep")]


def _explicit(args) -> set:
    return getattr(args, "_explicit", set())


def cmd_sweep(args) -> int:
    specs = _sweep_specs(args)
    table = run_sweeps(specs)
    name = args.name or specs[0].name
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory {out}: {exc.strerror}")
    csv_path = out / f"{name}.csv"
    size = write_csv(table, csv_path)
    print(f"csv={csv_path} bytes={size} rows={len(table.rows)} series={len(specs)}")
    if args.svg:
        svg_path = out / f"{name}.svg"
        text = render_svg(table)
        try:
            svg_path.write_bytes(text.encode("utf-8"))
        except OSError as exc:
            raise OSError(exc.errno, f"cannot write SVG to {svg_path}: {exc.strerror}")
        print(f"svg={svg_path} bytes={len(text.encode('utf-8'))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    _require("theta_max", args.theta_max, lambda v: 0 < v < math.inf, "must be > 0")
    _require("dim_cap", args.dim_cap, lambda v: v >= 2, "must be >= 2")
    _require("tol", args.tol, lambda v: v > 0, "must be > 0")
    report = run_verification(args.theta_max, args.dim_cap, args.tol)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_classical(args) -> int:
    q = line_quantities(LineParams(args.c_cell, args.l_cell), args.omega)
    print(
        f"gamma={q.gamma.real:.6e}{q.gamma.imag:+.6e}j beta={q.beta:.6e} "
        f"z_char={q.z_char:.6e} v_phase={q.v_phase:.6e} v_group={q.v_group:.6e} "
        f"eps_eff={q.eps_eff:.6e} mu_eff={q.mu_eff:.6e} n_classical={q.refractive_index:.6e}"
    )
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "classical": cmd_classical,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._explicit = {k for k, v in vars(args).items() if v is not None}
    try:
        args = _resolve(args)
        return COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
