"""Command-line front end.

Angles are given and reported in degrees here and converted to radians
before any computation. Floating-point values in CSV/JSON data are written
with 9 significant digits (``format(x, ".9g")``); nothing time dependent is
written, so identical arguments give byte-identical output.

Exit status: 0 success, 1 computation failure, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .array_model import ArrayGeometry, Direction
from .coupling import coupling_matrix
from .directivity import optimal_excitation
from .errors import ConfigError, FactorizationFailure, SuperdirectivityError
from .patterns import DEFAULT_COUNT, endfire_plane_cut, pattern_grid, spacing_sweep, uncoupled_reference_db
from .quadrature import DEFAULT_ORDER
from .verification import run_checks

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG = 0, 1, 2
FLAGS = {"rows": "--m", "cols": "--n", "dx": "--dx", "dz": "--dz", "phi": "--phi", "theta": "--theta"}


def fmt(x: float) -> str:
    return format(float(x), ".9g")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=4, help="rows along z (default 4)")
    common.add_argument("--n", type=int, default=8, help="columns along x (default 8)")
    common.add_argument("--dx", type=float, default=0.5, help="x spacing in wavelengths")
    common.add_argument("--dz", type=float, default=0.5, help="z spacing in wavelengths")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--quad-order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--no-banner", action="store_true", help="omit the provenance header")

    parser = argparse.ArgumentParser(prog="superdirective", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pattern", parents=[common], help="maximum directivity over the half space")
    p.add_argument("--phi-count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--theta-count", type=int, default=DEFAULT_COUNT)

    p = sub.add_parser("cut", parents=[common], help="maximum directivity in the endfire plane (phi = 0)")
    p.add_argument("--theta-count", type=int, default=DEFAULT_COUNT)

    p = sub.add_parser("sweep", parents=[common], help="endfire-plane cuts for several spacings (dx = dz)")
    p.add_argument("--spacings", required=True, help="comma separated spacings in wavelengths")
    p.add_argument("--theta-count", type=int, default=DEFAULT_COUNT)

    p = sub.add_parser("weights", parents=[common], help="optimal excitation toward one direction")
    p.add_argument("--phi", type=float, default=90.0, help="azimuth in degrees")
    p.add_argument("--theta", type=float, default=90.0, help="zenith in degrees")

    p = sub.add_parser("verify", parents=[common], help="run the closed-form vs oracle checks")
    p.add_argument("--samples", type=int, default=10, help="random draws per check")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _geometry(args) -> ArrayGeometry:
    return ArrayGeometry(args.m, args.n, args.dx, args.dz)


def _banner(args, geom_text: str) -> str:
    return f"# superdirective {__version__} {args.command} {geom_text}\n"


def _geom_text(geom: ArrayGeometry) -> str:
    return f"M={geom.rows} N={geom.cols} dx={fmt(geom.dx)} dz={fmt(geom.dz)}"


def _geom_json(geom: ArrayGeometry) -> dict:
    return {"M": geom.rows, "N": geom.cols, "dx_wl": geom.dx, "dz_wl": geom.dz}


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)


def _check_count(value: int, flag: str, minimum: int = 2) -> None:
    if value < minimum:
        raise ConfigError(f"{flag} must be at least {minimum}, got {value}")


def cmd_pattern(args) -> int:
    geom = _geometry(args)
    _check_count(args.phi_count, "--phi-count")
    _check_count(args.theta_count, "--theta-count")
    grid = pattern_grid(geom, args.phi_count, args.theta_count)
    phi_deg, theta_deg = np.degrees(grid.phi), np.degrees(grid.theta)
    if (args.format or "csv") == "csv":
        buf = io.StringIO()
        if not args.no_banner:
            buf.write(_banner(args, _geom_text(geom)))
        buf.write("phi_deg,theta_deg,directivity_db\n")
        for p, ph in enumerate(phi_deg):
            for t, th in enumerate(theta_deg):
                buf.write(f"{fmt(ph)},{fmt(th)},{fmt(grid.values_db[p, t])}\n")
        text = buf.getvalue()
    else:
        doc = {
            "geometry": _geom_json(geom),
            "kind": grid.kind,
            "phi_deg": [float(fmt(x)) for x in phi_deg],
            "theta_deg": [float(fmt(x)) for x in theta_deg],
            "directivity_db": [[float(fmt(v)) for v in row] for row in grid.values_db],
        }
        if not args.no_banner:
            doc = {"generator": f"superdirective {__version__}", **doc}
        text = _json(doc)
    _emit(args, text)
    peak, where = grid.peak()
    print(
        f"# peak {peak:.2f} dB at phi {math.degrees(where.phi):.1f} deg, theta {math.degrees(where.theta):.1f} deg"
        f" (uncoupled reference {uncoupled_reference_db(geom):.2f} dB)"
    )
    return EXIT_OK


def cmd_cut(args) -> int:
    geom = _geometry(args)
    _check_count(args.theta_count, "--theta-count")
    theta, values = endfire_plane_cut(geom, args.theta_count)
    theta_deg = np.degrees(theta)
    if (args.format or "csv") == "csv":
        lines = [] if args.no_banner else [_banner(args, _geom_text(geom)).rstrip("\n")]
        lines.append("theta_deg,directivity_db")
        lines += [f"{fmt(t)},{fmt(v)}" for t, v in zip(theta_deg, values)]
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            "geometry": _geom_json(geom),
            "phi_deg": 0.0,
            "theta_deg": [float(fmt(t)) for t in theta_deg],
            "directivity_db": [float(fmt(v)) for v in values],
        }
        text = _json(doc)
    _emit(args, text)
    k = int(np.argmax(values))
    print(f"# peak {values[k]:.2f} dB at phi 0.0 deg, theta {theta_deg[k]:.1f} deg")
    return EXIT_OK


def _parse_spacings(text: str) -> list[float]:
    try:
        spacings = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"--spacings must be comma separated numbers, got {text!r}") from None
    if not spacings:
        raise ConfigError("--spacings is empty")
    return spacings


def cmd_sweep(args) -> int:
    spacings = _parse_spacings(args.spacings)
    _check_count(args.theta_count, "--theta-count")
    for s in spacings:
        try:
            ArrayGeometry(args.m, args.n, s, s)
        except ConfigError as exc:
            raise ConfigError(f"--spacings entry {s}: {exc}") from None
    result = spacing_sweep(args.m, args.n, spacings, args.theta_count)
    theta_deg = np.degrees(result.theta)
    if (args.format or "csv") == "csv":
        lines = [] if args.no_banner else [f"# superdirective {__version__} sweep M={args.m} N={args.n}"]
        lines.append("spacing_wl,theta_deg,directivity_db")
        for s in spacings:
            if s in result.failures:
                lines.append(f"# spacing {fmt(s)} failed: {result.failures[s]}")
                continue
            lines += [f"{fmt(s)},{fmt(t)},{fmt(v)}" for t, v in zip(theta_deg, result.cuts[s])]
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            "M": args.m,
            "N": args.n,
            "phi_deg": 0.0,
            "theta_deg": [float(fmt(t)) for t in theta_deg],
            "curves": [
                {"spacing_wl": s, "directivity_db": [float(fmt(v)) for v in result.cuts[s]]}
                if s not in result.failures
                else {"spacing_wl": s, "error": result.failures[s]}
                for s in spacings
            ],
        }
        text = _json(doc)
    _emit(args, text)
    for s in spacings:
        if s in result.failures:
            print(f"# spacing {fmt(s)} failed: {result.failures[s]}")
        else:
            print(f"# spacing {fmt(s)} peak {result.peak(s):.2f} dB")
    return EXIT_OK if result.cuts else EXIT_FAILURE


def cmd_weights(args) -> int:
    geom = _geometry(args)
    direction = Direction.from_degrees(args.phi, args.theta)
    cm = coupling_matrix(geom)
    opt = optimal_excitation(geom, direction)
    rows = []
    for flat, w in enumerate(opt.weights):
        m, n = divmod(flat, geom.cols)
        rows.append(
            {
                "m": m,
                "n": n,
                "re": float(fmt(w.real)),
                "im": float(fmt(w.imag)),
                "abs": float(fmt(abs(w))),
                "phase_deg": float(fmt(math.degrees(math.atan2(w.imag, w.real)))),
            }
        )
    if (args.format or "json") == "json":
        doc = {
            "geometry": _geom_json(geom),
            "direction": {
                "phi_rad": direction.phi,
                "theta_rad": direction.theta,
                "phi_deg": args.phi,
                "theta_deg": args.theta,
            },
            "g_star_linear": float(fmt(opt.achieved.linear)),
            "g_star_db": float(fmt(opt.achieved.db)),
            "condition_estimate": float(fmt(cm.condition_estimate)),
            "jitter_applied": cm.jitter_applied,
            "normalization": opt.normalization,
            "weights": rows,
        }
        if not args.no_banner:
            doc = {"generator": f"superdirective {__version__}", **doc}
        text = _json(doc)
    else:
        lines = [] if args.no_banner else [_banner(args, _geom_text(geom)).rstrip("\n")]
        lines.append("m,n,re,im,abs,phase_deg")
        lines += [",".join(fmt(r[k]) for k in ("m", "n", "re", "im", "abs", "phase_deg")) for r in rows]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    print(f"# g_star {opt.achieved.db:.2f} dB ({opt.achieved.linear:.6g} linear)")
    return EXIT_OK


def cmd_verify(args) -> int:
    geom = _geometry(args)
    if args.quad_order < 8:
        raise ConfigError(f"--quad-order must be at least 8, got {args.quad_order}")
    _check_count(args.samples, "--samples", 1)
    try:
        results, mean = run_checks(geom, args.quad_order, args.samples, args.seed)
    except FactorizationFailure as exc:
        print(f"FAIL FactorizationFailure: {exc}")
        return EXIT_FAILURE
    cm = coupling_matrix(geom)
    lines = [
        f"verify {_geom_text(geom)} quad_order={args.quad_order} samples={args.samples} seed={args.seed}",
        f"condition_estimate {cm.condition_estimate:.3e}  jitter_applied {cm.jitter_applied:.1e}",
        f"half-space mean {'n/a' if mean is None else format(mean, '.6f')} (MN = {geom.size})",
        f"{'check':<50} {'residual':>11} {'tolerance':>10}  result",
    ]
    for r in results:
        lines.append(f"{r.name:<50} {r.residual:11.3e} {r.tolerance:10.1e}  {'PASS' if r.passed else 'FAIL'}")
        if r.error:
            lines.append(f"    {r.error}")
    failed = [r for r in results if not r.passed]
    if failed:
        lines.append(f"FAIL first failing check: {failed[0].name}")
    else:
        lines.append("PASS all checks")
    print("\n".join(lines))
    if args.out is not None:
        doc = {
            "geometry": _geom_json(geom),
            "quad_order": args.quad_order,
            "samples": args.samples,
            "seed": args.seed,
            "condition_estimate": cm.condition_estimate,
            "jitter_applied": cm.jitter_applied,
            "half_space_mean": mean,
            "checks": [
                {"name": r.name, "residual": r.residual, "tolerance": r.tolerance, "passed": r.passed, "error": r.error}
                for r in results
            ],
        }
        with open(args.out, "w") as fh:
            fh.write(_json(doc))
    return EXIT_FAILURE if failed else EXIT_OK


COMMANDS = {
    "pattern": cmd_pattern,
    "cut": cmd_cut,
    "sweep": cmd_sweep,
    "weights": cmd_weights,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        flag = FLAGS.get(exc.field)
        where = f" ({flag})" if flag else ""
        print(f"error: invalid configuration{where}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FactorizationFailure as exc:
        print(f"error: FactorizationFailure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (SuperdirectivityError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
