"""Command line front end.

Four subcommands, all driven by an INI run file (see config module):

    casimir-slabs force      --config run.ini
    casimir-slabs sweep      --config run.ini --out sweep.csv
    casimir-slabs grid       --config run.ini --out grid.csv
    casimir-slabs dispersion --config run.ini --out response.csv

Exit codes: 0 success, 2 bad configuration or usage, 3 finished with
convergence warnings (results are still written, flagged per point),
4 unexpected internal failure.

CSV outputs get a JSON sidecar <out>.run.json recording the tool version,
the verbatim config, resolved run parameters, and derived diagnostics, so a
result file can be traced back to its inputs. With --format json the record
itself is the output. The record's "created" timestamp is informational and
excluded from byte-for-byte reproducibility.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .analysis import (
    EquilibriumReport,
    GRID_PARAMS,
    find_equilibria,
    grid_scan,
    static_impedance_report,
    sweep_distance,
)
from .config import ConfigError, RunConfig, parse_config, parse_length
from .lifshitz import (
    LAMBDA0,
    ConvergenceError,
    ForceResult,
    Scene,
    casimir_force,
)
from .materials import (
    IdealMaterialError,
    ZLimit,
    eval_imaginary_axis,
    eval_real_frequency,
    impedance,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NOT_CONVERGED = 3
EXIT_INTERNAL = 4


def _fmt(x: float) -> str:
    return "%.9g" % x


def _json_safe(obj):
    """NaN and infinities have no strict-JSON spelling; map them to null."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _record(command: str, cfg: RunConfig, params: dict, results: dict) -> dict:
    return {
        "tool": {"name": "casimir-slabs", "version": __version__},
        "created": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "config": cfg.text,
        "quadrature": dataclasses.asdict(cfg.quad),
        "parameters": params,
        "results": results,
    }


# [run] key extraction; every key is popped so leftovers can be rejected

def _run_float(run: dict, key: str, default=None) -> float:
    if key not in run:
        if default is None:
            raise ConfigError(f"run.{key}: required key is missing")
        return default
    raw = run.pop(key)
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"run.{key}: not a number: {raw!r}") from None


def _run_int(run: dict, key: str, default=None) -> int:
    if key not in run:
        if default is None:
            raise ConfigError(f"run.{key}: required key is missing")
        return default
    raw = run.pop(key)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"run.{key}: not an integer: {raw!r}") from None


def _run_length(run: dict, key: str, default=None) -> float:
    if key not in run:
        if default is None:
            raise ConfigError(f"run.{key}: required key is missing")
        return default
    return parse_length(run.pop(key), f"run.{key}")


def _run_choice(run: dict, key: str, choices: tuple, default=None) -> str:
    if key not in run:
        if default is None:
            raise ConfigError(f"run.{key}: required key is missing")
        return default
    raw = run.pop(key)
    if raw not in choices:
        raise ConfigError(
            f"run.{key}: expected one of {', '.join(choices)}, got {raw!r}")
    return raw


def _no_leftovers(run: dict, command: str) -> None:
    if run:
        stray = ", ".join(f"run.{k}" for k in sorted(run))
        raise ConfigError(f"unknown keys for {command}: {stray}")


def _point_dict(gap: float, res: ForceResult, converged: bool) -> dict:
    return {
        "gap_c_over_w0": gap,
        "gap_lambda0": gap / LAMBDA0,
        "F": res.force,
        "F_TE": res.force_te,
        "F_TM": res.force_tm,
        "F_r": res.relative,
        "err": res.error_estimate,
        "converged": converged,
    }


def _impedance_json(z) -> object:
    if z is ZLimit.ZERO:
        return "zero"
    if z is ZLimit.INFINITE:
        return "infinite"
    return z


def _equilibria_json(report: EquilibriumReport) -> list:
    return [
        {
            "gap_c_over_w0": c.gap,
            "gap_lambda0": c.gap / LAMBDA0,
            "kind": c.kind.value,
            "bracket_width": c.bracket_width,
            "refined": c.refined,
        }
        for c in report.crossings
    ]


def cmd_force(cfg: RunConfig, args) -> int:
    run = dict(cfg.run)
    gap = _run_length(run, "gap")
    _no_leftovers(run, "force")

    scene = Scene(cfg.slab_a, cfg.slab_b, gap)
    converged = True
    try:
        res = casimir_force(scene, cfg.quad)
    except ConvergenceError as err:
        res = err.result
        converged = False
        print(f"warning: {err}", file=sys.stderr)

    sign_note = ""
    if res.force > 0.0:
        sign_note = "  (attractive)"
    elif res.force < 0.0:
        sign_note = "  (repulsive)"
    lines = [
        f"F           = {_fmt(res.force)}{sign_note}",
        f"F_TE        = {_fmt(res.force_te)}",
        f"F_TM        = {_fmt(res.force_tm)}",
        f"F_r         = {_fmt(res.relative)}",
        f"error       = {_fmt(res.error_estimate)}",
        f"evaluations = {res.evaluations}",
        f"converged   = {'yes' if converged else 'no'}",
    ]
    point = _point_dict(gap, res, converged)
    record = _record("force", cfg, {"gap": gap}, point)

    if args.out is None:
        if args.format == "json":
            print(json.dumps(_json_safe(record), indent=2, allow_nan=False))
        else:
            print("\n".join(lines))
    elif args.format == "json":
        _write_json(args.out, record)
    else:
        _write_csv(args.out,
                   ["F", "F_TE", "F_TM", "F_r", "err", "evaluations", "converged"],
                   [[_fmt(res.force), _fmt(res.force_te), _fmt(res.force_tm),
                     _fmt(res.relative), _fmt(res.error_estimate),
                     res.evaluations, int(converged)]])
        print("\n".join(lines))
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


SWEEP_HEADER = ["gap_c_over_w0", "gap_lambda0", "F", "F_TE", "F_TM", "F_r",
                "err", "converged"]


def cmd_sweep(cfg: RunConfig, args) -> int:
    run = dict(cfg.run)
    gap_min = _run_length(run, "gap_min")
    gap_max = _run_length(run, "gap_max")
    points = _run_int(run, "points")
    spacing = _run_choice(run, "spacing", ("log", "linear"), default="log")
    refine_tol = _run_float(run, "refine_tol", default=1e-3)
    _no_leftovers(run, "sweep")
    if args.out is None:
        raise ConfigError("sweep requires --out")

    try:
        sweep = sweep_distance(cfg.slab_a, cfg.slab_b, gap_min, gap_max,
                               points, spacing, cfg.quad, jobs=args.jobs)
    except ValueError as err:
        raise ConfigError(str(err)) from None
    report = find_equilibria(sweep, refine_tol, cfg.quad) \
        if sum(sweep.converged) >= 2 else EquilibriumReport(())
    impedances = static_impedance_report(cfg.slab_a, cfg.slab_b)

    point_dicts = [_point_dict(g, r, ok) for g, r, ok in
                   zip(sweep.gaps, sweep.forces, sweep.converged)]
    record = _record(
        "sweep", cfg,
        {"gap_min": gap_min, "gap_max": gap_max, "points": points,
         "spacing": spacing, "refine_tol": refine_tol},
        {
            "points": point_dicts,
            "equilibria": _equilibria_json(report),
            "impedance": {
                "z_a0": _impedance_json(impedances.z_a0),
                "z_b0": _impedance_json(impedances.z_b0),
                "prediction": impedances.prediction.value,
            },
        })

    if args.format == "json":
        _write_json(args.out, record)
    else:
        rows = [[_fmt(p["gap_c_over_w0"]), _fmt(p["gap_lambda0"]), _fmt(p["F"]),
                 _fmt(p["F_TE"]), _fmt(p["F_TM"]), _fmt(p["F_r"]),
                 _fmt(p["err"]), int(p["converged"])] for p in point_dicts]
        _write_csv(args.out, SWEEP_HEADER, rows)
        _write_json(Path(str(args.out) + ".run.json"), record)

    bad = sum(1 for ok in sweep.converged if not ok)
    if bad:
        print(f"warning: {bad} of {points} sweep points did not converge",
              file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_grid(cfg: RunConfig, args) -> int:
    run = dict(cfg.run)
    x_param = _run_choice(run, "x_param", GRID_PARAMS)
    x_min = _run_float(run, "x_min")
    x_max = _run_float(run, "x_max")
    nx = _run_int(run, "nx")
    y_param = _run_choice(run, "y_param", GRID_PARAMS)
    y_min = _run_float(run, "y_min")
    y_max = _run_float(run, "y_max")
    ny = _run_int(run, "ny")
    gap = _run_length(run, "gap")
    _no_leftovers(run, "grid")
    if args.out is None:
        raise ConfigError("grid requires --out")

    template = Scene(cfg.slab_a, cfg.slab_b, gap)
    try:
        grid = grid_scan(template, x_param, y_param, (x_min, x_max),
                         (y_min, y_max), nx, ny, cfg.quad, jobs=args.jobs)
    except ValueError as err:
        raise ConfigError(str(err)) from None

    record = _record(
        "grid", cfg,
        {"x_param": x_param, "x_min": x_min, "x_max": x_max, "nx": nx,
         "y_param": y_param, "y_min": y_min, "y_max": y_max, "ny": ny,
         "gap": gap},
        {
            "x_points": list(grid.x_axis.points),
            "y_points": list(grid.y_axis.points),
            "F_r": [list(row) for row in grid.values],
            "converged": [[bool(v) for v in row] for row in grid.converged],
        })

    if args.format == "json":
        _write_json(args.out, record)
    else:
        rows = []
        for i, x in enumerate(grid.x_axis.points):
            for j, y in enumerate(grid.y_axis.points):
                rows.append([_fmt(x), _fmt(y), _fmt(grid.values[i, j]),
                             int(grid.converged[i, j])])
        _write_csv(args.out, ["x", "y", "F_r", "converged"], rows)
        _write_json(Path(str(args.out) + ".run.json"), record)

    bad = int((~grid.converged).sum())
    if bad:
        print(f"warning: {bad} of {nx * ny} grid cells did not converge",
              file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_dispersion(cfg: RunConfig, args) -> int:
    run = dict(cfg.run)
    which = _run_choice(run, "slab", ("a", "b"))
    omega_min = _run_float(run, "omega_min", default=0.01)
    omega_max = _run_float(run, "omega_max", default=3.0)
    omega_points = _run_int(run, "omega_points", default=400)
    xi_min = _run_float(run, "xi_min", default=0.01)
    xi_max = _run_float(run, "xi_max", default=3.0)
    xi_points = _run_int(run, "xi_points", default=400)
    _no_leftovers(run, "dispersion")
    if args.out is None:
        raise ConfigError("dispersion requires --out")
    for name, n in (("omega_points", omega_points), ("xi_points", xi_points)):
        if n < 2:
            raise ConfigError(f"run.{name}: need at least 2 points, got {n}")

    material = (cfg.slab_a if which == "a" else cfg.slab_b).material
    try:
        eval_imaginary_axis(material, 1.0)
    except IdealMaterialError as err:
        raise ConfigError(f"run.slab: {err}") from None

    def _grid(lo, hi, n):
        return [lo + (hi - lo) * k / (n - 1) for k in range(n)]

    real_rows = []
    for omega in _grid(omega_min, omega_max, omega_points):
        eps, mu = eval_real_frequency(material, omega)
        real_rows.append([omega, eps.real, eps.imag, mu.real, mu.imag])
    imag_rows = []
    for xi in _grid(xi_min, xi_max, xi_points):
        eps, mu = eval_imaginary_axis(material, xi)
        imag_rows.append([xi, eps, mu, impedance(material, xi)])

    record = _record(
        "dispersion", cfg,
        {"slab": which, "omega_min": omega_min, "omega_max": omega_max,
         "omega_points": omega_points, "xi_min": xi_min, "xi_max": xi_max,
         "xi_points": xi_points},
        {
            "real_frequency": {
                "columns": ["omega", "eps_re", "eps_im", "mu_re", "mu_im"],
                "rows": real_rows,
            },
            "imaginary_axis": {
                "columns": ["xi", "eps", "mu", "Z"],
                "rows": imag_rows,
            },
        })

    if args.format == "json":
        _write_json(args.out, record)
    else:
        out = Path(args.out)
        real_path = out.with_name(out.stem + "_real" + (out.suffix or ".csv"))
        imag_path = out.with_name(out.stem + "_imag" + (out.suffix or ".csv"))
        _write_csv(real_path, ["omega", "eps_re", "eps_im", "mu_re", "mu_im"],
                   [[_fmt(v) for v in row] for row in real_rows])
        _write_csv(imag_path, ["xi", "eps", "mu", "Z"],
                   [[_fmt(v) for v in row] for row in imag_rows])
        _write_json(Path(str(args.out) + ".run.json"), record)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-slabs",
        description="Casimir force between parallel material slabs "
                    "(imaginary-frequency Lifshitz theory)")
    parser.add_argument("--version", action="version",
                        version=f"casimir-slabs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "force": (cmd_force, "force at a single gap"),
        "sweep": (cmd_sweep, "force along a ladder of gaps, with equilibria"),
        "grid": (cmd_grid, "relative force over two scanned parameters"),
        "dispersion": (cmd_dispersion,
                       "material response on the real and imaginary axes"),
    }
    for name, (handler, help_text) in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, type=Path,
                       help="INI run file")
        p.add_argument("--out", type=Path, default=None,
                       help="output file (required for sweep/grid/dispersion)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--rel-tol", type=float, default=None,
                       help="override the run file's relative tolerance")
        p.add_argument("--jobs", type=int, default=None,
                       help="parallel worker processes for sweep/grid")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            text = args.config.read_text()
        except OSError as err:
            raise ConfigError(f"cannot read {args.config}: {err}") from None
        cfg = parse_config(text)
        if args.rel_tol is not None:
            if not (args.rel_tol > 0.0):
                raise ConfigError(f"--rel-tol must be > 0, got {args.rel_tol}")
            cfg = dataclasses.replace(
                cfg, quad=dataclasses.replace(cfg.quad, rel_tol=args.rel_tol))
        return args.handler(cfg, args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as err:  # noqa: BLE001  anything else is a tool bug
        print(f"internal error: {err!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
