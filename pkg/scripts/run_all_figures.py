#!/usr/bin/env python3
"""Regenerate every shipped figure: run the solver CLI on each per-figure
config, collect the CSVs under <out-dir>/data, and render SVGs under
<out-dir>/figs.

Grid scans pass --rel-tol 1e-3: contour cells need three significant
figures, not the library default 1e-6, and the five grids total ~5400 force
evaluations. Sweeps and dispersions run at their config defaults. A sweep
that exits 3 (convergence warnings, results flagged per point) still
renders; any other nonzero exit aborts.
"""

import argparse
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
CONFIGS = REPO / "configs"
FIGURES = REPO / "figures"

# config stem, CLI command, figure script, extra CLI args, figure labels
PIPELINE = [
    ("constant_eps_grid", "grid", "contour_map.py", ["--rel-tol", "1e-3"],
     {"xlabel": "eps_a", "ylabel": "eps_b",
      "title": "Relative force, constant media, gap lambda0/4"}),
    ("metamaterial_plasma_grid", "grid", "contour_map.py",
     ["--rel-tol", "1e-3"],
     {"xlabel": "omega_pe(B) / w0", "ylabel": "omega_pm(B) / w0",
      "title": "Plasma mirror vs metamaterial, plasma-frequency scan"}),
    ("metamaterial_resonance_grid", "grid", "contour_map.py",
     ["--rel-tol", "1e-3"],
     {"xlabel": "omega_te(B) / w0", "ylabel": "omega_tm(B) / w0",
      "title": "Plasma mirror vs metamaterial, resonance scan"}),
    ("twin_metamaterial_plasma_grid", "grid", "contour_map.py",
     ["--rel-tol", "1e-3"],
     {"xlabel": "omega_pe(A) / w0", "ylabel": "omega_pm(A) / w0",
      "title": "Metamaterial pair, plasma-frequency scan"}),
    ("twin_metamaterial_resonance_grid", "grid", "contour_map.py",
     ["--rel-tol", "1e-3"],
     {"xlabel": "omega_te(A) / w0", "ylabel": "omega_tm(A) / w0",
      "title": "Metamaterial pair, resonance scan"}),
    ("metamaterial_pair_sweep", "sweep", "force_curve.py", [],
     {"title": "Metamaterial pair: force vs separation"}),
    ("conductor_metamaterial_sweep", "sweep", "force_curve.py", [],
     {"title": "Conductor vs magnetic metamaterial: force vs separation"}),
    ("metamaterial_a_dispersion", "dispersion", "dispersion_curves.py", [],
     {"title": "Sign-flipping pair, slab A response"}),
    ("metamaterial_b_dispersion", "dispersion", "dispersion_curves.py", [],
     {"title": "Sign-flipping pair, slab B response"}),
    ("conductor_partner_dispersion", "dispersion", "dispersion_curves.py", [],
     {"title": "Magnetic metamaterial (conductor scene) response"}),
]


def solve_args(stem: str, command: str, extra: list, data_dir: Path) -> list:
    return [sys.executable, "-m", "casimir_slabs", command,
            "--config", str(CONFIGS / f"{stem}.ini"),
            "--out", str(data_dir / f"{stem}.csv"), *extra]


def render_args(stem: str, script: str, labels: dict, data_dir: Path,
                figs_dir: Path) -> list:
    if script == "dispersion_curves.py":
        csv_flags = ["--csv", str(data_dir / f"{stem}_real.csv"),
                     "--csv", str(data_dir / f"{stem}_imag.csv")]
    else:
        csv_flags = ["--csv", str(data_dir / f"{stem}.csv")]
    label_flags = []
    for key, value in labels.items():
        label_flags += [f"--{key}", value]
    return [sys.executable, str(FIGURES / script), *csv_flags,
            "--out", str(figs_dir / f"{stem}.svg"), *label_flags]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=REPO / "figures" / "out")
    args = parser.parse_args(argv)
    data_dir = args.out_dir / "data"
    figs_dir = args.out_dir / "figs"
    data_dir.mkdir(parents=True, exist_ok=True)
    figs_dir.mkdir(parents=True, exist_ok=True)

    for stem, command, script, extra, labels in PIPELINE:
        print(f"solving {stem} ({command})", flush=True)
        solve = subprocess.run(solve_args(stem, command, extra, data_dir))
        if solve.returncode == 3:
            print(f"  note: {stem} finished with convergence warnings")
        elif solve.returncode != 0:
            print(f"error: solver failed on {stem} "
                  f"(exit {solve.returncode})", file=sys.stderr)
            return 1
        render = subprocess.run(
            render_args(stem, script, labels, data_dir, figs_dir))
        if render.returncode != 0:
            print(f"error: render failed on {stem} "
                  f"(exit {render.returncode})", file=sys.stderr)
            return 1
    print(f"done: {len(PIPELINE)} figures under {figs_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
