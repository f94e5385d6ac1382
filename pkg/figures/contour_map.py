#!/usr/bin/env python3
"""Filled contour map of F_r over two scanned parameters from a grid CSV.

The F_r = 0 level is drawn explicitly (black line, SVG group id
"fr-zero-level") to delineate the repulsion region whenever both signs are
present. Cells that failed to converge are left blank.
"""

import sys

import matplotlib.pyplot as plt
import numpy as np

from _common import GRID_COLUMNS, fail, parse_recipe, read_table, save_vector


def main(argv=None) -> int:
    recipe = parse_recipe(argv, __doc__, n_csv=1)
    rows = read_table(recipe.csv_paths[0], GRID_COLUMNS)

    xs = sorted({r[0] for r in rows})
    ys = sorted({r[1] for r in rows})
    if len(rows) != len(xs) * len(ys):
        fail(f"{recipe.csv_paths[0]}: {len(rows)} rows do not fill the "
             f"{len(xs)} x {len(ys)} tensor grid")
    x_index = {v: i for i, v in enumerate(xs)}
    y_index = {v: j for j, v in enumerate(ys)}
    values = np.full((len(xs), len(ys)), np.nan)
    for x, y, f_r, converged in rows:
        if converged:
            values[x_index[x], y_index[y]] = f_r
    if not np.isfinite(values).any():
        fail(f"{recipe.csv_paths[0]}: every cell is non-convergent")

    z = np.ma.masked_invalid(values.T)  # contour wants (ny, nx)
    scale = float(np.nanmax(np.abs(values)))
    if scale == 0.0:
        scale = 1.0

    fig, ax = plt.subplots()
    ax.grid(False)
    # symmetric range pins white at F_r = 0 on the diverging map
    filled = ax.contourf(xs, ys, z, levels=24, cmap="RdBu_r",
                         vmin=-scale, vmax=scale)
    fig.colorbar(filled, ax=ax, label="F_r")
    if z.min() < 0.0 < z.max():
        zero = ax.contour(xs, ys, z, levels=[0.0], colors="k", linewidths=1.4)
        zero.set_gid("fr-zero-level")
    ax.set_xlabel(recipe.xlabel or "x")
    ax.set_ylabel(recipe.ylabel or "y")
    if recipe.title:
        ax.set_title(recipe.title)
    save_vector(fig, recipe.out)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
