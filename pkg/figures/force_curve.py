#!/usr/bin/env python3
"""Relative force versus separation from a sweep CSV.

F_r is drawn against the gap in reference wavelengths with an explicit
horizontal zero line, on a symmetric-log force axis so a weak repulsive
branch stays visible next to the short-range attractive divergence.
Non-convergent points, if any, are overdrawn with crosses.
"""

import sys

import matplotlib.pyplot as plt

from _common import SWEEP_COLUMNS, parse_recipe, read_table, save_vector


def main(argv=None) -> int:
    recipe = parse_recipe(argv, __doc__, n_csv=1)
    rows = read_table(recipe.csv_paths[0], SWEEP_COLUMNS)
    gaps = [r[1] for r in rows]  # lambda0 units
    f_r = [r[5] for r in rows]
    converged = [bool(r[7]) for r in rows]

    fig, ax = plt.subplots()
    ax.axhline(0.0, color="0.3", linewidth=0.8, gid="zero-line")
    ax.plot(gaps, f_r, "-o", markersize=3, color="tab:blue")
    flagged = [(g, v) for g, v, ok in zip(gaps, f_r, converged) if not ok]
    if flagged:
        ax.plot([g for g, _ in flagged], [v for _, v in flagged], "x",
                color="tab:red", markersize=8,
                label=f"{len(flagged)} not converged")
        ax.legend()
    ax.set_xscale("log")
    smallest = min((abs(v) for v in f_r if v != 0.0), default=1.0)
    ax.set_yscale("symlog", linthresh=max(smallest, 1e-12))
    ax.set_xlabel(recipe.xlabel or "separation  a / lambda0")
    ax.set_ylabel(recipe.ylabel or "relative force  F_r")
    if recipe.title:
        ax.set_title(recipe.title)
    save_vector(fig, recipe.out)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
