"""Shared plumbing for the figure scripts: deterministic matplotlib setup,
CSV schema checking, and the argument parser they all share.

Determinism contract: identical CSV bytes and arguments produce identical
SVG bytes. The backend is pinned to Agg, element ids are salted with a fixed
string, and no date metadata is written. Every input check runs before any
drawing, so a rejected input never leaves an image behind.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams.update({
    "svg.hashsalt": "casimir-slabs-figures",
    "svg.fonttype": "none",  # keep labels as text: smaller, greppable diffs
    "figure.figsize": (7.0, 5.0),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 11,
})

# the CSV contracts published by the solver CLI, matched verbatim
SWEEP_COLUMNS = ("gap_c_over_w0", "gap_lambda0", "F", "F_TE", "F_TM", "F_r",
                 "err", "converged")
GRID_COLUMNS = ("x", "y", "F_r", "converged")
REAL_AXIS_COLUMNS = ("omega", "eps_re", "eps_im", "mu_re", "mu_im")
IMAG_AXIS_COLUMNS = ("xi", "eps", "mu", "Z")


def fail(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


def peek_header(path: Path) -> list:
    if not path.exists():
        fail(f"{path}: no such file")
    with open(path, newline="") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        fail(f"{path}: empty file")
    return header


def read_table(path: Path, columns) -> list:
    """Rows of floats from a CSV whose header must match `columns` exactly."""
    header = peek_header(path)
    if header != list(columns):
        fail(f"{path}: schema mismatch: expected columns "
             f"{','.join(columns)}, found {','.join(header)}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                fail(f"{path}: line {lineno}: not numeric: {row!r}")
    if not rows:
        fail(f"{path}: no data rows, nothing to draw")
    return rows


@dataclass(frozen=True)
class Recipe:
    csv_paths: tuple
    out: Path
    title: str
    xlabel: str
    ylabel: str


def parse_recipe(argv, description: str, n_csv: int = 1) -> Recipe:
    parser = argparse.ArgumentParser(
        description=description.splitlines()[0] if description else None)
    parser.add_argument("--csv", action="append", required=True, type=Path,
                        help="input CSV (repeat the flag for multi-input figures)")
    parser.add_argument("--out", required=True, type=Path, help="output SVG")
    parser.add_argument("--title", default=None)
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    args = parser.parse_args(argv)
    if len(args.csv) != n_csv:
        fail(f"expected {n_csv} --csv argument(s), got {len(args.csv)}")
    return Recipe(tuple(args.csv), args.out, args.title, args.xlabel,
                  args.ylabel)


def save_vector(fig, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="svg", metadata={"Date": None},
                bbox_inches="tight")
