#!/usr/bin/env python3
"""Material response curves from the two CSVs the dispersion command writes.

Left panel: complex eps and mu on the real frequency axis (symmetric-log,
resonances run far off scale). Right panel: the real eps, mu and impedance Z
on the imaginary axis, where everything is smooth and monotone. The two
--csv inputs are identified by their headers, so order does not matter.
"""

import sys

import matplotlib.pyplot as plt

from _common import (
    IMAG_AXIS_COLUMNS,
    REAL_AXIS_COLUMNS,
    fail,
    parse_recipe,
    peek_header,
    read_table,
    save_vector,
)


def main(argv=None) -> int:
    recipe = parse_recipe(argv, __doc__, n_csv=2)
    tables = {}
    for path in recipe.csv_paths:
        header = peek_header(path)
        if header == list(REAL_AXIS_COLUMNS):
            kind = "real"
        elif header == list(IMAG_AXIS_COLUMNS):
            kind = "imag"
        else:
            fail(f"{path}: schema mismatch: expected columns "
                 f"{','.join(REAL_AXIS_COLUMNS)} or "
                 f"{','.join(IMAG_AXIS_COLUMNS)}, found {','.join(header)}")
        if kind in tables:
            fail(f"{path}: both inputs carry the {kind}-axis schema; need "
                 "one real-axis and one imaginary-axis file")
        tables[kind] = read_table(path, REAL_AXIS_COLUMNS if kind == "real"
                                  else IMAG_AXIS_COLUMNS)

    fig, (ax_re, ax_im) = plt.subplots(1, 2, figsize=(11.0, 4.6))

    rows = tables["real"]
    omega = [r[0] for r in rows]
    ax_re.axhline(0.0, color="0.3", linewidth=0.8)
    ax_re.plot(omega, [r[1] for r in rows], label="Re eps", color="tab:blue")
    ax_re.plot(omega, [r[2] for r in rows], label="Im eps", color="tab:blue",
               linestyle="--")
    ax_re.plot(omega, [r[3] for r in rows], label="Re mu", color="tab:red")
    ax_re.plot(omega, [r[4] for r in rows], label="Im mu", color="tab:red",
               linestyle="--")
    ax_re.set_yscale("symlog", linthresh=1.0)
    ax_re.set_xlabel(recipe.xlabel or "omega / w0")
    ax_re.set_ylabel("response")
    ax_re.set_title("real frequency axis")
    ax_re.legend(fontsize=9)

    rows = tables["imag"]
    xi = [r[0] for r in rows]
    ax_im.axhline(1.0, color="0.3", linewidth=0.8)
    ax_im.plot(xi, [r[1] for r in rows], label="eps", color="tab:blue")
    ax_im.plot(xi, [r[2] for r in rows], label="mu", color="tab:red")
    ax_im.plot(xi, [r[3] for r in rows], label="Z", color="tab:green")
    ax_im.set_yscale("log")
    ax_im.set_xlabel("xi / w0")
    ax_im.set_title("imaginary frequency axis")
    ax_im.legend(fontsize=9)

    if recipe.title:
        fig.suptitle(recipe.title)
    save_vector(fig, recipe.out)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
