#!/usr/bin/env python3
"""Render figures from the sweep CSV files emitted by the entswap CLI.

Pure view over the CSV: no probability is recomputed here, the script
only reads columns, pivots, and draws. Two kinds:

  lines    input from the two-strategy sweep (c_ac1, c_bc2, p_s1, p_s2);
           one solid/dashed line pair per c_ac1 value
  surface  input from the tunable-basis sweep (c_bc2, c_c1c2, p_s4);
           3d surface with the flat plateau past the matching front

Nothing is written on error: the output file appears only after the
figure rendered successfully.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

LINES_COLUMNS = ("c_ac1", "c_bc2", "p_s1", "p_s2")
SURFACE_COLUMNS = ("c_bc2", "c_c1c2", "p_s4")


class FigureDataError(Exception):
    """CSV does not match the expected schema or has no usable data."""


def read_columns(path, required):
    """Read the required columns as floats, one dict per row."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise FigureDataError(f"cannot read {path}: {exc}")
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise FigureDataError(
                f"{path}: missing columns {', '.join(missing)} "
                f"(found: {', '.join(header) or 'nothing'})"
            )
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append({c: float(raw[c]) for c in required})
            except (TypeError, ValueError):
                raise FigureDataError(f"{path}: bad value on line {lineno}")
    if not rows:
        raise FigureDataError(f"{path}: no data rows")
    return rows


def render_lines(rows, out):
    """One line pair per c_ac1 block: p_s1 solid, p_s2 dashed."""
    groups = {}
    for r in rows:
        groups.setdefault(r["c_ac1"], []).append(r)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for c1, block in groups.items():
        c2 = [r["c_bc2"] for r in block]
        (line,) = ax.plot(c2, [r["p_s1"] for r in block], "-",
                          label=f"p_s1, c_ac1 = {c1:g}")
        ax.plot(c2, [r["p_s2"] for r in block], "--",
                color=line.get_color(), label=f"p_s2, c_ac1 = {c1:g}")
    ax.set_xlabel("C_BC2")
    ax.set_ylabel("success probability")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def render_surface(rows, out):
    """Surface of p_s4 over the (c_bc2, c_c1c2) grid."""
    c2_vals = sorted({r["c_bc2"] for r in rows})
    cc_vals = sorted({r["c_c1c2"] for r in rows})
    lookup = {(r["c_bc2"], r["c_c1c2"]): r["p_s4"] for r in rows}
    z = np.empty((len(cc_vals), len(c2_vals)))
    for i, cc in enumerate(cc_vals):
        for j, c2 in enumerate(c2_vals):
            try:
                z[i, j] = lookup[(c2, cc)]
            except KeyError:
                raise FigureDataError(
                    f"grid incomplete: no row for c_bc2={c2:g}, c_c1c2={cc:g}"
                )
    xs, ys = np.meshgrid(c2_vals, cc_vals)
    fig = plt.figure(figsize=(7.2, 5.4))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(xs, ys, z, cmap="viridis", linewidth=0, antialiased=True)
    ax.set_xlabel("C_BC2")
    ax.set_ylabel("C_C1C2")
    ax.set_zlabel("p_s4")
    fig.savefig(out, dpi=150)
    plt.close(fig)


def build_parser():
    parser = argparse.ArgumentParser(
        description="Render a line or surface figure from a sweep CSV."
    )
    parser.add_argument("--in", dest="csv_in", required=True,
                        help="input CSV path")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--kind", required=True, choices=("lines", "surface"),
                        help="figure kind")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "lines":
            render_lines(read_columns(args.csv_in, LINES_COLUMNS), args.out)
        else:
            render_surface(read_columns(args.csv_in, SURFACE_COLUMNS), args.out)
    except (FigureDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
