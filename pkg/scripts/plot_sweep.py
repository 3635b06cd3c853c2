"""Plot one result column of a sweep CSV against its first axis.

Usage: python3 scripts/plot_sweep.py sweep.csv [--column phi_vac_total] [--out plot.png]
Needs the ``plot`` extra (matplotlib).
"""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from vacphase.cli import RESULT_COLUMNS  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("--column", default="phi_vac_total", choices=RESULT_COLUMNS)
    parser.add_argument("--out", default="sweep.png")
    args = parser.parse_args()

    with open(args.csv, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise SystemExit("empty sweep")
    axes = [k for k in rows[0] if k not in RESULT_COLUMNS and k != "error"]

    # one curve per value of the second axis, if there is one
    curves = defaultdict(list)
    for row in rows:
        if row["error"]:
            continue
        label = f"{axes[1]} = {row[axes[1]]}" if len(axes) > 1 else None
        curves[label].append((float(row[axes[0]]), float(row[args.column])))

    fig, ax = plt.subplots()
    for label, pts in curves.items():
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xlabel(axes[0])
    ax.set_ylabel(f"{args.column} (rad)")
    if len(axes) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
