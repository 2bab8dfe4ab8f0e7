"""Grid scan of the log-weighted sum F_s, printing the minimizing grid point.

Usage: python3 scripts/scan_conjecture.py [--s 4 8 12] [--delta 0.01] [--y-max 3] [--csv PREFIX]
"""
import argparse

from ljcert.certify import build_grid
from ljcert.energy import conjecture_scan
from ljcert.report import csv_text


def main(ss, delta, y_max, prefix):
    grid = build_grid(y_max, delta)
    for s in ss:
        rows, arg = conjecture_scan(s, grid)
        print(f"s={s:g}: argmin {arg}, min F_s={rows[:, 2].min():.10f}")
        if prefix:
            with open(f"{prefix}_s{s:g}.csv", "w", encoding="utf-8", newline="\n") as fh:
                fh.write(csv_text(rows))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=float, nargs="+", default=[4.0, 8.0, 12.0])
    ap.add_argument("--delta", type=float, default=0.01)
    ap.add_argument("--y-max", type=float, default=3.0)
    ap.add_argument("--csv", default=None)
    a = ap.parse_args()
    main(a.s, a.delta, a.y_max, a.csv)
