"""Uniform-grid sweep for (12, 6) with the published constant and with the literal formula.

Usage: python3 scripts/paper_mode_12_6.py [--workers N]
"""
import argparse
import math

from ljcert.certify import build_grid, paper_lipschitz, sweep_paper_mode, threshold_y
from ljcert.energy import ExponentPair
from ljcert.zeta import TruncationSpec


def main(workers):
    e = ExponentPair(12, 6)
    th = threshold_y(e)
    grid = build_grid(th, 0.01)
    t = TruncationSpec(40)
    literal = paper_lipschitz(e, th.y_bar, t)
    for label, M in (("published M=181", 181.0), (f"literal M={literal:.4g}", literal)):
        rep = sweep_paper_mode(e, grid, M, t, threshold=th, workers=workers)
        margin = M * grid.delta * math.sqrt(2) / 2
        print(f"{label}: min Q={rep.min_Q.lo:.6f} at {rep.argmin}, margin={margin:.4g}, "
              f"slack={rep.details['slack']:.4g}, verdict={rep.verdict}, {rep.timing['seconds']:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=None)
    main(ap.parse_args().workers)
