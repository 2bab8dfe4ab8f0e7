"""Adaptive certification for (12, 6) and the (alpha, 6) table pairs.

Usage: python3 scripts/certify_all.py [--workers N] [--out DIR]
Writes one JSON report per pair and prints a summary line each.
"""
import argparse
import pathlib

from ljcert.cli import main

PAIRS = [(12, 6), (14, 6), (16, 6), (18, 6), (20, 6), (22, 6), (24, 6)]


def run(workers, out_dir):
    out_dir.mkdir(parents=True, exist_ok=True)
    for a, b in PAIRS:
        path = out_dir / f"certify_{a}_{b}.json"
        argv = ["certify", "--alpha", str(a), "--beta", str(b), "--output", str(path)]
        if workers:
            argv += ["--workers", str(workers)]
        code = main(argv)
        print(f"({a},{b}) exit={code} report={path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()
    run(args.workers, args.out)
