"""Threshold heights for the (alpha, 6) pairs, both branches, with digits to spare.

Usage: python3 scripts/threshold_table.py
"""
from ljcert.certify import threshold_y
from ljcert.constants import PUBLISHED
from ljcert.energy import ExponentPair


def main():
    print(f"{'pair':>8} {'y (upper encl.)':>18} {'general':>12} {'k=2':>6} {'published':>9}")
    for (a, b), (y_pub, _) in sorted(PUBLISHED.items()):
        th = threshold_y(ExponentPair(a, b))
        print(f"{str((a, b)):>8} {th.y_exact:18.12f} {th.y_general:12.6f} {th.y_bar_str:>6} {y_pub:>9}")


if __name__ == "__main__":
    main()
