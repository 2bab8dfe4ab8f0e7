"""Command-line front end: ``ljcert <command> [options]``.

Exit codes: 0 success / certified, 1 verdict false, 2 invalid configuration,
3 computation error.
"""
from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import certify as C
from . import constants
from .energy import ExponentPair, LJParams, lj_energy, min_dilated_energy, optimal_volume, conjecture_scan
from .lattice import DomainPoint
from .report import csv_text, dumps, envelope, summary
from .zeta import TruncationSpec, epstein_certified

EXIT_OK, EXIT_FALSE, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ljcert", description="Certified lattice-energy computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def io_opts(sp, default_format="json"):
        sp.add_argument("--output", "-o", help="write here instead of stdout")
        sp.add_argument("--format", choices=["json", "csv"], default=default_format)

    def pair_opts(sp):
        sp.add_argument("--alpha", type=float, required=True)
        sp.add_argument("--beta", type=float, required=True)

    c = sub.add_parser("certify", help="certify Q > alpha/beta off the triangular lattice")
    pair_opts(c)
    c.add_argument("--mode", choices=["adaptive", "paper"], default="adaptive")
    c.add_argument("--delta", type=_positive_float, default=0.01)
    c.add_argument("--n", type=_positive_int, default=40, help="box truncation (paper mode)")
    c.add_argument("--m", type=float, default=None, help="global Lipschitz constant (paper mode)")
    c.add_argument("--k", type=_positive_int, default=2)
    c.add_argument("--epsilon", type=_positive_float, default=0.01)
    c.add_argument("--tol", type=_positive_float, default=1e-8)
    c.add_argument("--max-depth", type=int, default=8)
    c.add_argument("--margin", type=float, default=None, help="override alpha/beta")
    c.add_argument("--ball-samples", type=_positive_int, default=10_000)
    c.add_argument("--workers", type=_positive_int, default=None)
    io_opts(c)

    t = sub.add_parser("table1", help="thresholds and Lipschitz constants for (alpha, 6)")
    t.add_argument("--no-adaptive", action="store_true", help="skip adaptive runs")
    t.add_argument("--n", type=_positive_int, default=40)
    t.add_argument("--workers", type=_positive_int, default=None)
    io_opts(t)

    z = sub.add_parser("zeta", help="certified Epstein zeta value")
    z.add_argument("--x", type=float, required=True)
    z.add_argument("--y", type=float, required=True)
    z.add_argument("--s", type=float, required=True)
    z.add_argument("--tol", type=_positive_float, default=1e-8)
    io_opts(z)

    for name in ("energy", "optimal-volume"):
        e = sub.add_parser(name)
        pair_opts(e)
        e.add_argument("--a", type=float, default=1.0)
        e.add_argument("--b", type=float, default=1.0)
        e.add_argument("--x", type=float, required=True)
        e.add_argument("--y", type=float, required=True)
        if name == "energy":
            e.add_argument("--V", type=float, default=None, help="covolume (default: optimal)")
        e.add_argument("--tol", type=_positive_float, default=1e-10)
        io_opts(e)

    s = sub.add_parser("scan", help="grid values of Q or the log-weighted sum F_s")
    s.add_argument("--functional", choices=["Q", "F"], default="Q")
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--beta", type=float, default=None)
    s.add_argument("--s", type=float, default=None)
    s.add_argument("--delta", type=_positive_float, default=0.01)
    s.add_argument("--y-max", type=float, default=None)
    s.add_argument("--tol", type=_positive_float, default=1e-8)
    io_opts(s, default_format="csv")
    return p


def _pair(args) -> ExponentPair:
    try:
        return ExponentPair(args.alpha, args.beta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _point(args) -> DomainPoint:
    try:
        return DomainPoint(args.x, args.y)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _pair_key(e: ExponentPair):
    return (e.alpha, e.beta)


def _published_comparison(e: ExponentPair, threshold, M_literal=None, M_used=None, delta=None):
    pub = constants.published(e.alpha, e.beta)
    if pub is None:
        return None
    y_pub, M_pub = pub
    out = {
        "constants_version": constants.CONSTANTS_VERSION,
        "y_bar_published": y_pub,
        "y_bar_computed": threshold.y_bar_str,
        "y_bar_match": y_pub == threshold.y_bar_str,
        "M_published": M_pub,
    }
    if M_literal is not None:
        out["M_literal"] = M_literal
        out["M_flag"] = "matching" if round(M_literal) == M_pub else "nonmatching-as-printed"
    if M_used is not None and delta is not None:
        out["lipschitz_margin_used"] = M_used * delta * math.sqrt(2) / 2
        if _pair_key(e) == constants.EXTRA_PAIR:
            out["lipschitz_margin_published"] = constants.PUBLISHED_MARGIN_12_6
    return out


def cmd_certify(args):
    e = _pair(args)
    if args.max_depth < 0:
        raise ConfigError("--max-depth must be >= 0")
    if args.m is not None and not args.m >= 0:
        raise ConfigError("--m must be non-negative")
    if args.format != "json":
        raise ConfigError("certify writes JSON reports only")
    try:
        C.build_grid(1.0, args.delta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    workers = C.resolve_workers(args.workers)
    config = {
        "alpha": e.alpha, "beta": e.beta, "mode": args.mode, "delta": args.delta, "k": args.k,
        "margin": args.margin,
    }
    threshold = C.threshold_y(e, k=args.k)
    if args.mode == "paper":
        config.update({"N": args.n, "M": args.m})
        grid = C.build_grid(threshold, args.delta)
        t = TruncationSpec(args.n)
        M_literal = C.paper_lipschitz(e, threshold.y_bar, t)
        M = M_literal if args.m is None else args.m
        rep = C.sweep_paper_mode(e, grid, M, t, threshold=threshold, workers=workers,
                                 margin_required=args.margin)
        rep.details["M_literal"] = M_literal
        comparison = _published_comparison(e, threshold, M_literal, M, args.delta)
    else:
        config.update({"epsilon": args.epsilon, "tol": args.tol, "max_depth": args.max_depth,
                       "ball_samples": args.ball_samples})
        cfg = C.AdaptiveConfig(
            delta=args.delta, max_depth=args.max_depth, epsilon=args.epsilon, zeta_tol=args.tol,
            k=args.k, margin_required=args.margin, ball_samples=args.ball_samples, workers=workers,
        )
        rep = C.certify_adaptive(e, cfg)
        comparison = _published_comparison(e, threshold)
    result = rep.to_dict()
    result["summary"] = {
        "min_Q": summary(rep.min_Q.lo if rep.min_Q else None),
        "y_bar": rep.threshold.y_bar_str,
        "verdict": "certified" if rep.verdict else "not certified",
    }
    env = envelope("certify", config, result, comparison, rep.timing)
    return env, (EXIT_OK if rep.verdict else EXIT_FALSE)


def cmd_table1(args):
    if args.format != "json":
        raise ConfigError("table1 writes JSON only")
    workers = C.resolve_workers(args.workers)
    t0 = time.perf_counter()
    rows, comparison = [], []
    all_ok = True
    for alpha, beta in constants.TABLE_PAIRS + [constants.EXTRA_PAIR]:
        e = ExponentPair(alpha, beta)
        th = C.threshold_y(e)
        M_lit = C.paper_lipschitz(e, th.y_bar, TruncationSpec(args.n))
        row = {
            "alpha": alpha, "beta": beta, "y_bar": th.y_bar_str, "y_exact": th.y_exact,
            "branch": th.branch, "M_literal": M_lit,
        }
        if not args.no_adaptive:
            rep = C.certify_adaptive(e, C.AdaptiveConfig(workers=workers))
            row["adaptive"] = {
                "verdict": rep.verdict,
                "max_local_lipschitz": rep.stats["max_local_lipschitz"],
                "min_Q": rep.min_Q.lo if rep.min_Q else None,
                "cells": rep.stats["cells"],
            }
            all_ok &= rep.verdict
        rows.append(row)
        comparison.append({"alpha": alpha, "beta": beta, **_published_comparison(e, th, M_lit)})
    env = envelope(
        "table1", {"N": args.n, "adaptive": not args.no_adaptive}, {"rows": rows}, comparison,
        {"seconds": time.perf_counter() - t0, "workers": workers},
    )
    return env, (EXIT_OK if all_ok else EXIT_FALSE)


def cmd_zeta(args):
    if args.format != "json":
        raise ConfigError("zeta writes JSON only")
    p = _point(args)
    if not args.s > 2:
        raise ConfigError("s must exceed 2")
    v = epstein_certified(p, args.s, args.tol)
    cfg = {"x": args.x, "y": args.y, "s": args.s, "tol": args.tol}
    return envelope("zeta", cfg, {"mid": v.mid, "rad": v.rad, "summary": summary(v.mid)}), EXIT_OK


def _params(args) -> LJParams:
    try:
        return LJParams(_pair(args), args.a, args.b)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_energy(args):
    if args.format != "json":
        raise ConfigError("energy writes JSON only")
    params, p = _params(args), _point(args)
    V = optimal_volume(p, params, args.tol) if args.V is None else args.V
    if not V > 0:
        raise ConfigError("--V must be positive")
    ev = lj_energy(p, V, params, args.tol)
    cfg = {"alpha": args.alpha, "beta": args.beta, "a": args.a, "b": args.b, "x": args.x, "y": args.y,
           "V": args.V, "tol": args.tol}
    res = {"V": V, "energy": ev.value, "repulsive": ev.repulsive, "attractive": ev.attractive,
           "summary": summary(ev.value)}
    return envelope("energy", cfg, res), EXIT_OK


def cmd_optimal_volume(args):
    if args.format != "json":
        raise ConfigError("optimal-volume writes JSON only")
    params, p = _params(args), _point(args)
    V = optimal_volume(p, params, args.tol)
    cfg = {"alpha": args.alpha, "beta": args.beta, "a": args.a, "b": args.b, "x": args.x, "y": args.y,
           "tol": args.tol}
    res = {"V": V, "min_energy": min_dilated_energy(p, params, args.tol), "summary": summary(V)}
    return envelope("optimal-volume", cfg, res), EXIT_OK


def scan_rows(args) -> np.ndarray:
    """``(n, 3)`` rows ``(x, y, value)`` in y-major order."""
    try:
        if args.functional == "Q":
            e = _pair(args)
            top = args.y_max if args.y_max is not None else C.threshold_y(e)
            grid = C.build_grid(top, args.delta)
        else:
            if args.s is None or not args.s > 2:
                raise ConfigError("scan --functional F needs --s > 2")
            grid = C.build_grid(args.y_max if args.y_max is not None else 3.0, args.delta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.functional == "F":
        rows, _ = conjecture_scan(args.s, grid)
        return rows
    X, Y = np.meshgrid(np.asarray(grid.xs), np.asarray(grid.ys))
    X, Y = X.ravel(), Y.ravel()
    out = np.empty_like(X)
    for y in grid.ys:  # one row plan per grid row
        sel = Y == y
        _, mid, _ = C.quotient_at_points(X[sel], Y[sel], e, args.tol)
        out[sel] = mid
    return np.column_stack([X, Y, out])


def cmd_scan(args):
    rows = scan_rows(args)
    if args.format == "csv":
        return csv_text(rows), EXIT_OK
    i = int(np.nanargmin(rows[:, 2]))
    cfg = {"functional": args.functional, "alpha": args.alpha, "beta": args.beta, "s": args.s,
           "delta": args.delta, "y_max": args.y_max, "tol": args.tol}
    res = {"rows": rows.tolist(), "argmin": rows[i, :2].tolist(), "min": rows[i, 2]}
    return envelope("scan", cfg, res), EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "table1": cmd_table1,
    "zeta": cmd_zeta,
    "energy": cmd_energy,
    "optimal-volume": cmd_optimal_volume,
    "scan": cmd_scan,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        out, code = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"ljcert: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, RuntimeError, OSError, MemoryError) as exc:
        print(f"ljcert: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    text = out if isinstance(out, str) else dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
