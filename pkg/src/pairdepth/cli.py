"""Command-line front end: dataset generation and one command per theorem.

Exit codes: 0 when the checked bound is met (or there is no bound), 1 when a
bound is violated, 2 on usage or I/O errors.  All commands are deterministic
given identical flags including the seed; only the ``timing_ms`` report
field varies between runs.  ``PAIRDEPTH_THREADS`` caps worker threads for
the Monte-Carlo thickness estimator (default: all cores).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import io as pdio
from .depth import colorful_ball_depth
from .geometry import GENERATOR_KINDS, generate_points
from .nets import lens_net, subset_threshold, weak_net
from .selection import (
    box_deep_point,
    box_max_fraction,
    box_split,
    diameter_selection,
    segment_max_depth,
    tshape_deep_point,
)
from .geometry import distance_matrix
from .shapes import estimate_t, parse_shape


def _thread_count() -> int:
    raw = os.environ.get("PAIRDEPTH_THREADS", "").strip()
    if raw:
        value = int(raw)
        if value < 1:
            raise ValueError("PAIRDEPTH_THREADS must be a positive integer")
        return value
    return os.cpu_count() or 1


def _write_output(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _finish(report: dict, out: str) -> int:
    _write_output(pdio.dumps_report(report), out)
    bound = report.get("bound")
    if bound is not None and not bound["met"]:
        return 1
    return 0


def _point_list(p) -> list:
    return [float(v) for v in np.asarray(p).ravel()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairdepth",
        description="Positive-fraction pair-hull depth experiments and weak epsilon-nets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a point-set CSV")
    gen.add_argument("--dist", required=True, choices=GENERATOR_KINDS)
    gen.add_argument("--n", type=int, required=True, help="dimension")
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output CSV path, or - for stdout")

    depth = sub.add_parser("depth", help="deep-point searches and coverage counts")
    depth.add_argument("--shape", required=True, help="ball | lens:<a> | ellipsoid:<a> | box | segment")
    depth.add_argument("--in", dest="infile", help="point-set CSV")
    depth.add_argument("--colorful", nargs=2, metavar=("A", "B"), help="two point-set CSVs (ball only)")
    depth.add_argument("--t", type=float, help="thickness for the t-shape bound")
    depth.add_argument("--samples", type=int, default=2048)
    depth.add_argument("--effort", type=int, default=16)
    depth.add_argument("--seed", type=int, default=0)
    depth.add_argument("--scan", action="store_true", help="box only: scan a fresh uniform instance for the max covered fraction")
    depth.add_argument("--n", type=int, dest="dim", help="dimension for --scan")
    depth.add_argument("--count", type=int, help="instance size for --scan")
    depth.add_argument("--candidates", type=int, default=100_000, help="candidate budget for --scan")
    depth.add_argument("--out", default="-")

    net = sub.add_parser("net", help="greedy weak epsilon-net with certification")
    net.add_argument("--shape", required=True)
    net.add_argument("--epsilon", type=float, required=True)
    net.add_argument("--t", type=float, required=True)
    net.add_argument("--in", dest="infile", required=True)
    net.add_argument("--samples", type=int, default=512)
    net.add_argument("--seed", type=int, default=0)
    net.add_argument("--net-out", help="write the net points as CSV")
    net.add_argument("--out", default="-")

    sel = sub.add_parser("select", help="pair-selection procedures")
    sel.add_argument("mode", choices=("diameter", "boxsplit"))
    sel.add_argument("--in", dest="infile", required=True)
    sel.add_argument("--j", type=int, help="number of split levels (boxsplit)")
    sel.add_argument("--out", default="-")

    est = sub.add_parser("estimate-t", help="Monte-Carlo thickness of a shape family")
    est.add_argument("--shape", required=True)
    est.add_argument("--n", type=int, required=True, help="dimension")
    est.add_argument("--samples", type=int, default=100_000)
    est.add_argument("--radii", type=int, default=32)
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--out", default="-")

    return parser


def _cmd_gen(args) -> int:
    pts = generate_points(args.dist, args.n, args.count, args.seed)
    if args.out == "-":
        pdio.write_point_csv(sys.stdout, pts)
    else:
        pdio.write_point_csv(args.out, pts)
    return 0


def _cmd_depth(args) -> int:
    shape = parse_shape(args.shape)
    started = time.perf_counter()

    if args.scan:
        if shape.kind != "box":
            raise ValueError("--scan applies to --shape box only")
        if args.dim is None or args.count is None:
            raise ValueError("--scan needs --n and --count")
        scan = box_max_fraction(args.dim, args.count, candidates=args.candidates, seed=args.seed)
        elapsed = (time.perf_counter() - started) * 1000.0
        params = {
            "shape": args.shape,
            "n": args.dim,
            "count": args.count,
            "candidates": args.candidates,
            "seed": args.seed,
        }
        result = {
            "max_fraction": scan.max_fraction,
            "witness": _point_list(scan.witness),
            "candidates_evaluated": scan.candidates_evaluated,
            "ceiling": scan.ceiling,
        }
        bound = pdio.bound_block("1/2^n+eps", scan.ceiling + 0.05, scan.max_fraction, scan.max_fraction <= scan.ceiling + 0.05)
        return _finish(pdio.make_report("depth", params, elapsed, result, bound), args.out)

    if args.colorful:
        if shape.kind != "ball":
            raise ValueError("--colorful is the two-set ball experiment; use --shape ball")
        A = pdio.read_point_csv(args.colorful[0])
        B = pdio.read_point_csv(args.colorful[1])
        report = colorful_ball_depth(A, B, effort=args.effort, seed=args.seed)
        elapsed = (time.perf_counter() - started) * 1000.0
        params = {
            "shape": args.shape,
            "colorful": list(args.colorful),
            "effort": args.effort,
            "seed": args.seed,
        }
        cert = report.certificate
        result = {
            "witness": _point_list(report.witness),
            "ordered_pair_count": report.ordered_pair_count,
            "pair_universe": report.pair_universe,
            "fraction": report.fraction,
            "certified": report.certified,
            "certificate": {
                "claimed_depth": cert.claimed_depth,
                "target": cert.target,
                "method": cert.method,
                "directions_checked": cert.directions_checked,
                "certified": cert.certified,
            },
        }
        bound = pdio.bound_block(report.bound_name, report.bound, report.ordered_pair_count, report.bound_met)
        return _finish(pdio.make_report("depth", params, elapsed, result, bound), args.out)

    if not args.infile:
        raise ValueError("--in is required unless --colorful or --scan is used")
    X = pdio.read_point_csv(args.infile)

    if shape.kind == "segment":
        scan = segment_max_depth(X)
        elapsed = (time.perf_counter() - started) * 1000.0
        params = {"shape": args.shape, "in": args.infile}
        result = {
            "max_depth": scan.max_sets,
            "witness": _point_list(scan.witness),
            "crossings_evaluated": scan.crossings_evaluated,
            "chord_count": scan.chord_count,
        }
        return _finish(pdio.make_report("depth", params, elapsed, result), args.out)

    if shape.kind == "box":
        report = box_deep_point(X)
        elapsed = (time.perf_counter() - started) * 1000.0
        params = {"shape": args.shape, "in": args.infile}
        result = {
            "witness": _point_list(report.witness),
            "ordered_pair_count": report.ordered_pair_count,
            "unordered_pair_count": report.unordered_pair_count,
            "pair_universe": report.pair_universe,
            "fraction": report.fraction,
        }
        bound = pdio.bound_block(report.bound_name, report.bound, report.unordered_pair_count, report.bound_met)
        return _finish(pdio.make_report("depth", params, elapsed, result, bound), args.out)

    # Thick shapes need the thickness for their bound.
    if args.t is None:
        raise ValueError(f"--t is required for --shape {shape.kind} (run estimate-t first)")
    report = tshape_deep_point(X, shape, args.t, mc_samples=args.samples, seed=args.seed)
    elapsed = (time.perf_counter() - started) * 1000.0
    params = {
        "shape": args.shape,
        "in": args.infile,
        "t": args.t,
        "samples": args.samples,
        "seed": args.seed,
    }
    result = {
        "witness": _point_list(report.witness),
        "ordered_pair_count": report.ordered_pair_count,
        "unordered_pair_count": report.unordered_pair_count,
        "pair_universe": report.pair_universe,
        "fraction": report.fraction,
    }
    bound = pdio.bound_block(report.bound_name, report.bound, report.ordered_pair_count, report.bound_met)
    return _finish(pdio.make_report("depth", params, elapsed, result, bound), args.out)


def _cmd_net(args) -> int:
    shape = parse_shape(args.shape)
    X = pdio.read_point_csv(args.infile)
    started = time.perf_counter()
    if shape.kind == "lens":
        result = lens_net(X, args.epsilon, shape.param, args.t, seed=args.seed, mc_samples=args.samples)
    else:
        result = weak_net(X, args.epsilon, shape, args.t, seed=args.seed, mc_samples=args.samples)
    elapsed = (time.perf_counter() - started) * 1000.0

    if args.net_out:
        pdio.write_point_csv(args.net_out, result.points)

    params = {
        "shape": args.shape,
        "epsilon": args.epsilon,
        "t": args.t,
        "in": args.infile,
        "samples": args.samples,
        "seed": args.seed,
    }
    payload = {
        "net_points": [_point_list(p) for p in result.points],
        "iterations": result.iterations,
        "certified": result.certified,
        "witness_clique": result.witness_clique,
        "lambda_used": result.lambda_used,
        "lambda_emp": result.lambda_emp,
        "iteration_cap": result.iteration_cap,
        "deep_point_shortfalls": result.deep_point_shortfalls,
        "final_clique_size": result.final_clique_size,
        "uncovered_edges": result.uncovered_edges,
    }
    threshold = subset_threshold(args.epsilon, X.shape[0])
    bound = pdio.bound_block(
        "max_clique<ceil(eps*N)", threshold, result.final_clique_size, result.certified
    )
    return _finish(pdio.make_report("net", params, elapsed, payload, bound), args.out)


def _cmd_select(args) -> int:
    X = pdio.read_point_csv(args.infile)
    started = time.perf_counter()
    if args.mode == "diameter":
        sel = diameter_selection(distance_matrix(X))
        elapsed = (time.perf_counter() - started) * 1000.0
        params = {"mode": args.mode, "in": args.infile}
        result = {
            "selected_indices": [int(i) for i in sel.selected],
            "capture_radii": [float(r) for r in sel.radii],
            "diam_selected": sel.diam_selected,
            "qualifying_pairs": [[int(a), int(b)] for a, b in sel.qualifying_pairs],
            "pair_count": sel.pair_count,
        }
        bound = pdio.bound_block("N^2/64", sel.bound, sel.pair_count, sel.bound_met)
        return _finish(pdio.make_report("select", params, elapsed, result, bound), args.out)

    if args.j is None:
        raise ValueError("boxsplit needs --j")
    split = box_split(X, args.j)
    elapsed = (time.perf_counter() - started) * 1000.0
    params = {"mode": args.mode, "in": args.infile, "j": args.j}
    result = {
        "thresholds": [float(z) for z in split.thresholds],
        "signs": [int(s) for s in split.signs],
        "count_side1": split.count_side1,
        "count_side2": split.count_side2,
    }
    bound = pdio.bound_block(
        "N/2^j", split.bound, min(split.count_side1, split.count_side2), split.bound_met
    )
    return _finish(pdio.make_report("select", params, elapsed, result, bound), args.out)


def _cmd_estimate_t(args) -> int:
    shape = parse_shape(args.shape)
    started = time.perf_counter()
    est = estimate_t(
        shape, args.n, samples=args.samples, radii=args.radii, seed=args.seed,
        threads=_thread_count(),
    )
    elapsed = (time.perf_counter() - started) * 1000.0
    params = {
        "shape": args.shape,
        "n": args.n,
        "samples": args.samples,
        "radii": args.radii,
        "seed": args.seed,
    }
    result = {
        "t_hat": est.t_hat,
        "ci_halfwidth": est.ci_halfwidth,
        "samples_per_radius": est.samples_per_radius,
        "table": [
            {"r": float(r), "fraction": float(f)}
            for r, f in zip(est.radii, est.fractions)
        ],
    }
    return _finish(pdio.make_report("estimate-t", params, elapsed, result), args.out)


_DISPATCH = {
    "gen": _cmd_gen,
    "depth": _cmd_depth,
    "net": _cmd_net,
    "select": _cmd_select,
    "estimate-t": _cmd_estimate_t,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse already printed usage
        return exit_.code if isinstance(exit_.code, int) else 2
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
