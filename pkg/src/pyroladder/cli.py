"""Command-line entry point: point, sweep, verify, phase.

Exit status: 0 success, 1 numerical or I/O failure, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .checks import run_verification
from .model import ModelParams
from .oracle import MAX_CLASSICAL_RUNGS, ground_state_phase_boundaries
from .sweep import (
    PEAK_PROMINENCE,
    SNAP_TOL,
    GridSpec,
    SweepError,
    detect_peaks,
    detect_plateaus,
    evaluate_point,
    sweep_grid,
)

CSV_HEADER = ("temperature", "field", "log_z_per_rung", "m_tm", "m_rdm", "chi", "concurrence")
COLLAPSE_TOL = 1e-6


class UsageError(ValueError):
    pass


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _positive(text: str) -> float:
    value = _finite(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {text!r}")
    return value


def format_number(x: float) -> str:
    return format(x, ".17g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pyroladder",
        description="Exact thermodynamics of the spin-1/2 Ising-Heisenberg pyrochlore ladder.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def couplings(p, positive=False):
        kind = _positive if positive else _finite
        p.add_argument("--jh", type=kind, required=True, help="Heisenberg rung coupling J_H")
        p.add_argument("--ji", type=kind, required=True, help="Ising inter-rung coupling J_I")

    point = sub.add_parser("point", help="evaluate all observables at one (T, h)")
    couplings(point)
    point.add_argument("--t", type=_positive, required=True, help="temperature (K_B = 1)")
    point.add_argument("--h", type=_finite, required=True, help="magnetic field")

    sweep = sub.add_parser("sweep", help="evaluate a (T, h) grid and write it to a file")
    couplings(sweep)
    sweep.add_argument("--t-min", type=_positive, required=True)
    sweep.add_argument("--t-max", type=_positive, required=True)
    sweep.add_argument("--t-count", type=_count, required=True)
    sweep.add_argument("--h-min", type=_finite, required=True)
    sweep.add_argument("--h-max", type=_finite, required=True)
    sweep.add_argument("--h-count", type=_count, required=True)
    sweep.add_argument("--out", required=True, help="output path")
    sweep.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sweep.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sweep.add_argument("--flatness-tol", type=_positive, default=1e-3)
    sweep.add_argument("--min-width", type=_positive, default=0.3)
    sweep.add_argument("--snap-tol", type=_positive, default=SNAP_TOL)
    sweep.add_argument("--prominence", type=_positive, default=PEAK_PROMINENCE)

    verify = sub.add_parser("verify", help="run the brute-force oracle suite")
    verify.add_argument("--n", type=int, default=4, help="largest ring size checked")
    verify.add_argument("--draws", type=int, default=20, help="random parameter draws")
    verify.add_argument("--seed", type=int, default=0)

    phase = sub.add_parser("phase", help="T = 0 critical fields")
    couplings(phase, positive=True)
    return parser


def cmd_point(args) -> int:
    params = ModelParams(args.jh, args.ji, args.h, args.t)
    point = evaluate_point(params)
    record = dict(zip(CSV_HEADER, point.as_tuple()))
    record["m_residual"] = point.m_residual
    print(json.dumps(record))
    return 0


def _write_rows(handle, points, fmt: str) -> None:
    if fmt == "csv":
        handle.write(",".join(CSV_HEADER) + "\n")
        for pt in points:
            handle.write(",".join(format_number(v) for v in pt.as_tuple()) + "\n")
    else:
        for pt in points:
            handle.write(json.dumps(dict(zip(CSV_HEADER, pt.as_tuple()))) + "\n")


def _summarize(points, spec: GridSpec, args) -> None:
    n_h = spec.h_range[2]
    coldest = points[:n_h]
    residual = max(pt.m_residual for pt in points)
    print(f"rows: {len(points)}")
    print(f"max |m_tm - m_rdm|: {residual:.3e}")
    if n_h >= 8:
        t = coldest[0].temperature
        report = detect_plateaus(
            [(pt.field, pt.m_tm) for pt in coldest],
            args.flatness_tol,
            args.min_width,
            args.snap_tol,
        )
        for pl in report.plateaus:
            print(f"plateau T={t:g}: h in [{pl.h_start:.4f}, {pl.h_end:.4f}] m={pl.value:g}")
        for hx in report.transitions:
            print(f"transition T={t:g}: h={hx:.4f}")
        for hp, chi in detect_peaks([(pt.field, pt.chi) for pt in coldest], args.prominence):
            print(f"chi peak T={t:g}: h={hp:.4f} chi={chi:.6g}")


def cmd_sweep(args) -> int:
    spec = GridSpec(
        (args.t_min, args.t_max, args.t_count),
        (args.h_min, args.h_max, args.h_count),
        args.jh,
        args.ji,
    )
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    try:
        handle = open(args.out, "w", encoding="ascii", newline="")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    with handle:
        points = sweep_grid(spec, workers=args.workers)
        _write_rows(handle, points, args.format)
    _summarize(points, spec, args)
    return 0


def cmd_verify(args) -> int:
    if not 2 <= args.n <= MAX_CLASSICAL_RUNGS:
        raise UsageError(f"--n must be in [2, {MAX_CLASSICAL_RUNGS}] (classical oracle cap), got {args.n}")
    results = run_verification(args.n, args.draws, args.seed)
    for res in results:
        print(res.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def cmd_phase(args) -> int:
    bounds = ground_state_phase_boundaries(args.jh, args.ji)
    print(f"h_c1 {format_number(bounds.h_c1)}")
    print(f"h_c2 {format_number(bounds.h_c2)}")
    ladder = ", ".join(f"{p.magnetization:g} on [{p.h_start:g}, {p.h_end:g})" for p in bounds.phases)
    print(f"plateaus: {ladder}")
    if bounds.h_c2 - bounds.h_c1 < COLLAPSE_TOL:
        print("warning: mid plateau collapsed (h_c2 - h_c1 < 1e-6)", file=sys.stderr)
    return 0


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "verify": cmd_verify, "phase": cmd_phase}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, SweepError) as exc:
        print(f"{parser.prog} {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
