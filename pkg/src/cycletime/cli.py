"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 model (or input file) error,
3 the two methods disagree, 4 infeasible period.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

import numpy as np

from . import __version__
from .dioid import parse_scalar
from .errors import CycleTimeError, InfeasibleLambdaError, UnknownModeError
from .modelio import emit_result, load_model
from .pteg import cycle_time_set
from .sldi import (
    check_sldi_trajectory,
    cycle_times_direct,
    cycle_times_improved,
    parse_schedule,
    synthesize_v_periodic,
)
from .trajectory import parse_csv, render, unroll

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODEL = 2
EXIT_DISAGREE = 3
EXIT_INFEASIBLE = 4

METHODS = {"direct": cycle_times_direct, "improved": cycle_times_improved}
BENCH_RUNS = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cycletime", description="Cycle-time analysis of P-time event graphs and switched LDIs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="cycle times of the switched system under a periodic schedule")
    p.add_argument("model")
    p.add_argument("--schedule", required=True, help="named schedule or mode sequence, e.g. ab or a.b")
    p.add_argument("--method", choices=("direct", "improved", "both"), default="improved")

    p = sub.add_parser("pteg-analyze", help="cycle times of a single mode taken as a P-TEG")
    p.add_argument("model")
    p.add_argument("--mode", required=True)

    p = sub.add_parser("synthesize", help="CSV of a periodic trajectory with the given period")
    p.add_argument("model")
    p.add_argument("--schedule", required=True)
    p.add_argument("--lam", required=True, help="period per repetition of the schedule")
    p.add_argument("-K", type=int, default=10, help="number of schedule repetitions after the first (default 10)")

    p = sub.add_parser("check", help="check a CSV trajectory against the switched system")
    p.add_argument("model")
    p.add_argument("--schedule", required=True)
    p.add_argument("trajectory")

    p = sub.add_parser("bench", help="wall-clock time of the methods on v, v^2, ..., v^max-reps")
    p.add_argument("model")
    p.add_argument("--schedule", required=True)
    p.add_argument("--max-reps", type=int, default=10)
    p.add_argument("--methods", default="improved,direct", help="comma-separated subset of direct,improved")
    return parser


def _schedule(model, text) -> tuple:
    if text in model.schedules:
        return model.schedules[text]
    try:
        return parse_schedule(text, model.sldi.alphabet)
    except CycleTimeError as exc:
        raise UsageError(str(exc)) from None


def _load(path, exact=True):
    return load_model(path, exact=exact)


def cmd_analyze(args, out) -> int:
    model = _load(args.model)
    v = _schedule(model, args.schedule)
    if args.method == "both":
        direct = cycle_times_direct(model.sldi, v).normalized()
        improved = cycle_times_improved(model.sldi, v).normalized()
        if direct != improved:
            print(f"methods disagree: direct {direct}, improved {improved}", file=sys.stderr)
            return EXIT_DISAGREE
        result = improved
    else:
        result = METHODS[args.method](model.sldi, v)
    print(emit_result(result), file=out)
    return EXIT_OK


def cmd_pteg_analyze(args, out) -> int:
    model = _load(args.model)
    if args.mode not in model.ptegs:
        raise UsageError(f"unknown mode {args.mode!r}; modes are {', '.join(model.ptegs)}")
    print(emit_result(cycle_time_set(model.ptegs[args.mode])), file=out)
    return EXIT_OK


def cmd_synthesize(args, out) -> int:
    if args.K < 0:
        raise UsageError("-K must be non-negative")
    try:
        lam = parse_scalar(args.lam, exact=True)
    except CycleTimeError as exc:
        raise UsageError(f"--lam: {exc}") from None
    model = _load(args.model)
    v = _schedule(model, args.schedule)
    blocks = synthesize_v_periodic(model.sldi, v, lam)
    traj = unroll(model.sldi, v, np.concatenate(blocks), lam, args.K)
    out.write(render(traj, model.events, fmt="csv"))
    return EXIT_OK


def cmd_check(args, out) -> int:
    model = _load(args.model)
    v = _schedule(model, args.schedule)
    try:
        with open(args.trajectory) as fh:
            events, traj = parse_csv(fh.read(), exact=True)
    except OSError as exc:
        print(f"cannot read trajectory: {exc}", file=sys.stderr)
        return EXIT_MODEL
    if tuple(events) != tuple(model.events):
        print("trajectory columns do not match the model events", file=sys.stderr)
        return EXIT_MODEL
    report = check_sldi_trajectory(model.sldi, v, traj)
    print(emit_result(report), file=out)
    return EXIT_OK


def _time_method(fn, sldi, schedule) -> float:
    fn(sldi, schedule)  # warm-up
    runs = []
    for _ in range(BENCH_RUNS):
        start = time.perf_counter()
        fn(sldi, schedule)
        runs.append(time.perf_counter() - start)
    return statistics.median(runs)


def cmd_bench(args, out) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if not methods or unknown:
        raise UsageError(f"--methods must list direct and/or improved, got {args.methods!r}")
    if args.max_reps < 1:
        raise UsageError("--max-reps must be at least 1")
    model = _load(args.model, exact=False)
    v = _schedule(model, args.schedule)
    header = ["reps", "|v|", *(f"{m}_ms" for m in methods)]
    print("\t".join(header), file=out)
    for reps in range(1, args.max_reps + 1):
        schedule = v * reps
        row = [str(reps), str(len(schedule))]
        for m in methods:
            row.append(f"{_time_method(METHODS[m], model.sldi, schedule) * 1e3:.3f}")
        print("\t".join(row), file=out, flush=True)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "pteg-analyze": cmd_pteg_analyze,
    "synthesize": cmd_synthesize,
    "check": cmd_check,
    "bench": cmd_bench,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cycletime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleLambdaError as exc:
        print(f"cycletime: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except UnknownModeError as exc:
        print(f"cycletime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CycleTimeError, OSError) as exc:
        print(f"cycletime: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
