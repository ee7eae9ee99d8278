"""Command-line front end.

    flatflow run <config> [--out DIR]
    flatflow calibrate <config> [--out DIR]
    flatflow verify-barrier <config> --calibration FILE [--out DIR]
    flatflow dump --snapshot FILE --format {grid,csv-profile} [--out FILE]

Exit codes: 0 success, 1 acceptance failure (summary still written),
2 invalid configuration, 3 solver failure.  FLATFLOW_THREADS caps the number
of compute threads.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _apply_thread_cap() -> None:
    cap = os.environ.get("FLATFLOW_THREADS")
    if not cap:
        return
    try:
        n = max(1, int(cap))
    except ValueError:
        print(f"flatflow: ignoring malformed FLATFLOW_THREADS={cap!r}", file=sys.stderr)
        return
    import numba

    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def _default_outdir(config_path: str, preset: str) -> Path:
    stem = Path(config_path).stem
    return Path.cwd() / f"flatflow_{preset}_{stem}"


def _run_config(config_path: str, out: str | None, calibration_path: str | None = None,
                force_preset: str | None = None) -> int:
    from .calibrate import CalibrationRecord
    from .config import ConfigError, RunConfig
    from .experiments import run_experiment
    from .solver import SolverDidNotConverge

    try:
        cfg = RunConfig.load(config_path)
        preset = cfg.preset()
        if force_preset and preset != force_preset:
            raise ConfigError(
                f"config declares preset {preset!r}; this command requires {force_preset!r}"
            )
        calibration = None
        if calibration_path:
            calibration = CalibrationRecord.read(calibration_path)
        outdir = Path(out) if out else _default_outdir(config_path, preset)
    except (ConfigError, FileNotFoundError, KeyError) as exc:
        print(f"flatflow: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_experiment(cfg, outdir, calibration=calibration)
    except ConfigError as exc:
        print(f"flatflow: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverDidNotConverge as exc:
        print(f"flatflow: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    for row in result.rows:
        status = "PASS" if row.passed else "FAIL"
        print(f"[{status}] {row.check}: measured={row.measured} expected={row.expected}")
    print(f"artifacts: {outdir}")
    return EXIT_OK if result.passed else EXIT_ACCEPTANCE


def _dump(snapshot: str, fmt: str, out: str | None) -> int:
    from .axisym import profile_extract
    from .gridio import read_snapshot, write_gridset, write_csv

    E, k, t = read_snapshot(snapshot)
    if fmt == "grid":
        target = out or (str(Path(snapshot).with_suffix("")) + ".grid")
        write_gridset(E, target)
    elif fmt == "csv-profile":
        target = out or (str(Path(snapshot).with_suffix("")) + "_profile.csv")
        prof = profile_extract(E)
        xs = prof.sample_points()
        write_csv(target, ["x1", "g"], [[float(x), float(g)] for x, g in zip(xs, prof.samples)])
    else:
        print(f"flatflow: unknown dump format {fmt!r}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"wrote {target} (snapshot k={k}, t={t})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatflow",
        description="Minimizing-movement laboratory for curvature flow with forcing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment preset from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (default derived from config name)")
    p_run.add_argument("--calibration", help="calibration file for presets that need one")

    p_cal = sub.add_parser("calibrate", help="fit the empirical constants")
    p_cal.add_argument("config")
    p_cal.add_argument("--out")

    p_bar = sub.add_parser("verify-barrier", help="certify and check the barrier family")
    p_bar.add_argument("config")
    p_bar.add_argument("--calibration", required=True)
    p_bar.add_argument("--out")

    p_dump = sub.add_parser("dump", help="convert a stored snapshot")
    p_dump.add_argument("--snapshot", required=True)
    p_dump.add_argument("--format", required=True, choices=["grid", "csv-profile"])
    p_dump.add_argument("--out")
    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _run_config(args.config, args.out, calibration_path=args.calibration)
    if args.command == "calibrate":
        return _run_config(args.config, args.out, force_preset="calibrate")
    if args.command == "verify-barrier":
        return _run_config(args.config, args.out, calibration_path=args.calibration,
                           force_preset="barrier_verify")
    if args.command == "dump":
        return _dump(args.snapshot, args.format, args.out)
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
