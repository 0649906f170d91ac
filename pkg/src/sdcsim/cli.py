"""Command-line entry points: validate, sweep, run, calibrate."""

from __future__ import annotations

import argparse
import sys

from .experiment import (
    ConfigError,
    DEFAULT_SCENARIO,
    emit_csv,
    emit_slot_dump,
    evaluate_budget,
    sweep,
    validate,
)
from .power_thermal import calibrate_energy_per_bit


def _load(args):
    config = validate(args.config)
    if args.seed is not None:
        config.seed = args.seed
    return config


def _add_common(p):
    p.add_argument("config", nargs="?", default=str(DEFAULT_SCENARIO), help="scenario file (INI)")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sdcsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check a scenario file and report violations")
    _add_common(p_val)

    p_sweep = sub.add_parser("sweep", help="evaluate every configured power budget")
    _add_common(p_sweep)
    p_sweep.add_argument("--out", required=True, help="metrics CSV output path")
    p_sweep.add_argument("--dump-slots", default=None, help="optional per-slot allocation CSV")

    p_run = sub.add_parser("run", help="evaluate a single power budget")
    _add_common(p_run)
    p_run.add_argument("--budget", type=float, required=True, help="power budget in watts")
    p_run.add_argument("--report", required=True, help="metrics CSV output path (single row)")
    p_run.add_argument("--dump-slots", default=None, help="optional per-slot allocation CSV")

    p_cal = sub.add_parser("calibrate", help="solve the energy-per-bit anchoring constant")
    _add_common(p_cal)
    p_cal.add_argument("--cross-mw", type=float, default=50.0, help="anchor power budget, MW")
    p_cal.add_argument("--ref-gbps", type=float, default=100.0, help="anchor per-GS rate, Gb/s")

    args = parser.parse_args(argv)
    try:
        config = _load(args)
    except ConfigError as exc:
        print("invalid scenario:", file=sys.stderr)
        for err in exc.errors:
            print(f"  {err}", file=sys.stderr)
        return 1

    if args.command == "validate":
        print(f"OK: {args.config}")
        return 0

    if args.command == "sweep":
        points = sweep(config)
        for point in points:
            if not point.envelope.feasible:
                print(
                    f"warning: infeasible envelope at P={point.row.p_budget:g} W "
                    "(pump overhead exceeds budget)",
                    file=sys.stderr,
                )
        emit_csv([p.row for p in points], args.out)
        print(f"wrote {len(points)} rows to {args.out}")
        if args.dump_slots:
            emit_slot_dump(points, args.dump_slots)
            print(f"wrote slot dump to {args.dump_slots}")
        return 0

    if args.command == "run":
        point = evaluate_budget(config, args.budget)
        if not point.envelope.feasible:
            print(f"warning: infeasible envelope at P={args.budget:g} W", file=sys.stderr)
        emit_csv([point.row], args.report)
        row = point.row
        print(
            f"P={row.p_budget:.9g} W  E1={row.e1_max:.9g} W  E2={row.e2:.9g} W  "
            f"X_max={row.x_max_bits:.9g} bits  delivered={row.delivered_fraction:.9g}"
        )
        if args.dump_slots:
            emit_slot_dump([point], args.dump_slots)
            print(f"wrote slot dump to {args.dump_slots}")
        return 0

    if args.command == "calibrate":
        try:
            e_bit = calibrate_energy_per_bit(
                p_cross_w=args.cross_mw * 1e6,
                rate_ref_bps=args.ref_gbps * 1e9,
                n_gs=config.n_gs,
                radiator=config.power.radiator,
                pump_fraction=config.power.pump_fraction,
                service_duration_s=config.power.service_duration_s,
            )
        except ValueError as exc:
            print(f"calibration failed: {exc}", file=sys.stderr)
            return 1
        print(f"energy_per_bit_j = {e_bit!r}")
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
