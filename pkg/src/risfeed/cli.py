"""Command-line front end.

Subcommands:
  analyze   single-scenario mode report (JSON)
  table     sweep over an (N_p, f) grid (CSV)
  pattern   feeder or surface radiation pattern (CSV)
  profile   surface excitation magnitudes (CSV)
  sweep-f   exhaustive feeder-distance optimization trace (CSV)

Flags may also come from a JSON config file via --config; explicit
command-line flags override file values. All distances are in
half-wavelength units.
"""

import argparse
import json
import sys

from . import sweep as sweep_mod
from .modes import (ConvergenceError, mode_report, write_mode_report,
                    nonpem_vector)
from .patterns import (amaf_pattern, ris_pattern, ris_excitation,
                       default_grid, write_pattern_csv, write_profile_csv,
                       DEFAULT_GRID_STEP_DEG)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad integer list: {text!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad number list: {text!r}")


def _build_parser():
    p = _Parser(prog="risfeed",
                description="Near-field feeder-to-surface power transfer "
                            "simulator (distances in half-wavelengths)")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def scenario_flags(sp, multi=False):
        sp.add_argument("--na", type=int, default=4,
                        help="feeder array size (default 4)")
        if multi:
            sp.add_argument("--np", dest="np_list", type=_int_list,
                            help="surface sizes, comma list")
            sp.add_argument("--f", dest="f_list", type=_float_list,
                            help="feeder distances, comma list")
        else:
            sp.add_argument("--np", dest="np_", type=int,
                            help="surface array size")
            sp.add_argument("--f", type=float,
                            help="feeder-to-surface distance")
        sp.add_argument("--feed", choices=["center", "end"], default="center")
        sp.add_argument("--tilted", action="store_true",
                        help="tilt the end-feed feeder toward the "
                             "surface center")
        sp.add_argument("--config", default=None,
                        help="JSON file with flag defaults")
        sp.add_argument("--out", required=True, help="output file path")

    sp = sub.add_parser("analyze", help="single-scenario mode report (JSON)")
    scenario_flags(sp)
    sp.add_argument("--beam", choices=["pem", "nonpem"], default="pem")

    sp = sub.add_parser("table", help="grid sweep table (CSV)")
    scenario_flags(sp, multi=True)
    sp.add_argument("--beam", choices=["pem", "nonpem"], default="pem")

    sp = sub.add_parser("pattern", help="radiation pattern (CSV)")
    scenario_flags(sp)
    sp.add_argument("--beam", choices=["pem", "nonpem"], default="pem")
    sp.add_argument("--array", choices=["amaf", "ris"], default="amaf",
                    help="which array's pattern to emit")
    sp.add_argument("--grid-step", type=float,
                    default=DEFAULT_GRID_STEP_DEG,
                    help="angle grid step in degrees")

    sp = sub.add_parser("profile", help="surface excitation profile (CSV)")
    scenario_flags(sp)
    sp.add_argument("--beam", choices=["pem", "nonpem"], default="pem")

    sp = sub.add_parser("sweep-f", help="feeder-distance optimization (CSV)")
    sp.add_argument("--na", type=int, default=4)
    sp.add_argument("--np", dest="np_", type=int)
    sp.add_argument("--feed", choices=["center", "end"], default="end")
    sp.add_argument("--tilted", action="store_true")
    sp.add_argument("--beam", choices=["pem", "nonpem"], default="nonpem")
    sp.add_argument("--f-min", type=float)
    sp.add_argument("--f-max", type=float)
    sp.add_argument("--f-step", type=float, default=1.0)
    sp.add_argument("--objective", choices=list(sweep_mod.OBJECTIVES),
                    default="min_sll")
    sp.add_argument("--config", default=None)
    sp.add_argument("--out", required=True)
    return p


def _apply_config(parser, args, argv):
    """Fill unset flags from a JSON config file; CLI flags win."""
    if not getattr(args, "config", None):
        return args
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad config file {args.config}: {exc}")
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    known = set(vars(args)) | {"np", "f"}
    for key in cfg:
        if key.replace("-", "_") not in known:
            raise UsageError(f"unknown config key {key!r}")
    explicit = {a.lstrip("-").split("=")[0].replace("-", "_")
                for a in argv if a.startswith("--")}
    for key, value in cfg.items():
        dest = {"np": "np_" if hasattr(args, "np_") else "np_list",
                "f": "f" if hasattr(args, "f") else "f_list"}.get(
                    key, key.replace("-", "_"))
        if key in explicit or key.replace("-", "_") in explicit:
            continue
        if dest in ("np_list", "f_list") and isinstance(value, list):
            setattr(args, dest, value)
        else:
            setattr(args, dest, value)
    return args


def _validate(args):
    required = {"analyze": ["np_", "f"], "pattern": ["np_", "f"],
                "profile": ["np_", "f"], "table": ["np_list", "f_list"],
                "sweep-f": ["np_", "f_min", "f_max"]}
    flag = {"np_": "--np", "np_list": "--np", "f_list": "--f"}
    for name in required[args.subcommand]:
        if getattr(args, name, None) is None:
            raise UsageError(
                f"missing required parameter {flag.get(name, '--' + name.replace('_', '-'))}")
    for name in ("na", "np_"):
        if hasattr(args, name) and getattr(args, name) < 1:
            raise UsageError(f"--{name.rstrip('_')} must be >= 1")
    if hasattr(args, "f") and args.f <= 0:
        raise UsageError("--f must be positive")
    if getattr(args, "tilted", False) and args.feed != "end":
        raise UsageError("--tilted requires --feed end")


def _analysis(args):
    scenario, T, modes, metrics = sweep_mod.analyze_point(
        args.na, args.np_, args.f, args.feed, args.tilted)
    beam = modes.beam(0) if args.beam == "pem" else nonpem_vector(
        modes.beam(0))
    return scenario, T, modes, metrics, beam


def run(args):
    cmd = args.subcommand
    if cmd == "analyze":
        scenario, _, modes, metrics, _ = _analysis(args)
        write_mode_report(mode_report(modes, metrics, scenario), args.out)
    elif cmd == "table":
        records = sweep_mod.run_grid(args.na, args.np_list, args.f_list,
                                     args.feed, args.tilted, args.beam)
        sweep_mod.write_table_csv(records, args.out)
    elif cmd == "pattern":
        _, T, _, _, beam = _analysis(args)
        grid = default_grid(args.grid_step)
        if args.array == "amaf":
            curve = amaf_pattern(beam, grid)
        else:
            curve = ris_pattern(T, beam, grid)
        write_pattern_csv(curve, args.out)
    elif cmd == "profile":
        _, T, _, _, beam = _analysis(args)
        write_profile_csv(ris_excitation(T, beam), args.out)
    elif cmd == "sweep-f":
        n_steps = int(round((args.f_max - args.f_min) / args.f_step))
        f_values = [args.f_min + i * args.f_step for i in range(n_steps + 1)]
        f_values = [f for f in f_values if f <= args.f_max + 1e-9]
        best_f, trace = sweep_mod.optimize_f(
            args.na, args.np_, args.feed, args.tilted, args.beam,
            f_values, args.objective)
        sweep_mod.write_trace_csv(trace, best_f, args.objective, args.out)
    return 0


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config(parser, args, argv)
        _validate(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(args)
    except (ConvergenceError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
