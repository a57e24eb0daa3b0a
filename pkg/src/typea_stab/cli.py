"""``typea-stab`` command line: one subcommand per analysis, CSV/JSON out plus a manifest."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import bundled_model_path, load_model, parse_model, validate
from .dynamics import simulate
from .equilibria import find_equilibria
from .errors import InputError, NoEquilibrium, StabError
from .io import fmt, write_manifest, write_table
from .lyapunov import verify_candidate
from .parallel import default_threads
from .roa import classify_grid, vector_field_samples
from .sweeps import (
    DEFAULT_R,
    DEFAULT_WIND,
    DEFAULT_YC,
    WIDE_YC,
    basin_vs_parameter,
    compensation_sweep,
    rotor_resistance_sweep,
    torque_family_wind,
)

EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_NUMERIC = 4
# smallest wind velocity accepted on the command line (lambda is singular at 0)
MIN_WIND = 0.05


def float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def wind_list(text):
    return [max(v, MIN_WIND) for v in float_list(text)]


def axis_range(text):
    """``lo:hi:n``"""
    parts = text.split(":")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}")
    if len(parts) != 3 or n < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n with lo <= hi and n >= 2, got {text!r}")
    return lo, hi, n


def interval(text):
    """``lo:hi``"""
    parts = text.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if len(parts) != 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"expected lo:hi with lo <= hi, got {text!r}")
    return lo, hi


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model config (TOML); default: bundled paper.toml")
    common.add_argument("--output-dir", default="./out", help="directory for emitted files (default ./out)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for grids and families (default: $TYPEA_STAB_THREADS or CPU count)")

    parser = argparse.ArgumentParser(prog="typea-stab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a model config")

    p = sub.add_parser("torque-curves", parents=[common], help="electrical and mechanical torque vs slip")
    p.add_argument("--v", type=wind_list, default=list(DEFAULT_WIND), help="wind velocities (pu), comma list")
    p.add_argument("--s", type=axis_range, default=(0.0, 0.4, 400), help="slip axis lo:hi:n")

    p = sub.add_parser("equilibria", parents=[common], help="equilibria of the slip dynamics")
    p.add_argument("--v", type=wind_list, default=list(DEFAULT_WIND))

    p = sub.add_parser("simulate", parents=[common], help="RK4 time-domain slip trajectory")
    p.add_argument("--v", type=float, default=1.0)
    p.add_argument("--s-init", type=float, default=0.001)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--t-end", type=float, default=50.0)

    p = sub.add_parser("lyapunov", parents=[common], help="integral Lyapunov function check")
    p.add_argument("--v", type=wind_list, default=[1.0])
    p.add_argument("--window", type=interval, default=(-0.01, 0.01), help="displacement window lo:hi")
    p.add_argument("--n", type=int, default=401, help="number of samples")

    p = sub.add_parser("roa", parents=[common], help="region of attraction over the (s, v_w) plane")
    p.add_argument("--s", type=axis_range, default=(0.0, 0.5, 15), help="slip axis lo:hi:n")
    p.add_argument("--v", type=axis_range, default=(0.6, 1.2, 12), help="wind axis lo:hi:n")

    p = sub.add_parser("sweep-comp", parents=[common], help="torque curves vs compensation susceptance")
    p.add_argument("--yc", type=float_list, default=None, help=f"susceptances, default {','.join(map(str, DEFAULT_YC))}")
    p.add_argument("--preset", choices=("default", "wide"), default="default",
                   help="'wide' uses 0,1,2,3 (mostly above resonance; implies --allow-above-resonance)")
    p.add_argument("--allow-above-resonance", action="store_true")
    p.add_argument("--s", type=axis_range, default=(0.0, 0.4, 400))
    p.add_argument("--basin-v", type=wind_list, default=None, help="also report basin upper edge at these winds")

    p = sub.add_parser("sweep-rotor", parents=[common], help="torque curves vs rotor-resistance multiplier")
    p.add_argument("--r", type=float_list, default=list(DEFAULT_R))
    p.add_argument("--s", type=axis_range, default=(0.0, 0.4, 400))
    p.add_argument("--basin-v", type=wind_list, default=None)

    p = sub.add_parser("bench", parents=[common], help="micro-benchmarks (report only)")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--grid", type=int, default=500)
    p.add_argument("--steps", type=int, default=100_000)

    p = sub.add_parser("goldens", help="check or regenerate golden fixtures")
    p.add_argument("--dir", default="goldens")
    p.add_argument("--update", action="store_true", help="rewrite fixtures instead of reporting drift")
    return parser


def _load(args, strict=True):
    if args.model:
        return load_model(args.model, strict=strict), args.model
    return parse_model(bundled_model_path().read_text(encoding="utf-8"), strict), "bundled:paper.toml"


def _tag(v):
    return fmt(float(v))


def cmd_validate(args, model, out):
    report = validate(model)
    rows = [(name, "error", msg) for name, msg in report.violations]
    rows += [(name, "warning", msg) for name, msg in report.warnings]
    path = write_table(out / "validation.csv", ["field", "severity", "message"], rows, args.format)
    print(report)
    return [path], (0 if report.ok else EXIT_INVALID), {"ok": report.ok}


def cmd_torque_curves(args, model, out):
    fam = torque_family_wind(model, args.v, args.s)
    files = [
        write_table(out / "torque_curves.csv", ["parameter", "s", "torque"], fam.records(), args.format),
        write_table(out / "torque_curves_summary.csv", ["parameter", "s_max", "t_max"], fam.summary_records(), args.format),
    ]
    return files, 0, {"curves": len(fam.parameter_values)}


def cmd_equilibria(args, model, out):
    rows, missing = [], []
    for v in args.v:
        try:
            rows += [(eq.v_w, eq.s_star, eq.stability, eq.residual) for eq in find_equilibria(model, v)]
        except NoEquilibrium as exc:
            missing.append(v)
            print(f"warning: NoEquilibrium: {exc}", file=sys.stderr)
    path = write_table(out / "equilibria.csv", ["v_w", "s_star", "stability", "residual"], rows, args.format)
    return [path], 0, {"no_equilibrium": missing}


def cmd_simulate(args, model, out):
    tr = simulate(model, args.v, args.s_init, args.step, args.t_end)
    path = write_table(out / "trajectory.csv", ["t", "s"], zip(tr.t, tr.s), args.format)
    print(f"outcome: {tr.outcome}")
    return [path], 0, {"outcome": str(tr.outcome)}


def cmd_lyapunov(args, model, out):
    files, summary = [], []
    for v in args.v:
        rep = verify_candidate(model, v, args.window, args.n)
        name = "lyapunov.csv" if len(args.v) == 1 else f"lyapunov_v{_tag(v)}.csv"
        files.append(write_table(out / name, ["x", "L", "dLdt"], rep.samples, args.format))
        summary.append((v, rep.s0, rep.l_zero, rep.positivity_ok, rep.derivative_ok, rep.restoring_ok, rep.oddness_defect))
        print(
            f"v_w={_tag(v)} s0={_tag(rep.s0)} L(0)={_tag(rep.l_zero)} positivity_ok={fmt(rep.positivity_ok)} "
            f"derivative_ok={fmt(rep.derivative_ok)} restoring_ok={fmt(rep.restoring_ok)} "
            f"oddness_defect={_tag(rep.oddness_defect)}"
        )
    files.append(write_table(
        out / "lyapunov_summary.csv",
        ["v_w", "s0", "l_zero", "positivity_ok", "derivative_ok", "restoring_ok", "oddness_defect"],
        summary, args.format,
    ))
    return files, 0, {"all_ok": all(r[3] and r[4] for r in summary)}


def cmd_roa(args, model, out):
    s_rng, v_rng = args.s[:2], args.v[:2]
    mesh = (args.s[2], args.v[2])
    grid = classify_grid(model, s_rng, v_rng, mesh, args.threads)
    quiver = vector_field_samples(model, s_rng, v_rng, mesh, args.threads)
    basins = [
        (v, b.lower, b.upper) if b is not None else (v, "", "")
        for v, b in zip(grid.v_axis, grid.basins)
    ]
    files = [
        write_table(out / "roa_grid.csv", ["s", "v_w", "w_value", "w_sign", "in_basin"], grid.records(), args.format),
        write_table(out / "quiver.csv", ["s", "v_w", "W", "0"], quiver, args.format),
        write_table(out / "basins.csv", ["v_w", "lower", "upper"], basins, args.format),
    ]
    return files, 0, {"cells": int(grid.w_value.size)}


def _write_family(out, stem, fam, fmt_name):
    return [
        write_table(out / f"{stem}.csv", ["parameter", "s", "torque"], fam.records(), fmt_name),
        write_table(out / f"{stem}_summary.csv", ["parameter", "s_max", "t_max"], fam.summary_records(), fmt_name),
    ]


def _basin_files(args, model, out, parameter, values, allow_above=False):
    if not args.basin_v:
        return []
    rows = []
    for v in args.basin_v:
        rows += [(parameter, value, v, upper) for value, upper in basin_vs_parameter(model, parameter, values, v, allow_above)]
    return [write_table(out / f"basin_vs_{parameter}.csv", ["parameter", "value", "v_w", "basin_upper"], rows, args.format)]


def cmd_sweep_comp(args, model, out):
    wide = args.preset == "wide"
    values = args.yc if args.yc is not None else list(WIDE_YC if wide else DEFAULT_YC)
    allow = args.allow_above_resonance or wide
    below, above = compensation_sweep(model, values, args.s, allow, args.threads).split()
    files = _write_family(out, "compensation", below, args.format)
    if above.parameter_values:
        files += _write_family(out, "compensation_above_resonance", above, args.format)
    files += _basin_files(args, model, out, "y_c", values, allow)
    return files, 0, {"above_resonance": above.parameter_values}


def cmd_sweep_rotor(args, model, out):
    fam = rotor_resistance_sweep(model, args.r, args.s, args.threads)
    files = _write_family(out, "rotor", fam, args.format)
    files += _basin_files(args, model, out, "r_mult", args.r)
    return files, 0, {}


def cmd_bench(args, model, out):
    from .bench import bench_suite

    results = bench_suite(model, args.repeats, args.grid, args.steps, threads=args.threads)
    rows = [(r.name, r.iterations, r.ns_per_op, r.throughput) for r in results]
    for row in rows:
        print(" ".join(fmt(v) for v in row))
    return [write_table(out / "bench.csv", ["name", "iterations", "ns_per_op", "throughput"], rows, args.format)], 0, {}


COMMANDS = {
    "validate": cmd_validate,
    "torque-curves": cmd_torque_curves,
    "equilibria": cmd_equilibria,
    "simulate": cmd_simulate,
    "lyapunov": cmd_lyapunov,
    "roa": cmd_roa,
    "sweep-comp": cmd_sweep_comp,
    "sweep-rotor": cmd_sweep_rotor,
    "bench": cmd_bench,
}


def _echo(args):
    skip = {"command", "model", "output_dir"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "goldens":
            from .goldens import regenerate_goldens

            report = regenerate_goldens(Path(args.dir), update=args.update)
            for name, changed in report.items():
                if args.update:
                    print(f"{name}: {'rewrote ' + ', '.join(changed) if changed else 'unchanged'}")
                else:
                    print(f"{name}: ok")
            return 0

        if args.threads is None:
            args.threads = default_threads()
        model, model_ref = _load(args, strict=args.command != "validate")
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        files, code, result = COMMANDS[args.command](args, model, out)
        params = _echo(args)
        params["result"] = result
        write_manifest(out, args.command, model_ref, params, files, __version__)
        return code
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except StabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
