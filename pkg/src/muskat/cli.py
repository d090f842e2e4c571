"""Command-line front end.

Exit codes: 0 on success, 1 for usage or configuration problems, 2 when a
run finishes with a numerical failure status.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .diagnostics import turning_report
from .integrator import STATUS_OK
from .lemma import verification_report
from .scenario import (
    SCENARIOS,
    RunConfig,
    import_snapshot,
    load_config,
    run_scenario,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muskat",
        description="Contour-dynamics runs and turnover verification for"
                    " the two-phase Muskat interface problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one scenario")
    run.add_argument("--config", help="INI config file; defaults otherwise")
    run.add_argument("--scenario", choices=SCENARIOS)
    run.add_argument("--out", help="output directory")
    run.add_argument("--n", type=int, help="grid size (even)")
    run.add_argument("--dt", type=float, help="fixed step size")
    run.add_argument("--eps", type=float, help="spectral threshold")
    run.add_argument("--density-jump", type=float, dest="density_jump")
    run.add_argument("--t-final", type=float, dest="t_final")
    run.add_argument("--snapshot-every", type=float, dest="snapshot_every")
    run.add_argument("--input", dest="input_snapshot",
                     help="snapshot file consumed by FORWARD_RERUN")
    run.set_defaults(func=_cmd_run)

    lemma = sub.add_parser("verify-lemma",
                           help="print the turnover construction report")
    lemma.add_argument("--out", help="also write the report to this file")
    lemma.set_defaults(func=_cmd_verify_lemma)

    inspect = sub.add_parser("inspect",
                             help="print the turning report of a snapshot")
    inspect.add_argument("snapshot")
    inspect.set_defaults(func=_cmd_inspect)
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    overrides = {}
    for name, value in (("scenario", args.scenario), ("out_dir", args.out),
                        ("n", args.n), ("dt", args.dt), ("eps", args.eps),
                        ("density_jump", args.density_jump),
                        ("t_final", args.t_final),
                        ("snapshot_every", args.snapshot_every),
                        ("input_snapshot", args.input_snapshot)):
        if value is not None:
            overrides[name] = value
    if overrides:
        config = replace(config, **overrides)
    if config.scenario == "FORWARD_RERUN" and config.input_snapshot is None:
        raise ValueError("FORWARD_RERUN needs --input (or input_snapshot"
                         " in the config)")
    manifest = run_scenario(config)
    print(f"scenario = {manifest.scenario}")
    print(f"status = {manifest.status}")
    if manifest.error:
        print(f"error = {manifest.error}")
    for t, kind in manifest.events:
        print(f"event: t = {t:.9g}  {kind}")
    for name, rel in sorted(manifest.outputs.items()):
        print(f"wrote {name}: {config.out_dir}/{rel}")
    print(f"wrote manifest: {config.out_dir}/manifest.txt")
    return 0 if manifest.status == STATUS_OK else 2


def _cmd_verify_lemma(args) -> int:
    report = verification_report()
    print(report, end="")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
    return 0


def _cmd_inspect(args) -> int:
    curve, time = import_snapshot(args.snapshot)
    rep = turning_report(curve)
    print(f"snapshot: {args.snapshot}")
    print(f"time = {time:.9g}")
    print(f"n = {curve.grid.n}")
    print(f"min_slope = {rep.min_slope:.9e} at alpha = {rep.argmin:.9f}")
    print(f"regime = {rep.regime} (tol {rep.slope_tol:g})")
    if rep.tangent_points:
        for a, x, y in rep.tangent_points:
            print(f"vertical tangent: alpha = {a:.9f},"
                  f" point = ({x:.9f}, {y:.9f})")
    else:
        print("vertical tangents: none")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; fold that into our code 1
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
