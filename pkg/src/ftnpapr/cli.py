"""Command-line front end.

Verbs:
    run <config.toml>      run a scenario campaign from a TOML file
    figure fig1|fig2|fig3  run a built-in scenario preset and render its SVG
    verify <suite>         run the spectral/power/ccdf property suites

Exit codes: 0 success, 2 configuration error, 3 numerical invariant breach
or failed tolerance.  The FTNPAPR_OUTPUT_DIR environment variable overrides
the configured output directory; explicit --output-dir wins over both.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .scenario import (
    OUTPUT_DIR_ENV,
    ConfigError,
    InvariantBreach,
    load_config,
    reproduce_figure,
    run_scenario,
    verify,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BREACH = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftnpapr",
        description="PAPR/CCDF analysis for faster-than-Nyquist signaling with Gaussian symbols",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario from a TOML config file")
    run_p.add_argument("config", type=Path, help="scenario configuration file")
    run_p.add_argument("--output-dir", type=Path, default=None)
    run_p.add_argument("--realizations", type=int, default=None)
    run_p.add_argument("--master-seed", type=int, default=None)
    run_p.add_argument("--workers", type=int, default=None)
    run_p.add_argument("--gap-tolerance", type=float, default=None)
    run_p.add_argument("--dump-spectra", action="store_true", default=None)
    run_p.add_argument("--dump-channels", action="store_true", default=None)

    fig_p = sub.add_parser("figure", help="run a built-in scenario preset")
    fig_p.add_argument("figure", choices=("fig1", "fig2", "fig3"))
    fig_p.add_argument("--scale", choices=("desk", "full"), default="desk")
    fig_p.add_argument("--output-dir", type=Path, default=None)
    fig_p.add_argument("--realizations", type=int, default=None)
    fig_p.add_argument("--master-seed", type=int, default=None)
    fig_p.add_argument("--workers", type=int, default=None)

    ver_p = sub.add_parser("verify", help="run the numerical property suites")
    ver_p.add_argument("suite", choices=("spectral", "power", "ccdf", "all"))
    ver_p.add_argument(
        "--tolerance",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override a named tolerance (repeatable)",
    )
    return parser


def _resolve_output_dir(explicit: Path | None) -> Path | None:
    if explicit is not None:
        return explicit
    env = os.environ.get(OUTPUT_DIR_ENV)
    return Path(env) if env else None


def _cmd_run(args: argparse.Namespace) -> int:
    overrides = {
        "output_dir": _resolve_output_dir(args.output_dir),
        "realizations": args.realizations,
        "master_seed": args.master_seed,
        "workers": args.workers,
        "gap_tolerance": args.gap_tolerance,
        "dump_spectra": args.dump_spectra,
        "dump_channels": args.dump_channels,
    }
    config = load_config(args.config, overrides)
    result = run_scenario(config)
    for row in result.summary["combos"]:
        status = "ok" if row["pass"] else "GAP EXCEEDED"
        print(
            f"{status:>12}  delta={row['delta']:g} scheme={row['scheme']}: "
            f"papr sup gap {row['papr_sup_gap']:.4f}, power sup gap {row['power_sup_gap']:.4f}"
        )
    print(f"outputs in {result.output_dir}")
    if not result.passed:
        print(
            f"FAIL: at least one sup gap exceeds the tolerance {config.gap_tolerance:g}",
            file=sys.stderr,
        )
        return EXIT_BREACH
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    overrides = {}
    if args.realizations is not None:
        overrides["realizations"] = args.realizations
    if args.master_seed is not None:
        overrides["master_seed"] = args.master_seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    out_dir = _resolve_output_dir(args.output_dir) or Path(f"ftnpapr-{args.figure}")
    result = reproduce_figure(args.figure, scale=args.scale, output_dir=out_dir, **overrides)
    for row in result.summary["combos"]:
        print(
            f"delta={row['delta']:g} scheme={row['scheme']}: "
            f"papr sup gap {row['papr_sup_gap']:.4f}, power sup gap {row['power_sup_gap']:.4f}"
        )
    print(f"outputs in {result.output_dir} (plot: {result.summary['svg']})")
    return EXIT_OK if result.passed else EXIT_BREACH


def _cmd_verify(args: argparse.Namespace) -> int:
    tolerances = {}
    for item in args.tolerance:
        if "=" not in item:
            raise ConfigError(f"tolerance override must look like NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        try:
            tolerances[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"tolerance {name!r}: {value!r} is not a number") from exc
    report = verify(args.suite, tolerances)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_BREACH


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": _cmd_run, "figure": _cmd_figure, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
