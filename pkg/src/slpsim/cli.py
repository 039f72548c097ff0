"""Command line entry point.

Subcommands:

* ``slpsim run --config cfg.json [--model X] [--out DIR]``
* ``slpsim compare --a DIR --b DIR [--norm l2|linf]``
* ``slpsim defaults``

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import ComparisonError, ConfigError, NumericError, UnsupportedOracleError
from .scenario import RunConfig, compare_runs, parse_config, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slpsim",
        description="Slow-light pulse storage and stationary-light simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one scenario")
    p_run.add_argument("--config", required=True, help="JSON config file")
    p_run.add_argument("--model", choices=("analytic", "adiabatic", "full", "thermal"),
                       help="override the configured model")
    p_run.add_argument("--out", help="override the configured output directory")

    p_cmp = sub.add_parser("compare", help="diff two run directories")
    p_cmp.add_argument("--a", required=True, help="first run directory")
    p_cmp.add_argument("--b", required=True, help="second run directory")
    p_cmp.add_argument("--norm", choices=("l2", "linf"), default="l2")

    sub.add_parser("defaults", help="print the default configuration")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "defaults":
            sys.stdout.write(RunConfig().to_json())
            return EXIT_OK
        if args.command == "run":
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = parse_config(fh.read())
            if args.model:
                cfg = dataclasses.replace(cfg, model=args.model)
            if args.out:
                cfg = dataclasses.replace(cfg, output_dir=args.out)
            manifest = run_scenario(cfg)
            print(f"wrote {len(manifest.snapshots)} snapshots to {cfg.output_dir} "
                  f"(model={cfg.model}, beta={manifest.beta:.6f})")
            return EXIT_OK
        if args.command == "compare":
            report = compare_runs(args.a, args.b, norm=args.norm)
            print(f"{'index':>5} {'t':>10} {'psi_plus':>13} "
                  f"{'psi_minus':>13} {'energy':>13}")
            for row in report["per_snapshot"]:
                print(f"{row['index']:>5} {row['t']:>10.4f} "
                      f"{row['psi_plus']:>13.6e} {row['psi_minus']:>13.6e} "
                      f"{row['energy_density']:>13.6e}")
            mx = report["max"]
            print(f"max ({report['norm']}): psi_plus={mx['psi_plus']:.6e} "
                  f"psi_minus={mx['psi_minus']:.6e} "
                  f"energy={mx['energy_density']:.6e}")
            return EXIT_OK
        return EXIT_CONFIG
    except (ConfigError, UnsupportedOracleError, ComparisonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
