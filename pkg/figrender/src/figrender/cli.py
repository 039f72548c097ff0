"""Command line front end.

Subcommands:

* ``render heatmap --run DIR [--run2 DIR] --quantity Q --out FILE.png``
* ``render cuts --run DIR --times "0,2,5" --quantity Q --out FILE.png``
* ``render sixpanel --run DIR --run2 DIR --out FILE.png``

Exit codes: 0 success, 2 bad input or schema, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import FigrenderError
from .io import QUANTITIES
from .render import PanelSpec, render_heatmap, render_linecuts, render_sixpanel


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render figures from slpsim run directories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_heat = sub.add_parser("heatmap", help="space-time heatmap (1-2 runs)")
    p_heat.add_argument("--run", required=True)
    p_heat.add_argument("--run2")
    p_heat.add_argument("--quantity", choices=QUANTITIES,
                        default="energy_density")
    p_heat.add_argument("--cmap", default="inferno")
    p_heat.add_argument("--out", required=True)

    p_cuts = sub.add_parser("cuts", help="overlaid profiles at given times")
    p_cuts.add_argument("--run", required=True)
    p_cuts.add_argument("--times", required=True,
                        help="comma-separated times in T_s, e.g. '0,2,5'")
    p_cuts.add_argument("--quantity", choices=QUANTITIES,
                        default="energy_density")
    p_cuts.add_argument("--out", required=True)

    p_six = sub.add_parser("sixpanel",
                           help="3x2 layout of both runs, all quantities")
    p_six.add_argument("--run", required=True)
    p_six.add_argument("--run2", required=True)
    p_six.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "heatmap":
            dirs = [args.run] + ([args.run2] if args.run2 else [])
            out = render_heatmap(PanelSpec(
                run_dirs=dirs, quantity=args.quantity,
                colormap=args.cmap, out_path=args.out))
        elif args.command == "cuts":
            times = [float(s) for s in args.times.split(",") if s.strip()]
            if not times:
                print("error: no times given", file=sys.stderr)
                return 2
            out = render_linecuts(args.run, times, args.quantity, args.out)
        else:
            out = render_sixpanel(args.run, args.run2, args.out)
        print(f"wrote {out}")
        return 0
    except FigrenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
