"""Command-line driver.

Subcommands:

    run        one simulation -> snapshot CSV
    converge   grid of (scheme, dt, K) runs -> convergence report CSV
    compare    two snapshot CSVs -> L1 error table
    scenarios  list the scenario catalog
    report     one simulation -> snapshot CSV plus rendered figures

Exit codes: 0 success, 1 validation error, 2 runtime solver error.
Diagnostics go to stderr; data goes to files or stdout ("-" as output).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .config import RunConfig, parse_config, resolve_config, resolve_dt
from .csvio import read_snapshot_csv, write_convergence_csv, write_snapshot_csv
from .diagnostics import convergence_study, l1_error
from .errors import GridMismatchError, MsdiffError, ValidationError
from .grid import build_grid
from .scenarios import SCENARIO_NAMES, scenario_catalog
from .schemes import run_simulation


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ValidationError (exit 1)."""

    def error(self, message):
        raise ValidationError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="msdiff", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p: _Parser, output_flag: bool = True):
        p.add_argument("--config", help="key-value config file; flags override it")
        p.add_argument("--scenario", help=f"one of {', '.join(SCENARIO_NAMES)} or 'custom'")
        p.add_argument("--d12", type=float, help="binary diffusivity (custom scenario)")
        p.add_argument("--d13", type=float, help="binary diffusivity (custom scenario)")
        p.add_argument("--d23", type=float, help="binary diffusivity (custom scenario)")
        p.add_argument("--init", help="initial profile for custom scenarios")
        p.add_argument("--j-max", type=int, dest="j_max", help="node count parameter J")
        p.add_argument("--scheme", help="global or richardson")
        p.add_argument("--dt", help="'cfl', 'cfl/M', a float, or a fraction like 1/100")
        p.add_argument("--k-iters", type=int, dest="k_iters",
                       help="sub-stages per step (richardson)")
        p.add_argument("--t-end", type=float, dest="t_end", help="final time")
        p.add_argument("--snapshot-stride", type=int, dest="snapshot_stride",
                       help="steps between recorded snapshots")
        if output_flag:
            p.add_argument("--output", help="snapshot CSV path ('-' for stdout)")

    p_run = sub.add_parser("run", help="run one simulation and write a snapshot CSV")
    add_run_flags(p_run)

    p_conv = sub.add_parser("converge",
                            help="compare schemes and time steps against a reference run")
    p_conv.add_argument("--scenario", default="uphill-semidegenerate")
    p_conv.add_argument("--j-max", type=int, dest="j_max", default=140)
    p_conv.add_argument("--t-end", type=float, dest="t_end", default=None)
    p_conv.add_argument("--dt", default="cfl,cfl/2,cfl/4",
                        help="comma list of dt policies run with the global scheme")
    p_conv.add_argument("--richardson", action="append", default=[],
                        metavar="DT:K", help="extra richardson row, e.g. 1/100:800")
    p_conv.add_argument("--reference", default="cfl/8",
                        help="dt policy of the global-scheme reference run")
    p_conv.add_argument("--output", default="convergence.csv",
                        help="report CSV path ('-' for stdout)")
    p_conv.add_argument("--plot", default=None, metavar="PNG",
                        help="also render an error-versus-dt figure")

    p_cmp = sub.add_parser("compare", help="L1 table between two snapshot CSVs")
    p_cmp.add_argument("csv_a")
    p_cmp.add_argument("csv_b")
    p_cmp.add_argument("--output", default="-", help="table path ('-' for stdout)")

    sub.add_parser("scenarios", help="list the scenario catalog")

    p_rep = sub.add_parser("report",
                           help="run one simulation, write CSV and render figures")
    add_run_flags(p_rep, output_flag=False)
    p_rep.add_argument("--outdir", default="report", help="directory for CSV and figures")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ValidationError(f"config file not found: {path}")
        cfg = parse_config(path.read_text(encoding="utf-8"))
    else:
        cfg = RunConfig()
    overrides = {
        name: getattr(args, name)
        for name in ("scenario", "d12", "d13", "d23", "init", "j_max", "scheme",
                     "dt", "k_iters", "t_end", "snapshot_stride", "output")
        if getattr(args, name, None) is not None
    }
    return replace(cfg, **overrides)


def _emit(text: str, target: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).parent.mkdir(parents=True, exist_ok=True)
        Path(target).write_text(text, encoding="utf-8")


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    scenario, grid, scheme_cfg, n_steps = resolve_config(cfg)
    series = run_simulation(scenario.build_initial(grid), scheme_cfg,
                            scenario.spec, grid)
    if cfg.output == "-":
        count = write_snapshot_csv(series, sys.stdout)
    else:
        count = write_snapshot_csv(series, cfg.output)
    print(f"{scenario.name}: {n_steps} steps at dt={scheme_cfg.dt:.6e}, "
          f"{len(series.snapshots)} snapshots, {count} bytes -> {cfg.output}",
          file=sys.stderr)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    from .plots import render_report

    cfg = _config_from_args(args)
    scenario, grid, scheme_cfg, n_steps = resolve_config(cfg)
    series = run_simulation(scenario.build_initial(grid), scheme_cfg,
                            scenario.spec, grid)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "snapshots.csv"
    write_snapshot_csv(series, csv_path)
    figures = render_report(series, outdir)
    print(f"{scenario.name}: {n_steps} steps, wrote {csv_path} and "
          f"{', '.join(f.name for f in figures)}", file=sys.stderr)
    return 0


def _cmd_converge(args: argparse.Namespace) -> int:
    scenario = scenario_catalog(args.scenario)
    if args.t_end is not None:
        scenario = replace(scenario, t_end=args.t_end)
    grid = build_grid(args.j_max)

    entries = []
    for policy in [p for p in args.dt.split(",") if p.strip()]:
        dt, _ = resolve_dt(policy, grid, scenario, scenario.t_end)
        entries.append(("global", dt, 1))
    for spec_text in args.richardson:
        policy, sep, k_text = spec_text.rpartition(":")
        if not sep:
            raise ValidationError(
                f"--richardson expects DT:K, got {spec_text!r}"
            )
        try:
            k_iters = int(k_text)
        except ValueError:
            raise ValidationError(f"--richardson iteration count in {spec_text!r} "
                                  "must be an integer") from None
        if k_iters < 1:
            raise ValidationError("--richardson iteration count must be >= 1")
        dt, _ = resolve_dt(policy, grid, scenario, scenario.t_end)
        entries.append(("richardson", dt, k_iters))
    if not entries:
        raise ValidationError("no convergence rows requested")

    reference_dt, _ = resolve_dt(args.reference, grid, scenario, scenario.t_end)
    report = convergence_study(scenario, grid, entries, reference_dt)

    if args.output == "-":
        write_convergence_csv(report, sys.stdout)
    else:
        write_convergence_csv(report, args.output)
    if args.plot:
        from .plots import plot_convergence

        plot_convergence(report, args.plot)
    failures = [row for row in report.rows if row.failure is not None]
    for row in failures:
        print(f"row ({row.scheme}, dt={row.dt:.6e}, K={row.k_iters}) failed: "
              f"{row.failure}", file=sys.stderr)
    print(f"{scenario.name}: {len(report.rows)} rows vs reference "
          f"dt={reference_dt:.6e} -> {args.output}", file=sys.stderr)
    return 2 if failures else 0


def _cmd_compare(args: argparse.Namespace) -> int:
    for path in (args.csv_a, args.csv_b):
        if not Path(path).is_file():
            raise ValidationError(f"snapshot CSV not found: {path}")
    series_a = read_snapshot_csv(args.csv_a)
    series_b = read_snapshot_csv(args.csv_b)
    common = [t for t in series_a.times if t in set(series_b.times)]
    if not common:
        raise ValidationError("the two series share no snapshot times")
    try:
        lines = ["t,l1_error"]
        for t in common:
            lines.append(f"{t:.17g},{l1_error(series_a, series_b, t):.17g}")
    except GridMismatchError as err:
        raise ValidationError(str(err)) from None
    _emit("\n".join(lines) + "\n", args.output)
    print(f"compared {len(common)} common snapshot times", file=sys.stderr)
    return 0


def _cmd_scenarios(args: argparse.Namespace) -> int:
    for name in SCENARIO_NAMES:
        sc = scenario_catalog(name)
        print(f"{sc.name}: d12={sc.spec.d12} d13={sc.spec.d13} d23={sc.spec.d23} "
              f"init={sc.initial_profile} t_end={sc.t_end}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "converge": _cmd_converge,
    "compare": _cmd_compare,
    "scenarios": _cmd_scenarios,
    "report": _cmd_report,
}


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except MsdiffError as err:
        print(f"solver error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
