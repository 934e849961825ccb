# offload_energy/cli.py
"""
Command-line entry point.

    offload-energy run --plan plan.yaml --seed 0 --out results/
    offload-energy ingest --traces traces/ --markers markers.log --out measured/
    offload-energy plotdata --results results/results.csv --figure rpi-energy
    offload-energy catalog --default --out catalog.yaml
    offload-energy calibrate --inputs measurements/ --out calibrated.yaml

Exit codes: 0 success, 1 invalid input, 2 matrix finished with failed cells.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .calibrate.pipeline import calibrate_from_dir, calibrate_reference_defaults, write_calibration_report
from .errors import OffloadEnergyError, PlanValidationError
from .models.plan import default_catalog, dump_plan, load_plan, save_plan
from .measure.export import export_traces, is_experiment_dir, read_experiment
from .measure.segment import segment_phases
from .report.aggregate import aggregate_report, format_report
from .report.plotdata import FIGURES, plot_table, write_covered_plots
from .report.rows import make_row, read_results_csv, rows_from_results, with_savings, write_results_csv
from .simulate.engine import run_matrix
from .storage.writer import RunArchive
from .utils.log import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARTIAL = 2


def _csv_list(text: str | None, cast=str):
    if not text:
        return None
    return [cast(x.strip()) for x in text.split(",") if x.strip()]


def _write_report(rows, out: Path, notes=()) -> Path:
    path = out / "report.txt"
    path.write_text(format_report(aggregate_report(rows), notes), encoding="utf-8", newline="\n")
    return path


# --- commands -------------------------------------------------------------

def cmd_run(args) -> int:
    catalog = load_plan(args.plan) if args.plan else default_catalog()
    plan = catalog.restrict(_csv_list(args.scenarios, int), _csv_list(args.platforms), _csv_list(args.workloads))
    need_traces = bool(args.traces or args.archive)
    matrix = run_matrix(plan, seed=args.seed, traces=need_traces, workers=args.workers)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = rows_from_results(matrix.results)
    notes = []
    if matrix.failures:
        notes.append(f"PARTIAL RESULTS: {len(matrix.failures)} cell(s) failed")
        notes += [f"S{f.scenario_id} {f.platform}/{f.workload}: {f.message}" for f in matrix.failures]

    write_results_csv(rows, out / "results.csv")
    if rows:
        _write_report(rows, out, notes)
        write_covered_plots(rows, out)
    if args.traces:
        for res in matrix.results:
            export_traces(res, out / "traces" / f"S{res.scenario.id}_{res.platform}_{res.workload}")
    if args.archive:
        run_id = RunArchive(args.archive).archive(matrix.results, rows, args.seed, dump_plan(plan),
                                                  n_failed=len(matrix.failures))
        logger.info("archived run %d in %s", run_id, args.archive)

    print(f"{len(rows)} cells written to {out}")
    if matrix.failures:
        print(f"{len(matrix.failures)} cell(s) failed; see {out / 'report.txt'}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def _experiment_dirs(root: Path) -> list[Path]:
    if is_experiment_dir(root):
        return [root]
    return sorted(p for p in root.iterdir() if p.is_dir() and is_experiment_dir(p))


def cmd_ingest(args) -> int:
    root = Path(args.traces)
    if not root.is_dir():
        raise FileNotFoundError(f"trace directory not found: {root}")
    dirs = _experiment_dirs(root)
    if not dirs:
        raise FileNotFoundError(f"no traces in {root}")
    if args.markers and len(dirs) > 1:
        raise ValueError("--markers applies to a single experiment directory")

    rows = []
    for d in dirs:
        exp = read_experiment(d, args.markers)
        phases = segment_phases(exp.series, exp.markers)
        m = exp.meta
        client = str(m.get("client", "unknown"))
        rows.append(make_row(int(m.get("scenario_id", 0)), client, str(m.get("server", client)),
                             str(m.get("platform", "unknown")), str(m.get("workload", "unknown")),
                             phases, float(m.get("ram_power_share", 0.0)), source="measured"))
    rows = with_savings(rows)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_results_csv(rows, out / "results.csv")
    _write_report(rows, out)
    print(f"{len(rows)} measured cells written to {out}")
    return EXIT_OK


def cmd_plotdata(args) -> int:
    rows = read_results_csv(args.results)
    df = plot_table(rows, args.figure)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(args.out, index=False, lineterminator="\n")
    else:
        sys.stdout.write(df.to_csv(index=False, lineterminator="\n"))
    return EXIT_OK


def cmd_catalog(args) -> int:
    catalog = default_catalog() if args.default or not args.plan else load_plan(args.plan)
    save_plan(catalog, args.out)
    print(f"catalog written to {args.out}")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    base = load_plan(args.plan) if args.plan else None
    result = calibrate_from_dir(args.inputs, base) if args.inputs else calibrate_reference_defaults(base)
    out = Path(args.out)
    save_plan(result.catalog, out)
    report = write_calibration_report(result, out.with_name("calibration_report.csv"))
    print(f"calibrated catalog written to {out}; {len(result.records)} parameters in {report}")
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="offload-energy",
                                     description="Energy-aware edge-cloud offloading simulator and trace harness.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--loglevel", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Log level (default: WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Run a scenario x platform x workload matrix")
    p.add_argument("--plan", help="YAML plan (default: built-in calibrated catalog)")
    p.add_argument("--seed", type=int, default=0, help="Trace seed (default: 0)")
    p.add_argument("--out", required=True, help="Output directory")
    p.add_argument("--scenarios", help="Comma-separated scenario ids")
    p.add_argument("--platforms", help="Comma-separated platform names")
    p.add_argument("--workloads", help="Comma-separated workload names")
    p.add_argument("--workers", type=int, default=None, help="Worker threads for matrix cells")
    p.add_argument("--traces", action="store_true", help="Export per-cell traces in the canonical formats")
    p.add_argument("--archive", help="SQLite database to archive the run in")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("ingest", help="Build report rows from measured traces")
    p.add_argument("--traces", required=True, help="Experiment directory, or a directory of them")
    p.add_argument("--markers", help="Phase-marker log (default: <experiment>/markers.log)")
    p.add_argument("--out", required=True, help="Output directory")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("plotdata", help="Tidy CSV for one figure")
    p.add_argument("--results", required=True, help="results.csv from run or ingest")
    p.add_argument("--figure", required=True, help=f"Figure id: {', '.join(FIGURES)}")
    p.add_argument("--out", help="Output CSV (default: stdout)")
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("catalog", help="Write a catalog as YAML")
    p.add_argument("--default", action="store_true", help="The built-in calibrated catalog")
    p.add_argument("--plan", help="Validate and normalize this plan instead")
    p.add_argument("--out", required=True, help="Output YAML")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("calibrate", help="Fit catalog parameters")
    p.add_argument("--inputs", help="Directory of measurements (default: published inputs)")
    p.add_argument("--plan", help="Catalog to start from (default: built-in)")
    p.add_argument("--out", required=True, help="Output catalog YAML")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.loglevel)
    try:
        return args.func(args)
    except PlanValidationError as exc:
        print("invalid plan:", file=sys.stderr)
        for e in exc.errors:
            print(f"  {e}", file=sys.stderr)
        return EXIT_INPUT
    except (OffloadEnergyError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
