"""Command-line pipeline: CSV in, curve/filament geometry and a run report out.

Exit codes: 0 success, 1 validation failure, 2 IO/parse failure, 3 bad
arguments.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, andrews, bishop, gauss, ingest, spectral
from .export import RunReport, report_timestamp, write_curves_json, write_ply, write_report
from .validate import DEFAULT_SEED, run_suites

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_ARGS = 3


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; we reserve 2 for IO
        raise _ArgumentError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="filaments", description=__doc__)
    parser.add_argument("--version", action="version", version=f"filaments {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="CSV file, one data point per row")
    common.add_argument("--delimiter", default=",", help="field delimiter (default ,)")
    common.add_argument("--no-header", action="store_true", help="file has no header row")
    common.add_argument("--label-column", default=None, help="name or index of the label column")
    common.add_argument(
        "--standardize",
        choices=("none", "center", "zscore"),
        default="zscore",
        help="per-feature policy applied before embedding (default zscore)",
    )
    common.add_argument(
        "--constant-rows",
        choices=("error", "zero"),
        default="error",
        help="what zscore does with constant features (default error)",
    )
    common.add_argument(
        "--phases",
        choices=("quadratic", "none"),
        default="quadratic",
        help="per-frequency phase policy (default quadratic)",
    )
    common.add_argument("--samples", type=int, default=None, help="curve samples M (default max(1024, 4d+2))")
    common.add_argument("--output-dir", default=".", help="directory for output files")
    common.add_argument("--prefix", default=None, help="output filename prefix (default input stem)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads for per-point work")

    p_andrews = sub.add_parser("andrews", parents=[common], help="plane-curve embedding only")
    p_andrews.set_defaults(func=cmd_andrews)

    p_fil = sub.add_parser("filament", parents=[common], help="full pipeline through frame integration")
    p_fil.add_argument("--steps", type=int, default=None, help="integration steps (default = samples)")
    p_fil.set_defaults(func=cmd_filament)

    p_val = sub.add_parser("validate", help="run the invariant suites")
    p_val.add_argument("--suite", choices=("all", "andrews", "bishop", "gauss"), default="all")
    p_val.add_argument("--d-list", default=None, help="comma-separated dimensions for the gauss sweep")
    p_val.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_val.set_defaults(func=cmd_validate)
    return parser


def _load(args) -> ingest.Dataset:
    label_column = args.label_column
    if label_column is not None and label_column.lstrip("-").isdigit():
        label_column = int(label_column)
    ds = ingest.load_csv(
        args.input,
        delimiter=args.delimiter,
        has_header=not args.no_header,
        label_column=label_column,
    )
    return ingest.standardize(ds, policy=args.standardize, constant_row_policy=args.constant_rows)


def _prepare(args):
    """Shared front half of both pipelines; returns everything downstream needs."""
    ds = _load(args)
    d = ds.dim
    samples = args.samples if args.samples is not None else andrews.default_samples(d)
    if samples < 4 * d + 2:
        raise _ArgumentError(
            f"--samples {samples} is below the quadrature minimum 4d+2 = {4 * d + 2} for d={d}"
        )
    factors = spectral.svd(ds)
    amap = andrews.build_map(factors, phase_policy=args.phases)
    return ds, factors, amap, samples


def _metrics(ds, factors, amap, samples) -> dict:
    d = ds.dim
    grid = np.arange(samples) / samples
    s_max, s_min = andrews.time_slice_singular_values(amap, grid)
    gauss_report = gauss.verify_bound(d, 1024)
    mqv = andrews.mqv_of_map(amap, ds)
    return {
        "mqv": mqv,
        "mqv_closed_form": andrews.mqv_closed_form(factors.sigma),
        "gram_deviation": andrews.gram_deviation(amap, 4 * d + 2),
        "slice_singular_min": float(np.min(s_min)),
        "slice_singular_max": float(np.max(s_max)),
        "gauss_max_ratio": gauss_report.max_ratio,
    }


def _report(args, ds, factors, amap, samples, metrics, filament_diags) -> RunReport:
    return RunReport(
        dataset={
            "d": ds.dim,
            "n": ds.n_points,
            "standardization": ds.standardization.to_dict(),
        },
        map={
            "phase_policy": amap.phase_policy,
            "epsilon": andrews.slice_interval_epsilon(ds.dim),
            "tie_partition": [list(r) for r in factors.tie_partition],
        },
        metrics=metrics,
        filaments=filament_diags,
        config={k: v for k, v in sorted(vars(args).items()) if k != "func"},
        tool_version=__version__,
        timestamp=report_timestamp(),
    )


def _out_paths(args, *suffixes) -> list[Path]:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = args.prefix or Path(args.input).stem
    return [out_dir / f"{prefix}{suffix}" for suffix in suffixes]


def cmd_andrews(args) -> int:
    ds, factors, amap, samples = _prepare(args)
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        curves = list(
            pool.map(lambda x: andrews.evaluate_curve(amap, x, samples), ds.values.T)
        )
    metrics = _metrics(ds, factors, amap, samples)
    curves_path, report_path = _out_paths(args, "_curves.json", "_report.json")
    write_curves_json(curves, ds.labels, curves_path)
    write_report(_report(args, ds, factors, amap, samples, metrics, []), report_path)
    print(f"wrote {curves_path} ({ds.n_points} curves, d={ds.dim}, M={samples})")
    print(f"wrote {report_path}")
    return EXIT_OK


def cmd_filament(args) -> int:
    ds, factors, amap, samples = _prepare(args)
    steps = args.steps if args.steps is not None else samples
    if steps < 1:
        raise _ArgumentError("--steps must be positive")

    def one(x):
        return bishop.build_filament(andrews.CurveMap(amap, x), steps)

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        filaments = list(pool.map(one, ds.values.T))

    diags = []
    failed = False
    for fil in filaments:
        length = float(np.sum(np.linalg.norm(np.diff(fil.points, axis=0), axis=1)))
        total_sq = float(np.mean(fil.curvature**2))
        target = 2.0 * fil.source_norm**2
        defined = fil.torsion_defined
        diags.append(
            {
                "length": length,
                "total_square_curvature": total_sq,
                "two_norm_sq": target,
                "torsion_defined_fraction": float(np.mean(defined)),
            }
        )
        if abs(length - 1.0) > 1e-9 or (target > 0 and abs(total_sq - target) / target > 1e-6):
            failed = True

    metrics = _metrics(ds, factors, amap, samples)
    ply_path, curves_path, report_path = _out_paths(
        args, ".ply", "_curves.json", "_report.json"
    )
    write_ply(filaments, ds.labels, ply_path)
    write_curves_json(filaments, ds.labels, curves_path)
    write_report(_report(args, ds, factors, amap, samples, metrics, diags), report_path)
    print(f"wrote {ply_path} ({ds.n_points} filaments, {steps} steps each)")
    print(f"wrote {curves_path}")
    print(f"wrote {report_path}")
    if failed:
        print("filament invariants violated; see report", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_validate(args) -> int:
    d_list = None
    if args.d_list:
        try:
            d_list = tuple(int(tok) for tok in args.d_list.split(","))
        except ValueError:
            raise _ArgumentError(f"bad --d-list {args.d_list!r}") from None
    results = run_suites(args.suite, seed=args.seed, d_list=d_list)
    width = max(len(f"{r.suite}/{r.name}") for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.suite + '/' + r.name:<{width}}  {r.detail}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return EXIT_OK if n_fail == 0 else EXIT_VALIDATION


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (ingest.IngestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
