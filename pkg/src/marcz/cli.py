"""Command-line front end: simulate, analyze, estimate, table-predict, verify."""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .errors import MarczError
from .ingest import load_prices, log_returns, select_window
from .innovations import spec_from_config
from .kernel import CoefficientSpec
from .linproc import (ProcessConfig, ensemble_to_binary, ensemble_to_tsv,
                      simulate_paths)
from .rates import estimate_parameters, predict_table
from .statistic import (DEFAULT_EXPONENTS, DEFAULT_S_LIST, RunningMeanConfig,
                        convergence_verdict, marcinkiewicz_trace, tables_from_tsv,
                        VerdictTable, _scaled_cfg_offsets)
from .verify import kernel_suite, mslln_suite, tensor_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_VERIFY = 4


def _write_manifest(out_dir, command, args, seeds):
    manifest = {
        "tool": "marcz",
        "version": __version__,
        "command": command,
        "args": {k: v for k, v in vars(args).items() if k != "func"},
        "seeds": seeds,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)


def _parse_float_list(text):
    return tuple(float(v) for v in text.split(","))


def _parse_int_list(text):
    return tuple(int(v) for v in text.split(","))


def _load_process_config(path):
    with open(path) as fh:
        raw = json.load(fh)
    s = int(raw.get("s", 1))
    sigmas = raw.get("sigmas") or [raw["sigma"]] * s
    window = int(raw.get("window", 2 ** 14))
    coeffs = tuple(
        CoefficientSpec(sigma=float(sg), scale=float(raw.get("scale", 1.0)),
                        center_value=float(raw.get("center_value", 1.0)),
                        window=window)
        for sg in sigmas)
    return ProcessConfig(
        s=s, coeffs=coeffs, innov=spec_from_config(raw["innovation"]),
        sharing=raw.get("sharing", "shared"), length=int(raw["n"]),
        window=window)


def cmd_simulate(args):
    config = _load_process_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    ens = simulate_paths(config, args.seed)
    ensemble_to_tsv(ens, os.path.join(args.out, "ensemble.tsv"))
    ensemble_to_binary(ens, os.path.join(args.out, "ensemble.bin"),
                       os.path.join(args.out, "ensemble.json"))
    _write_manifest(args.out, "simulate", args, [args.seed])
    return EXIT_OK


def _analysis_input(args):
    if args.returns_csv:
        values = np.loadtxt(args.returns_csv, skiprows=1, delimiter=",", ndmin=1)
        label = args.label or os.path.basename(args.returns_csv)
        return values, label
    series = load_prices(args.input, column_name=args.column, label=args.label)
    returns = log_returns(series)
    if not args.full_series:
        returns = select_window(returns)
    return returns, series.label


def cmd_analyze(args):
    values, label = _analysis_input(args)
    os.makedirs(args.out, exist_ok=True)
    cfg = RunningMeanConfig(epsilon=args.epsilon, rho=args.rho, start=args.start)
    run_cfg, offsets = _scaled_cfg_offsets(cfg, (1000, 1500), values.size,
                                           args.proportional)
    cells = [(s, e) for s in args.s_list for e in args.exponents]

    def one_cell(cell):
        s, e = cell
        tr = marcinkiewicz_trace(values, s, e, run_cfg)
        return cell, tr, convergence_verdict(tr, run_cfg, offsets)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(one_cell, cells))
    else:
        results = [one_cell(c) for c in cells]
    table = VerdictTable(label=label, s_list=tuple(args.s_list),
                         exponent_list=tuple(args.exponents))
    for cell, tr, verdict in sorted(results, key=lambda r: cells.index(r[0])):
        table.cells[cell] = verdict
        s, e = cell
        tr.to_csv(os.path.join(args.out, f"trace_s{s}_e{e:g}.csv"))
    table.to_tsv(os.path.join(args.out, "verdicts.tsv"))
    with open(os.path.join(args.out, "verdicts.json"), "w") as fh:
        fh.write(table.to_json())
    _write_manifest(args.out, "analyze", args, [])
    sys.stdout.write(table.to_tsv())
    return EXIT_OK


def cmd_estimate(args):
    if args.table:
        tables = tables_from_tsv(args.table)
    else:
        series = load_prices(args.input, column_name=args.column, label=args.label)
        values = select_window(log_returns(series))
        from .statistic import verdict_table
        tables = [verdict_table(values, label=series.label)]
    out = {}
    for table in tables:
        est = estimate_parameters(table)
        out[table.label] = json.loads(est.to_json())
    text = json.dumps(out, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_table_predict(args):
    alpha1 = math.inf if args.alpha1.lower() in ("inf", "infinity") else float(args.alpha1)
    table = predict_table(args.sigma, alpha1, s_list=args.s_list,
                          exponent_list=args.exponents,
                          label=f"predicted_s{args.sigma:g}_a{args.alpha1}")
    if args.out:
        table.to_tsv(args.out)
    sys.stdout.write(table.to_tsv())
    return EXIT_OK


def cmd_verify(args):
    if args.suite == "kernel":
        result = kernel_suite(radius=args.radius)
    elif args.suite == "mslln":
        result = mslln_suite(seed=args.seed, reps=args.reps, n=args.length)
    else:
        result = tensor_suite(seed=args.seed)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        result.to_tsv(os.path.join(args.out, f"{args.suite}_checks.tsv"))
        for name, report in result.reports.items():
            report.to_tsv(os.path.join(args.out, f"{args.suite}_{name}.tsv"))
        _write_manifest(args.out, "verify", args, [getattr(args, "seed", 0)])
    for r in result.rows:
        sys.stdout.write(f"{'pass' if r.passed else 'FAIL'}\t{r.name}\t"
                         f"{r.value:.6g} {r.comparison} {r.limit:.6g}\n")
    return EXIT_OK if result.passed else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="marcz",
        description="Long-range dependence and heavy-tail diagnostics via "
                    "Marcinkiewicz normalized partial sums.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a linear-process ensemble")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="verdict table for a price CSV or returns file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="Yahoo-format price CSV")
    src.add_argument("--returns-csv", help="one-column CSV of returns")
    p.add_argument("--column", default="Adj Close")
    p.add_argument("--label")
    p.add_argument("--full-series", action="store_true",
                   help="skip the fixed 2601-point window selection")
    p.add_argument("--s-list", type=_parse_int_list, default=DEFAULT_S_LIST)
    p.add_argument("--exponents", type=_parse_float_list, default=DEFAULT_EXPONENTS)
    p.add_argument("--epsilon", type=float, default=0.005)
    p.add_argument("--rho", type=float, default=0.005)
    p.add_argument("--start", type=int, default=601)
    p.add_argument("--proportional", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("estimate", help="invert a verdict table into (sigma, alpha_1)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--table", help="verdict table TSV")
    src.add_argument("--input", help="price CSV (analyze then estimate)")
    p.add_argument("--column", default="Adj Close")
    p.add_argument("--label")
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table-predict", help="forward-model a verdict table")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--alpha1", default="inf")
    p.add_argument("--s-list", type=_parse_int_list, default=DEFAULT_S_LIST)
    p.add_argument("--exponents", type=_parse_float_list, default=DEFAULT_EXPONENTS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table_predict)

    p = sub.add_parser("verify", help="run a numeric verification suite")
    p.add_argument("--suite", choices=("kernel", "mslln", "tensor"), required=True)
    p.add_argument("--radius", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--reps", type=int, default=32)
    p.add_argument("--length", type=int, default=2 ** 16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MarczError, OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
