# src/motifcut/cli_run.py

from __future__ import annotations
import argparse
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Tuple
import sys

from motifcut.analysis.cut_error import check_cut_mode, max_cut_error, parse_cut_mode, utility_bound
from motifcut.config import (
    EXIT_CONFIG,
    EXIT_INPUT,
    EXIT_NUMERICAL,
    RunConfig,
    fail,
    parse_seeds,
    setup_logging,
    worker_count,
)
from motifcut.errors import GraphFormatError, MechanismError
from motifcut.graph.io import parse_graph, write_graph
from motifcut.graph.motif import local_sensitivity_l3
from motifcut.graph.weighted import WeightedGraph
from motifcut.mechanism.report import MechanismReport, emit_report, write_summary_csv
from motifcut.mechanism.run import run_mechanism
from motifcut.privacy.noise import NoiseStream

TAG = "motifcut-run"


def _run_seed(task: Tuple[WeightedGraph, RunConfig, int]) -> Tuple[int, Dict[str, Any], str]:
    """Worker body; returns (seed, report dict, error message or '')."""
    g, config, seed = task
    try:
        out, report = run_mechanism(
            g, config.epsilon, config.delta, config.beta, NoiseStream(seed),
            config.tuning_constants(), config=config.to_dict(),
        )
    except MechanismError as exc:
        return seed, exc.partial_report.to_dict(), str(exc)
    bound = utility_bound(
        g.total_weight,
        local_sensitivity_l3(g),
        g.n,
        g.max_weight,
        config.epsilon,
        config.delta,
        config.beta,
    )
    report.metrics = {"utility_bound": bound}
    if config.cut_mode != "none":
        result = max_cut_error(g, out, mode=config.cut_mode, seed=seed)
        report.metrics.update(
            max_cut_error=result.max_error,
            argmax_cut=sorted(result.argmax_cut.S),
            cut_mode=result.mode,
            evaluated_cuts=result.evaluated_cuts,
        )
        if bound > 0.0:
            report.metrics["error_to_bound"] = result.max_error / bound
    return seed, report.to_dict(), ""


def main() -> None:
    parser = argparse.ArgumentParser(
        description=(
            "Release private synthetic graphs preserving triangle-motif cuts, "
            "one seed_* folder per seed plus a summary.csv."
        )
    )
    parser.add_argument("input", help="Input graph file ('n=<int>' header, then 'i,j,weight' lines).")
    parser.add_argument("--eps", type=float, required=True, help="Privacy budget epsilon.")
    parser.add_argument("--delta", type=float, default=1e-6, help="Privacy parameter delta (default: 1e-6).")
    parser.add_argument("--beta", type=float, default=0.25, help="Failure probability beta (default: 0.25).")
    parser.add_argument("--seed", type=int, default=None, help="Single random seed.")
    parser.add_argument("--seeds", default=None, help="Seed range or list (e.g. '1..20' or '3,5,7').")
    parser.add_argument("--outdir", default="runs", help="Base output directory (default: 'runs').")
    parser.add_argument("--ct", type=float, default=1.0, help="Constant in the iteration count T.")
    parser.add_argument("--clambda", type=float, default=1.0, help="Constant in the log-det weight lambda.")
    parser.add_argument("--ceta", type=float, default=1.0, help="Constant in the step length eta.")
    parser.add_argument("--cdegw", type=float, default=1.0, help="Constant in the total-weight fallback test.")
    parser.add_argument("--cdegl3", type=float, default=1.0, help="Constant in the sensitivity fallback test.")
    parser.add_argument(
        "--cut-mode",
        default="exhaustive",
        help="Cut error evaluation: 'exhaustive', 'sampled:<k>' or 'none' (default: exhaustive).",
    )
    parser.add_argument("--format", choices=["json", "csv"], default="json",
                        help="Per-seed report format (default: json).")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging.")
    args = parser.parse_args()
    setup_logging(args.verbose)

    try:
        if args.seeds is not None and args.seed is not None:
            raise ValueError("Use either --seed or --seeds, not both.")
        seeds = parse_seeds(args.seeds) if args.seeds is not None else [args.seed if args.seed is not None else 0]
        if args.cut_mode != "none":
            parse_cut_mode(args.cut_mode)
        config = RunConfig(
            subcommand="run",
            input=args.input,
            output=args.outdir,
            epsilon=args.eps,
            delta=args.delta,
            beta=args.beta,
            seed=seeds[0],
            seeds=seeds,
            constants={
                "c_T": args.ct,
                "c_lambda": args.clambda,
                "c_eta": args.ceta,
                "c_degW": args.cdegw,
                "c_degL3": args.cdegl3,
            },
            cut_mode=args.cut_mode,
            fmt=args.format,
        )
        workers = worker_count(len(seeds))
    except ValueError as exc:
        fail(TAG, str(exc), EXIT_CONFIG)

    try:
        g = parse_graph(args.input)
    except (GraphFormatError, OSError) as exc:
        fail(TAG, f"{args.input}: {exc}", EXIT_INPUT)
    if args.cut_mode != "none":
        try:
            check_cut_mode(args.cut_mode, g.n)
        except ValueError as exc:
            fail(TAG, f"--cut-mode {args.cut_mode}: {exc}", EXIT_CONFIG)

    base_out = Path(args.outdir)
    base_out.mkdir(parents=True, exist_ok=True)
    print(f"[{TAG}] Input {args.input!r}: n={g.n}, total weight {g.total_weight:.6g}")
    print(f"[{TAG}] {len(seeds)} seed(s), {workers} worker(s)")

    tasks = [(g, config, seed) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_seed, tasks))
    else:
        results = [_run_seed(task) for task in tasks]

    reports: List[MechanismReport] = []
    failures = 0
    for seed, data, error in results:
        report = MechanismReport.from_dict(data)
        reports.append(report)
        seed_dir = base_out / f"seed_{seed}"
        seed_dir.mkdir(parents=True, exist_ok=True)
        report_path = seed_dir / f"report.{args.format}"
        emit_report(report, report_path, fmt=args.format)
        if error:
            failures += 1
            print(f"[{TAG}] seed {seed}: {error}", file=sys.stderr)
            continue
        write_graph(report.output_graph(), seed_dir / "released.txt")
        line = f"  - seed {seed}: released W={report.output_total_weight:.6g}"
        if report.degenerate:
            line += " (degenerate input, empty graph)"
        if "max_cut_error" in report.metrics:
            line += f", max cut error {report.metrics['max_cut_error']:.6g}"
            line += f" (bound {report.metrics['utility_bound']:.3g})"
        print(line)

    write_summary_csv(reports, base_out / "summary.csv")
    print(f"[{TAG}] Done. Summary written to {str(base_out / 'summary.csv')!r}")
    if failures:
        raise SystemExit(EXIT_NUMERICAL)
