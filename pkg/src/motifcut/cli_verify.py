# src/motifcut/cli_verify.py

from __future__ import annotations
import argparse

from motifcut.analysis.verify import run_suite
from motifcut.config import EXIT_NUMERICAL, setup_logging

TAG = "motifcut-verify"


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Run the invariant suites against brute-force oracles."
    )
    parser.add_argument("--full", action="store_true",
                        help="Full instance counts instead of the quick CI sizes.")
    parser.add_argument("--seed", type=int, default=0, help="Base seed (default: 0).")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging.")
    args = parser.parse_args()
    setup_logging(args.verbose)

    print(f"[{TAG}] Running {'full' if args.full else 'quick'} suite (seed={args.seed})")
    results = run_suite(quick=not args.full, seed=args.seed)
    for r in results:
        status = "ok  " if r.passed else "FAIL"
        print(f"  {status} {r.name}: {r.detail} [{r.seconds:.1f} s]")

    failed = [r for r in results if not r.passed]
    if failed:
        print(f"[{TAG}] {len(failed)} of {len(results)} checks failed.")
        raise SystemExit(EXIT_NUMERICAL)
    print(f"[{TAG}] All {len(results)} checks passed.")
