#!/usr/bin/env python3
"""Run the benchmark suites and write key=value reports.

Usage: run_benchmarks.py [tlp|circuits|hhl|all] [--out DIR] [--closed-loop]

The circuit suite measures median simulation time per (qubits, depth)
cell and the mu that calibration selects for it; --closed-loop also
times an actual solve at that mu, which can take minutes for the
largest cells.
"""

import argparse
from pathlib import Path

from pvqc import bench


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("suite", nargs="?", default="all",
                        choices=("tlp", "circuits", "hhl", "all"))
    parser.add_argument("--out", type=Path, default=None,
                        help="directory for report files (default: print only)")
    parser.add_argument("--closed-loop", action="store_true")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    suites = ("tlp", "circuits", "hhl") if args.suite == "all" else (args.suite,)
    for suite in suites:
        if suite == "tlp":
            rows = bench.bench_tlp()
        elif suite == "circuits":
            rows = bench.bench_circuits(seed=args.seed,
                                        closed_loop=args.closed_loop)
        else:
            rows = bench.bench_hhl(seed=args.seed)
        text = bench.report_to_text(rows)
        print(f"== {suite} ==")
        print(text, end="")
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"bench_{suite}.txt").write_text(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
