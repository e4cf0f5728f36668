"""Run the default storage matrix and write markdown, CSV and JSON reports.

    python scripts/reproduce_table.py --entities 1000000 --reps 3 --out results/
"""

import argparse
from pathlib import Path

from casim.harness import BenchConfig, emit_report, run_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--entities", type=int, default=10**6)
    parser.add_argument("--iterations", type=int, default=1)
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    report = run_matrix(
        BenchConfig(entity_count=args.entities, iterations=args.iterations, repetitions=args.reps),
        progress=lambda cell: print(f"  done {cell.config.label}", flush=True),
    )
    stem = f"matrix_e{args.entities}_t{args.iterations}"
    for fmt in ("md", "csv", "json"):
        emit_report(report, fmt, args.out / f"{stem}.{fmt}")
    print(emit_report(report, "md"))


if __name__ == "__main__":
    main()
