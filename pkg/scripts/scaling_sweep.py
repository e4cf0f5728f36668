"""Evolution time and peak memory against entity count for every supported cell.

Prints one CSV row per (config, entities). Each cell runs in a fresh process.

    python scripts/scaling_sweep.py --sizes 1e4 1e5 1e6 > sweep.csv
"""

import argparse
import sys

from casim.harness import BenchConfig, default_matrix, run_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=float, nargs="+", default=[1e4, 1e5, 1e6])
    parser.add_argument("--iterations", type=int, default=1)
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args()

    matrix = tuple(c for c in default_matrix() if c.supported)
    print("backend,typing,arity,entities,development_ms,evolution_ms,ns_per_entity_step,peak_memory_bytes,bytes_per_entity")
    for size in args.sizes:
        e = int(size)
        report = run_matrix(BenchConfig(entity_count=e, iterations=args.iterations,
                                        repetitions=args.reps, matrix=matrix))
        for cell in report.cells:
            if not cell.ok:
                print(f"# {cell.config.label} e={e}: {cell.error}", file=sys.stderr)
                continue
            c = cell.config
            per_step = cell.evolution_time / (e * args.iterations) * 1e9
            mem = cell.peak_memory if cell.peak_memory is not None else ""
            per_entity = f"{cell.peak_memory / e:.1f}" if cell.peak_memory is not None else ""
            print(f"{c.backend.value},{c.typing.value},{c.arity_label},{e},"
                  f"{cell.development_time * 1e3:.3f},{cell.evolution_time * 1e3:.3f},"
                  f"{per_step:.2f},{mem},{per_entity}", flush=True)


if __name__ == "__main__":
    main()
