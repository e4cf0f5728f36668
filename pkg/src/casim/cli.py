"""``casim`` command line: verify, run, bench."""

from __future__ import annotations

import argparse
import sys
import time

from casim.errors import CaptureTooLarge, InvalidConfig, IOFailure, Unsupported

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


def _arity(text: str):
    from casim.storage import StorageConfig

    try:
        return StorageConfig.parse_arity(text)
    except InvalidConfig as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rule(text: str) -> int:
    n = int(text)
    if not 0 <= n <= 255:
        raise argparse.ArgumentTypeError("rule must be in [0, 255]")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _non_negative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="casim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every supported variant against the golden rule-30 grid")
    v.add_argument("--rule", type=_rule, default=30)
    v.add_argument("--entities", type=_positive, default=31)
    v.add_argument("--boundary", choices=("zero", "periodic"), default="zero")

    r = sub.add_parser("run", help="run one configuration")
    r.add_argument("--entities", type=_positive, required=True)
    r.add_argument("--iterations", type=_non_negative, required=True)
    r.add_argument("--rule", type=_rule, default=30)
    r.add_argument("--backend", choices=("indirect", "contiguous"), default="contiguous")
    r.add_argument("--typing", choices=("static", "dynamic"), default="static")
    r.add_argument("--arity", type=_arity, default=None, help="single, multi or multi:k")
    r.add_argument("--boundary", choices=("zero", "periodic"), default="zero")
    seed = r.add_mutually_exclusive_group()
    seed.add_argument("--seed-index", type=_non_negative, dest="seed")
    seed.add_argument("--seed", choices=("center",), dest="seed")
    r.add_argument("--emit-grid", action="store_true", help="print every row instead of a summary")

    b = sub.add_parser("bench", help="time development, evolution and memory across the storage matrix")
    b.add_argument("--entities", type=_positive, default=10**6)
    b.add_argument("--iterations", type=_positive, default=1)
    b.add_argument("--reps", type=_positive, default=3)
    b.add_argument("--matrix", choices=("default", "all"), default="default")
    b.add_argument("--format", choices=("csv", "json", "md"), required=True)
    b.add_argument("--out", default=None)
    b.add_argument("--interval", type=float, default=0.05, help="memory sample interval in seconds")
    b.add_argument("--no-isolate", action="store_true", help="measure all cells in this process")
    return parser


def cmd_verify(args) -> int:
    from casim.harness.verify import verify_fixture

    result = verify_fixture(rule=args.rule, entity_count=args.entities, boundary=args.boundary)
    sys.stdout.write(result.variants[0].rendered)
    for v in result.variants:
        status = "PASS" if v.passed else "FAIL"
        print(f"{status} {v.config.label}")
        if not v.passed:
            print("  " + v.detail.replace("\n", "\n  "))
    print("verification " + ("passed" if result.passed else "failed"))
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_run(args) -> int:
    from casim.engine import render_trace, run_simulation
    from casim.metamodel import ModelConfig, actualise, concretise, define_virtual_model
    from casim.storage import StorageConfig

    seed = "center" if args.seed is None else args.seed
    try:
        storage = StorageConfig(args.backend, args.typing, args.arity)
        config = ModelConfig(entity_count=args.entities, rule_number=args.rule, seed_index=seed,
                             iterations=args.iterations, boundary=args.boundary, storage=storage)
    except InvalidConfig as exc:
        print(f"casim run: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not storage.supported:
        print(f"casim run: {storage.label} is not supported (dynamic typing needs the indirect backend)",
              file=sys.stderr)
        return EXIT_UNSUPPORTED
    model = concretise(define_virtual_model(), config)
    t0 = time.perf_counter()
    try:
        sim = actualise(model)
    except Unsupported as exc:
        print(f"casim run: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    t1 = time.perf_counter()
    try:
        out = run_simulation(sim, args.iterations, capture=args.emit_grid)
    except CaptureTooLarge as exc:
        print(f"casim run: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t2 = time.perf_counter()
    if args.emit_grid:
        sys.stdout.write(render_trace(out))
    else:
        print(f"config={storage.label} entities={out.entity_count} iterations={out.iterations} "
              f"rule={args.rule} population={out.population} "
              f"development_ms={(t1 - t0) * 1000:.3f} evolution_ms={(t2 - t1) * 1000:.3f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    from casim.harness.bench import MATRICES, BenchConfig, run_matrix
    from casim.harness.report import emit_report

    bench = BenchConfig(entity_count=args.entities, iterations=args.iterations, repetitions=args.reps,
                        matrix=MATRICES[args.matrix](), memory_sample_interval=args.interval,
                        isolate=not args.no_isolate)

    def progress(cell):
        if not cell.supported:
            state = "unsupported"
        elif cell.error:
            state = f"error: {cell.error}"
        else:
            state = f"dev {cell.development_time * 1000:.1f} ms, evo {cell.evolution_time * 1000:.1f} ms"
        print(f"[bench] {cell.config.label}: {state}", file=sys.stderr)

    report = run_matrix(bench, progress=progress)
    try:
        text = emit_report(report, args.format, args.out)
    except IOFailure as exc:
        print(f"casim bench: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "run": cmd_run, "bench": cmd_bench}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
