"""Development/evolution timing and peak memory across a storage matrix."""

from __future__ import annotations

import gc
import multiprocessing
import os
import platform
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from casim.engine import evolve
from casim.errors import PlatformUnsupported, Unsupported
from casim.harness.memory import DEFAULT_INTERVAL, MemorySampler, sample_peak_memory
from casim.metamodel import ModelConfig, actualise, concretise, define_virtual_model
from casim.storage import Backend, BoundaryMode, StorageConfig, Typing

MEMORY_POLICY = "baseline-subtracted: max sampled RSS minus the RSS baseline taken before the first build"


def default_matrix() -> tuple[StorageConfig, ...]:
    """The 2 x 4 layout of the reference table: backend x {typing x arity}."""
    return tuple(
        StorageConfig(backend, typing, multi)
        for backend in (Backend.INDIRECT, Backend.CONTIGUOUS)
        for typing in (Typing.STATIC, Typing.DYNAMIC)
        for multi in (None, 1)
    )


def full_matrix() -> tuple[StorageConfig, ...]:
    return tuple(
        StorageConfig(backend, typing, multi)
        for backend in (Backend.INDIRECT, Backend.CONTIGUOUS)
        for typing in (Typing.STATIC, Typing.DYNAMIC)
        for multi in (None, 1, 2)
    )


MATRICES = {"default": default_matrix, "all": full_matrix}


@dataclass(frozen=True)
class Timing:
    samples: tuple[float, ...]

    @property
    def best(self) -> float:
        return min(self.samples)


@dataclass(frozen=True)
class BenchConfig:
    entity_count: int = 10**6
    iterations: int = 1
    repetitions: int = 3
    matrix: tuple[StorageConfig, ...] = field(default_factory=default_matrix)
    memory_sample_interval: float = DEFAULT_INTERVAL
    rule_number: int = 30
    boundary: BoundaryMode = BoundaryMode.ZERO
    isolate: bool = True

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not self.matrix:
            raise ValueError("matrix must not be empty")
        object.__setattr__(self, "matrix", tuple(dict.fromkeys(self.matrix)))
        object.__setattr__(self, "boundary", BoundaryMode(self.boundary))


@dataclass(frozen=True)
class CellResult:
    """One matrix cell. Spans are (start, end) monotonic-clock seconds."""

    config: StorageConfig
    supported: bool
    development_spans: tuple[tuple[float, float], ...] = ()
    evolution_spans: tuple[tuple[float, float], ...] = ()
    peak_memory: int | None = None
    memory_note: str | None = None
    error: str | None = None

    @property
    def development_samples(self) -> tuple[float, ...]:
        return tuple(end - start for start, end in self.development_spans)

    @property
    def evolution_samples(self) -> tuple[float, ...]:
        return tuple(end - start for start, end in self.evolution_spans)

    @property
    def development_time(self) -> float | None:
        return min(self.development_samples) if self.development_spans else None

    @property
    def evolution_time(self) -> float | None:
        return min(self.evolution_samples) if self.evolution_spans else None

    @property
    def ok(self) -> bool:
        return self.supported and self.error is None


@dataclass(frozen=True)
class BenchReport:
    cells: tuple[CellResult, ...]
    entity_count: int
    iterations: int
    repetitions: int
    rule_number: int = 30
    timestamp: str = ""
    host: dict = field(default_factory=dict)
    memory_policy: str = MEMORY_POLICY

    def cell(self, config: StorageConfig) -> CellResult:
        for c in self.cells:
            if c.config == config:
                return c
        raise KeyError(config.label)


def host_descriptor() -> dict:
    return {
        "node": platform.node(),
        "machine": platform.machine(),
        "system": platform.system(),
        "python": platform.python_version(),
        "cpus": os.cpu_count(),
    }


def _model_config(config: StorageConfig, e: int, rule: int, boundary) -> ModelConfig:
    return ModelConfig(entity_count=e, rule_number=rule, seed_index="center", iterations=0,
                       boundary=boundary, storage=config)


def _require_supported(config: StorageConfig) -> None:
    if not config.supported:
        raise Unsupported(f"{config.label} cannot be built")


def _warm_up() -> None:
    from casim.storage import _kernels

    _kernels.warm_up()


def measure_development(config: StorageConfig, e: int, repetitions: int = 1, *,
                        rule: int = 30, boundary=BoundaryMode.ZERO) -> Timing:
    """Wall-clock cost of :func:`actualise`, once per repetition."""
    _require_supported(config)
    _warm_up()
    model = concretise(define_virtual_model(), _model_config(config, e, rule, boundary))
    samples = []
    for _ in range(repetitions):
        gc.collect()
        start = time.perf_counter()
        sim = actualise(model)
        samples.append(time.perf_counter() - start)
        del sim
    return Timing(tuple(samples))


def measure_evolution(config: StorageConfig, e: int, iterations: int, repetitions: int = 1, *,
                      rule: int = 30, boundary=BoundaryMode.ZERO) -> Timing:
    """Wall-clock cost of ``iterations`` update steps on a freshly developed simulation."""
    _require_supported(config)
    _warm_up()
    model = concretise(define_virtual_model(), _model_config(config, e, rule, boundary))
    samples = []
    for _ in range(repetitions):
        sim = actualise(model)
        gc.collect()
        start = time.perf_counter()
        evolve(sim, iterations)
        samples.append(time.perf_counter() - start)
        del sim
    return Timing(tuple(samples))


def measure_cell(config: StorageConfig, bench: BenchConfig) -> CellResult:
    """Measure one cell in this process: every repetition develops, then evolves."""
    if not config.supported:
        return CellResult(config, supported=False)
    _warm_up()
    model = concretise(define_virtual_model(),
                       _model_config(config, bench.entity_count, bench.rule_number, bench.boundary))
    gc.collect()
    try:
        sampler = MemorySampler(bench.memory_sample_interval).start()
        note = None
    except PlatformUnsupported as exc:
        sampler, note = None, f"memory: unavailable ({exc})"
    dev, evo = [], []
    try:
        for _ in range(bench.repetitions):
            t0 = time.perf_counter()
            sim = actualise(model)
            t1 = time.perf_counter()
            dev.append((t0, t1))
            if sampler is not None:
                sample_peak_memory(sampler)
            t2 = time.perf_counter()
            evolve(sim, bench.iterations)
            t3 = time.perf_counter()
            evo.append((t2, t3))
            if sampler is not None:
                # short-lived stores die between background samples
                sample_peak_memory(sampler)
            del sim
            gc.collect()
    finally:
        peak = sampler.stop() if sampler is not None else None
    return CellResult(config, True, tuple(dev), tuple(evo), peak, note)


def _run_isolated(config: StorageConfig, bench: BenchConfig) -> CellResult:
    ctx = multiprocessing.get_context("spawn")
    with ProcessPoolExecutor(max_workers=1, mp_context=ctx) as pool:
        return pool.submit(measure_cell, config, bench).result()


def run_matrix(bench: BenchConfig, progress=None) -> BenchReport:
    """Measure every cell; unsupported cells are reported, failures recorded per cell.

    With ``bench.isolate`` each supported cell runs in a fresh interpreter so
    memory released by earlier cells cannot mask a later cell's growth.
    """
    cells = []
    for config in bench.matrix:
        if not config.supported:
            result = CellResult(config, supported=False)
        else:
            try:
                result = _run_isolated(config, bench) if bench.isolate else measure_cell(config, bench)
            except Exception as exc:
                result = CellResult(config, True, error=f"{type(exc).__name__}: {exc}")
        if progress is not None:
            progress(result)
        cells.append(result)
    return BenchReport(
        cells=tuple(cells),
        entity_count=bench.entity_count,
        iterations=bench.iterations,
        repetitions=bench.repetitions,
        rule_number=bench.rule_number,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        host=host_descriptor(),
    )
