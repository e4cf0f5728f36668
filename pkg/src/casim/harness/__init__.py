"""Benchmark and verification harness behind the ``casim`` CLI."""

from casim.harness.bench import (
    BenchConfig,
    BenchReport,
    CellResult,
    Timing,
    default_matrix,
    full_matrix,
    measure_cell,
    measure_development,
    measure_evolution,
    run_matrix,
)
from casim.harness.memory import MemorySampler, rss_bytes, sample_peak_memory
from casim.harness.report import CSV_HEADER, emit_report, parse_report
from casim.harness.verify import VerificationResult, verify_fixture

__all__ = [
    "CSV_HEADER",
    "BenchConfig",
    "BenchReport",
    "CellResult",
    "MemorySampler",
    "Timing",
    "VerificationResult",
    "default_matrix",
    "emit_report",
    "full_matrix",
    "measure_cell",
    "measure_development",
    "measure_evolution",
    "parse_report",
    "rss_bytes",
    "run_matrix",
    "sample_peak_memory",
    "verify_fixture",
]
