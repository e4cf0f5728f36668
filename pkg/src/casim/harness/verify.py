"""Byte-for-byte check of every supported variant against the golden rule-30 grid."""

from __future__ import annotations

from dataclasses import dataclass

from casim import fixtures
from casim.engine import render_trace, run_simulation
from casim.harness.bench import default_matrix
from casim.metamodel import ModelConfig, build_simulation
from casim.storage import BoundaryMode, StorageConfig


@dataclass(frozen=True)
class VariantResult:
    config: StorageConfig
    passed: bool
    rendered: str
    first_diff_row: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationResult:
    variants: tuple[VariantResult, ...]
    expected: str

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.variants)


def diff_grids(expected: str, actual: str) -> tuple[int | None, str]:
    """First differing row (0-based) and a one-line description, or ``(None, "")``."""
    exp, act = expected.splitlines(), actual.splitlines()
    for row, (e, a) in enumerate(zip(exp, act)):
        if e == a:
            continue
        if len(e) != len(a):
            return row, f"row {row}: length {len(a)} != expected {len(e)}"
        col = next(i for i, (x, y) in enumerate(zip(e, a)) if x != y)
        return row, f"row {row}, column {col}:\n  expected {e}\n  actual   {a}"
    if len(exp) != len(act):
        row = min(len(exp), len(act))
        return row, f"row count {len(act)} != expected {len(exp)}"
    if expected != actual:
        return len(exp), "trailing bytes differ"
    return None, ""


def verify_fixture(
    rule: int = fixtures.FIXTURE_RULE,
    entity_count: int = fixtures.FIXTURE_ENTITIES,
    seed_index: int | str = fixtures.FIXTURE_SEED,
    steps: int = fixtures.FIXTURE_STEPS,
    boundary: BoundaryMode = BoundaryMode.ZERO,
    configs: tuple[StorageConfig, ...] | None = None,
    expected: str = fixtures.RULE30_E31_GRID,
) -> VerificationResult:
    configs = tuple(c for c in (configs or default_matrix()) if c.supported)
    results = []
    for config in configs:
        sim = build_simulation(ModelConfig(
            entity_count=entity_count, rule_number=rule, seed_index=seed_index,
            iterations=steps, boundary=boundary, storage=config,
        ))
        rendered = render_trace(run_simulation(sim, steps, capture=True))
        row, detail = diff_grids(expected, rendered)
        results.append(VariantResult(config, row is None, rendered, row, detail))
    return VerificationResult(tuple(results), expected)
