"""Elementary cellular automaton update over any entity store."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from casim.errors import CaptureTooLarge, EmptyTrace, IndexOutOfRange, OutOfRange
from casim.regime import Regime, require
from casim.storage.base import BoundaryMode, EntityStore

MAX_CAPTURE_ENTITIES = 10**6


@dataclass(frozen=True)
class RuleTable:
    """Next state for each (left, center, right) neighborhood read as a 3-bit number."""

    outputs: tuple[bool, ...]

    def __post_init__(self):
        if len(self.outputs) != 8:
            raise ValueError(f"a rule table has 8 entries, got {len(self.outputs)}")
        object.__setattr__(self, "outputs", tuple(bool(o) for o in self.outputs))

    @classmethod
    def from_number(cls, n: int) -> "RuleTable":
        if isinstance(n, bool) or not isinstance(n, int) or not 0 <= n <= 255:
            raise OutOfRange(f"rule number must be an integer in [0, 255], got {n!r}")
        return cls(tuple(bool((n >> b) & 1) for b in range(8)))

    @property
    def number(self) -> int:
        return sum(1 << b for b, out in enumerate(self.outputs) if out)

    def __call__(self, left: bool, center: bool, right: bool) -> bool:
        return self.outputs[(left << 2) | (center << 1) | right]

    def as_mapping(self) -> dict[str, int]:
        """``{"111": 0, "110": 0, ...}`` in the conventional descending order."""
        return {format(b, "03b"): int(self.outputs[b]) for b in range(7, -1, -1)}


def rule_table_from_number(n: int) -> RuleTable:
    return RuleTable.from_number(n)


@dataclass(frozen=True)
class Trace:
    """Full state rows of a run; row 0 is the initial condition."""

    rows: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(bool(c) for c in row) for row in self.rows)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("trace rows must all have the same length")
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def final(self) -> tuple[bool, ...]:
        return self.rows[-1]


@dataclass(frozen=True)
class RunSummary:
    entity_count: int
    iterations: int
    population: int


def set_initial_condition(store: EntityStore, seed_index: int) -> None:
    """All slot-0 states false except ``seed_index``, committed on both planes."""
    if not 0 <= seed_index < store.entity_count:
        raise IndexOutOfRange(f"seed {seed_index} outside [0, {store.entity_count})")
    store.fill(False)
    store.stage_next(seed_index, 0, True)
    store.commit()


def apply_update_function(
    store: EntityStore,
    rule: RuleTable,
    boundary: BoundaryMode | str | None = None,
    order: Iterable[int] | None = None,
) -> None:
    """One two-phase update: stage every entity from committed states, then commit.

    With ``order`` the staging phase walks entities in that sequence through
    the generic store contract instead of the backend's bulk loop.
    """
    if not store.milieu_generated:
        raise RuntimeError("generate the milieu before updating")
    if boundary is not None and BoundaryMode(boundary) is not store.boundary:
        raise ValueError(f"store milieu was generated with {store.boundary.value} boundaries, not {boundary}")
    if order is None:
        store.step(rule.outputs)
        return
    outputs = rule.outputs
    for i in order:
        for slot in range(store.slots):
            left, right = store.neighbor_states(i, slot)
            center = store.read_state(i, slot)
            store.stage_next(i, slot, outputs[(left << 2) | (center << 1) | right])
    store.commit()


def evolve(sim, iterations: int) -> None:
    """Apply the update function ``iterations`` times; nothing else."""
    require(sim, Regime.ACTUAL, "evolve")
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    store, rule = sim.store, sim.rule
    for _ in range(iterations):
        apply_update_function(store, rule)
    sim.steps_run += iterations


def run_simulation(sim, iterations: int, capture: bool = False) -> Trace | RunSummary:
    require(sim, Regime.ACTUAL, "run_simulation")
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    store = sim.store
    if not capture:
        evolve(sim, iterations)
        return RunSummary(store.entity_count, iterations, store.population())
    if store.entity_count > MAX_CAPTURE_ENTITIES:
        raise CaptureTooLarge(
            f"capturing {store.entity_count} entities exceeds the {MAX_CAPTURE_ENTITIES} limit"
        )
    rows = [tuple(store.state_vector())]
    for _ in range(iterations):
        evolve(sim, 1)
        rows.append(tuple(store.state_vector()))
    return Trace(tuple(rows))


def render_trace(trace: Trace | Sequence[Sequence[bool]]) -> str:
    rows = trace.rows if isinstance(trace, Trace) else trace
    if not rows or any(len(row) == 0 for row in rows):
        raise EmptyTrace("nothing to render")
    return "".join("".join("1" if c else "0" for c in row) + "\n" for row in rows)


def parse_grid(text: str) -> Trace:
    """Inverse of :func:`render_trace`."""
    return Trace(tuple(tuple(ch == "1" for ch in line) for line in text.splitlines() if line))
