import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casim.engine import (
    RuleTable,
    Trace,
    apply_update_function,
    parse_grid,
    render_trace,
    rule_table_from_number,
    run_simulation,
    set_initial_condition,
)
from casim.errors import CaptureTooLarge, EmptyTrace, IndexOutOfRange, OutOfRange
from casim.fixtures import RULE30_E31_GRID
from casim.metamodel import ModelConfig, build_simulation
from casim.storage import BoundaryMode, StorageConfig, build_store, generate_milieu, state_vector

from conftest import SUPPORTED, load_row
from reference import reference_run, reference_step, rule30_closed_form

GRID_ROWS = [[c == "1" for c in line] for line in RULE30_E31_GRID.splitlines()]


def test_rule30_table():
    assert rule_table_from_number(30).as_mapping() == {
        "111": 0, "110": 0, "101": 0, "100": 1, "011": 1, "010": 1, "001": 1, "000": 0,
    }


def test_rule30_table_matches_closed_form():
    table = RuleTable.from_number(30)
    for l, c, r in itertools.product((0, 1), repeat=3):
        assert table(l, c, r) == bool(rule30_closed_form(l, c, r))


def test_rule30_table_maps_each_grid_row_to_the_next():
    # brute force: apply the table cell by cell to every golden row
    table = RuleTable.from_number(30)
    for row, nxt in zip(GRID_ROWS, GRID_ROWS[1:]):
        padded = [False] + row + [False]
        assert [table(padded[i - 1], padded[i], padded[i + 1]) for i in range(1, 32)] == nxt


def test_rule0_and_rule204():
    assert RuleTable.from_number(0).outputs == (False,) * 8
    identity = RuleTable.from_number(204)
    for l, c, r in itertools.product((False, True), repeat=3):
        assert identity(l, c, r) == c


@pytest.mark.parametrize("n", [-1, 256, 3.0, True])
def test_rule_out_of_range(n):
    with pytest.raises(OutOfRange):
        RuleTable.from_number(n)


def test_rule_round_trip_all():
    assert [RuleTable.from_number(n).number for n in range(256)] == list(range(256))


def test_golden_grid_has_sixteen_rows_of_31():
    assert len(GRID_ROWS) == 16
    assert {len(r) for r in GRID_ROWS} == {31}
    assert GRID_ROWS[0].index(True) == 15 and sum(GRID_ROWS[0]) == 1


@pytest.mark.parametrize("periodic", [False, True])
def test_reference_reproduces_golden_grid(periodic):
    assert reference_run(30, 31, 15, 15, periodic) == GRID_ROWS


def test_edge_cell_of_last_row_under_zero_virtual():
    final = reference_run(30, 31, 15, 15, periodic=False)[-1]
    assert final[0] is True and GRID_ROWS[-1][0] is True
    # the two boundary modes first diverge one step later
    assert reference_step(final, 30, False) != reference_step(final, 30, True)


@pytest.mark.parametrize("config", SUPPORTED, ids=lambda c: c.label)
@pytest.mark.parametrize("boundary", list(BoundaryMode))
def test_run_reproduces_golden_grid(config, boundary):
    sim = build_simulation(ModelConfig(entity_count=31, rule_number=30, seed_index=15,
                                       boundary=boundary, storage=config))
    trace = run_simulation(sim, 15, capture=True)
    assert len(trace) == 16
    assert render_trace(trace) == RULE30_E31_GRID


def test_first_step():
    for config in SUPPORTED:
        sim = build_simulation(ModelConfig(entity_count=31, storage=config))
        run_simulation(sim, 1)
        vec = sim.state_vector
        assert [i for i, v in enumerate(vec) if v] == [14, 15, 16]


def test_zero_iterations_capture():
    sim = build_simulation(ModelConfig(entity_count=9))
    trace = run_simulation(sim, 0, capture=True)
    assert trace.rows == (tuple(i == 4 for i in range(9)),)


def test_summary_population():
    sim = build_simulation(ModelConfig(entity_count=31))
    summary = run_simulation(sim, 15)
    assert (summary.entity_count, summary.iterations) == (31, 15)
    assert summary.population == sum(GRID_ROWS[-1])


@pytest.mark.parametrize("backend", ["indirect", "contiguous"])
def test_e257_100_steps_backends_agree(backend):
    expected = reference_run(30, 257, 128, 100)[-1]
    sim = build_simulation(ModelConfig(entity_count=257, storage=StorageConfig(backend, "static", None)))
    run_simulation(sim, 100)
    assert sim.state_vector == expected


def test_capture_too_large():
    sim = build_simulation(ModelConfig(entity_count=10**6 + 1))
    with pytest.raises(CaptureTooLarge):
        run_simulation(sim, 1, capture=True)
    assert run_simulation(sim, 1).entity_count == 10**6 + 1


def test_initial_condition():
    store = build_store(StorageConfig(), 1)
    generate_milieu(store, "zero")
    set_initial_condition(store, 0)
    assert state_vector(store) == [True]
    with pytest.raises(IndexOutOfRange):
        set_initial_condition(store, 1)


def test_initial_condition_at_billion_entity_center():
    e = 10**9
    assert ModelConfig(entity_count=e).resolved_seed == 500_000_000


def test_initial_condition_clears_previous_state():
    store = build_store(StorageConfig("indirect", "dynamic", 1), 5)
    generate_milieu(store, "zero")
    load_row(store, [True] * 5)
    set_initial_condition(store, 2)
    assert state_vector(store) == [False, False, True, False, False]
    store.commit()
    assert state_vector(store) == [False, False, True, False, False]


def test_update_requires_milieu():
    store = build_store(StorageConfig(), 5)
    with pytest.raises(RuntimeError):
        apply_update_function(store, RuleTable.from_number(30))


def test_update_boundary_mismatch():
    store = build_store(StorageConfig(), 5)
    generate_milieu(store, "periodic")
    with pytest.raises(ValueError):
        apply_update_function(store, RuleTable.from_number(30), "zero")


def test_render():
    assert render_trace(Trace(((False, True, False),))) == "010\n"
    assert render_trace([[True], [False]]) == "1\n0\n"
    with pytest.raises(EmptyTrace):
        render_trace(Trace(()))
    with pytest.raises(EmptyTrace):
        render_trace([[]])
    assert parse_grid(RULE30_E31_GRID).rows == tuple(tuple(r) for r in GRID_ROWS)


def test_trace_rows_must_match():
    with pytest.raises(ValueError):
        Trace(((True,), (True, False)))


@pytest.mark.parametrize("config", SUPPORTED, ids=lambda c: c.label)
def test_determinism(config):
    cfg = ModelConfig(entity_count=101, rule_number=110, seed_index=50, storage=config)
    a = run_simulation(build_simulation(cfg), 40, capture=True)
    b = run_simulation(build_simulation(cfg), 40, capture=True)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(rule=st.integers(0, 255).filter(lambda r: not r & 1), t=st.integers(0, 40))
def test_light_cone(rule, t):
    # rules with 000 -> 0 keep quiescent background; e large enough to avoid edges
    e, seed = 101, 50
    sim = build_simulation(ModelConfig(entity_count=e, rule_number=rule, seed_index=seed))
    trace = run_simulation(sim, t, capture=True)
    for step, row in enumerate(trace.rows):
        on = [i for i, v in enumerate(row) if v]
        assert all(seed - step <= i <= seed + step for i in on)


@settings(max_examples=20, deadline=None)
@given(e=st.integers(1, 300), seed=st.integers(0, 2**32 - 1), boundary=st.sampled_from(list(BoundaryMode)))
def test_trivial_rules_on_random_rows(e, seed, boundary):
    rng = random.Random(seed)
    row = [rng.random() < 0.5 for _ in range(e)]
    for config in SUPPORTED:
        for rule, expected in ((0, [False] * e), (255, [True] * e), (204, row)):
            store = build_store(config, e)
            generate_milieu(store, boundary)
            load_row(store, row)
            apply_update_function(store, RuleTable.from_number(rule))
            assert state_vector(store) == expected
