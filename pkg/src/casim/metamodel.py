"""System model and its virtual -> metastable -> actual lifecycle.

A model starts out virtual (nothing sized or bound), is concretised into a
metastable model with a fixed configuration, and is actualised into a
runnable :class:`Simulation` once entity storage has been materialised.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Literal

from casim.engine import RuleTable, set_initial_condition
from casim.errors import InvalidConfig
from casim.regime import Regime, require
from casim.storage import BoundaryMode, EntityStore, StorageConfig, build_store

BOOLEAN_STATES = frozenset({False, True})


@dataclass(frozen=True)
class MilieuSpec:
    topology: str = "nearest-neighbor line"
    boundary: BoundaryMode = BoundaryMode.ZERO


@dataclass(frozen=True)
class ModelConfig:
    entity_count: int = 31
    rule_number: int = 30
    seed_index: int | Literal["center"] = "center"
    iterations: int = 15
    boundary: BoundaryMode = BoundaryMode.ZERO
    storage: StorageConfig = field(default_factory=StorageConfig)

    def __post_init__(self):
        try:
            object.__setattr__(self, "boundary", BoundaryMode(self.boundary))
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from exc
        self.validate()

    def validate(self) -> None:
        e = self.entity_count
        if isinstance(e, bool) or not isinstance(e, int) or e < 1:
            raise InvalidConfig(f"entity_count must be an integer >= 1, got {e!r}")
        r = self.rule_number
        if isinstance(r, bool) or not isinstance(r, int) or not 0 <= r <= 255:
            raise InvalidConfig(f"rule_number must be in [0, 255], got {r!r}")
        if isinstance(self.iterations, bool) or not isinstance(self.iterations, int) or self.iterations < 0:
            raise InvalidConfig(f"iterations must be an integer >= 0, got {self.iterations!r}")
        s = self.seed_index
        if s != "center":
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < e:
                raise InvalidConfig(f"seed_index must be 'center' or in [0, {e}), got {s!r}")

    @property
    def resolved_seed(self) -> int:
        return self.entity_count // 2 if self.seed_index == "center" else self.seed_index


@dataclass(frozen=True)
class SystemModel:
    """Entity count, state set, milieu, update rules and adaptation slots.

    The adaptation rules, target and function are carried so the model is
    complete, but nothing in this package reads them.
    """

    regime: Regime = Regime.VIRTUAL
    entity_count: int | None = None
    state_domain: frozenset = BOOLEAN_STATES
    milieu_spec: MilieuSpec | None = None
    update_rules: int | None = None
    seed_index: int | None = None
    iterations: int | None = None
    storage: StorageConfig | None = None
    adaptation_rules: Any = None
    adaptation_target: Any = None
    adaptation_function: Any = None


@dataclass(eq=False)
class Simulation:
    model: SystemModel
    store: EntityStore
    rule: RuleTable
    boundary: BoundaryMode
    steps_run: int = 0

    @property
    def regime(self) -> Regime:
        return self.model.regime

    @property
    def state_vector(self) -> list[bool]:
        return self.store.state_vector()


def define_virtual_model() -> SystemModel:
    return SystemModel()


def concretise(model: SystemModel, config: ModelConfig) -> SystemModel:
    """Fix size, rule, seed, boundary and storage; allocates no entity memory."""
    if getattr(model, "regime", None) is not Regime.VIRTUAL:
        require(model, Regime.VIRTUAL, "concretise")
    config.validate()
    return dataclasses.replace(
        model,
        regime=Regime.METASTABLE,
        entity_count=config.entity_count,
        milieu_spec=MilieuSpec(boundary=config.boundary),
        update_rules=config.rule_number,
        seed_index=config.resolved_seed,
        iterations=config.iterations,
        storage=config.storage,
    )


def actualise(model: SystemModel) -> Simulation:
    """Build the store, generate milieus and apply the initial condition.

    This is the whole of what the benchmark harness times as development.
    """
    require(model, Regime.METASTABLE, "actualise")
    store = build_store(model.storage, model.entity_count)
    boundary = model.milieu_spec.boundary
    store.generate_milieu(boundary)
    set_initial_condition(store, model.seed_index)
    return Simulation(
        model=dataclasses.replace(model, regime=Regime.ACTUAL),
        store=store,
        rule=RuleTable.from_number(model.update_rules),
        boundary=boundary,
    )


def build_simulation(config: ModelConfig) -> Simulation:
    return actualise(concretise(define_virtual_model(), config))
