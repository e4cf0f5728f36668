"""Record-per-entity store: a list of separately allocated entity objects.

Each record holds its own ``state``, ``next_state`` and a ``milieu`` list of
references to neighboring records. Nothing is flattened; every state access
goes through the record.
"""

from __future__ import annotations

from typing import Sequence

from casim.errors import AlreadyGenerated
from casim.storage.base import VIRTUAL, BoundaryMode, EntityStore, StorageConfig, Typing
from casim.storage.dynamic import DynamicValue


class EntityRecord:
    __slots__ = ("index", "state", "next_state", "milieu")

    def __init__(self, index, state, next_state):
        self.index = index
        self.state = state
        self.next_state = next_state
        self.milieu = []

    def __repr__(self) -> str:
        return f"EntityRecord({self.index!r}, state={self.state!r})"


def _blank(config: StorageConfig):
    """A fresh all-false state in the representation ``config`` asks for."""
    dynamic = config.typing is Typing.DYNAMIC
    if config.multi is None:
        return DynamicValue(False) if dynamic else False
    if dynamic:
        return [DynamicValue(False) for _ in range(config.multi)]
    return [False] * config.multi


class IndirectRecordStore(EntityStore):
    def __init__(self, config: StorageConfig, entity_count: int):
        self.config = config
        self.entity_count = entity_count
        self.boundary = None
        self._dynamic = config.typing is Typing.DYNAMIC
        self._multi = config.multi is not None
        records = []
        for i in range(entity_count):
            records.append(EntityRecord(i, _blank(config), _blank(config)))
        self.records = records
        # stands in for neighbors outside the system; never staged or committed
        self.virtual = EntityRecord(VIRTUAL, _blank(config), _blank(config))

    def generate_milieu(self, boundary: BoundaryMode) -> None:
        if self.boundary is not None:
            raise AlreadyGenerated("milieu already generated")
        boundary = BoundaryMode(boundary)
        recs = self.records
        n = self.entity_count
        for i in range(1, n - 1):
            recs[i].milieu = [recs[i - 1], recs[i + 1]]
        if boundary is BoundaryMode.PERIODIC:
            recs[0].milieu = [recs[n - 1], recs[1 % n]]
            if n > 1:
                recs[n - 1].milieu = [recs[n - 2], recs[0]]
        else:
            right = recs[1] if n > 1 else self.virtual
            recs[0].milieu = [self.virtual, right]
            if n > 1:
                recs[n - 1].milieu = [recs[n - 2], self.virtual]
        self.boundary = boundary

    def milieu(self, i: int) -> tuple:
        self._check(i, 0)
        return tuple(rec.index for rec in self.records[i].milieu)

    def _get(self, value, slot: int) -> bool:
        if self._multi:
            value = value[slot]
        return value.truth() if self._dynamic else value

    def neighbor_states(self, i: int, slot: int = 0) -> tuple[bool, ...]:
        self._check(i, slot)
        return tuple(self._get(rec.state, slot) for rec in self.records[i].milieu)

    def read_state(self, i: int, slot: int = 0) -> bool:
        self._check(i, slot)
        return self._get(self.records[i].state, slot)

    def stage_next(self, i: int, slot: int, value: bool) -> None:
        self._check(i, slot)
        rec = self.records[i]
        value = bool(value)
        if self._multi:
            if self._dynamic:
                rec.next_state[slot].assign(value)
            else:
                rec.next_state[slot] = value
        elif self._dynamic:
            rec.next_state.assign(value)
        else:
            rec.next_state = value

    def commit(self) -> None:
        recs = self.records
        if self._multi:
            if self._dynamic:
                for rec in recs:
                    for cur, nxt in zip(rec.state, rec.next_state):
                        cur.copy_from(nxt)
            else:
                for rec in recs:
                    rec.state[:] = rec.next_state
        elif self._dynamic:
            for rec in recs:
                rec.state.copy_from(rec.next_state)
        else:
            for rec in recs:
                rec.state = rec.next_state

    def fill(self, value: bool) -> None:
        value = bool(value)
        for rec in self.records:
            if self._multi:
                if self._dynamic:
                    for v in rec.state + rec.next_state:
                        v.assign(value)
                else:
                    rec.state[:] = [value] * self.config.multi
                    rec.next_state[:] = [value] * self.config.multi
            elif self._dynamic:
                rec.state.assign(value)
                rec.next_state.assign(value)
            else:
                rec.state = rec.next_state = value

    def state_vector(self) -> list[bool]:
        return [self._get(rec.state, 0) for rec in self.records]

    def population(self) -> int:
        return sum(self._get(rec.state, 0) for rec in self.records)

    def step(self, outputs: Sequence[bool]) -> None:
        outputs = tuple(bool(o) for o in outputs)
        recs = self.records
        if self._multi:
            if self._dynamic:
                for rec in recs:
                    left, right = rec.milieu
                    for l, c, r, n in zip(left.state, rec.state, right.state, rec.next_state):
                        n.assign(outputs[(l.truth() << 2) | (c.truth() << 1) | r.truth()])
            else:
                for rec in recs:
                    left, right = rec.milieu
                    nxt = rec.next_state
                    for s, (l, c, r) in enumerate(zip(left.state, rec.state, right.state)):
                        nxt[s] = outputs[(l << 2) | (c << 1) | r]
        elif self._dynamic:
            for rec in recs:
                left, right = rec.milieu
                rec.next_state.assign(
                    outputs[(left.state.truth() << 2) | (rec.state.truth() << 1) | right.state.truth()]
                )
        else:
            for rec in recs:
                left, right = rec.milieu
                rec.next_state = outputs[(left.state << 2) | (rec.state << 1) | right.state]
        self.commit()
