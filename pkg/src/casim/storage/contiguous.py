"""Contiguous double-buffered store: two flat boolean planes plus an index milieu.

Both planes carry one spare trailing row that is always false. A milieu entry
equal to ``entity_count`` points at that row, which is how a virtual-false
neighbor is expressed without branching in the update loop.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from casim.errors import AlreadyGenerated, Unsupported
from casim.storage import _kernels
from casim.storage.base import VIRTUAL, BoundaryMode, EntityStore, StorageConfig, Typing


def index_dtype(entity_count: int) -> np.dtype:
    return np.dtype(np.uint32 if entity_count < 2**32 - 1 else np.uint64)


class ContiguousArrayStore(EntityStore):
    def __init__(self, config: StorageConfig, entity_count: int):
        if config.typing is Typing.DYNAMIC:
            raise Unsupported("contiguous arrays hold primitive booleans only; dynamic typing is unsupported")
        self.config = config
        self.entity_count = entity_count
        self.boundary = None
        shape = (entity_count + 1,) if config.multi is None else (entity_count + 1, config.multi)
        self.current = np.zeros(shape, dtype=np.bool_)
        self.next = np.zeros(shape, dtype=np.bool_)
        self.neighbors = np.empty((0, 2), dtype=index_dtype(entity_count))

    @property
    def sentinel(self) -> int:
        return self.entity_count

    def generate_milieu(self, boundary: BoundaryMode) -> None:
        if self.boundary is not None:
            raise AlreadyGenerated("milieu already generated")
        boundary = BoundaryMode(boundary)
        neighbors = np.empty((self.entity_count, 2), dtype=index_dtype(self.entity_count))
        _kernels.ring_milieu(neighbors, boundary is BoundaryMode.PERIODIC)
        self.neighbors = neighbors
        self.boundary = boundary

    def milieu(self, i: int) -> tuple:
        self._check(i, 0)
        if not self.milieu_generated:
            return ()
        return tuple(VIRTUAL if j == self.sentinel else int(j) for j in self.neighbors[i])

    def _at(self, plane: np.ndarray, i, slot: int) -> bool:
        return bool(plane[i] if self.config.multi is None else plane[i, slot])

    def neighbor_states(self, i: int, slot: int = 0) -> tuple[bool, ...]:
        self._check(i, slot)
        if not self.milieu_generated:
            return ()
        return tuple(self._at(self.current, j, slot) for j in self.neighbors[i])

    def read_state(self, i: int, slot: int = 0) -> bool:
        self._check(i, slot)
        return self._at(self.current, i, slot)

    def stage_next(self, i: int, slot: int, value: bool) -> None:
        self._check(i, slot)
        if self.config.multi is None:
            self.next[i] = value
        else:
            self.next[i, slot] = value

    def commit(self) -> None:
        np.copyto(self.current, self.next)

    def fill(self, value: bool) -> None:
        self.current[: self.entity_count] = value
        self.next[: self.entity_count] = value

    def state_vector(self) -> list[bool]:
        plane = self.current[: self.entity_count]
        if self.config.multi is not None:
            plane = plane[:, 0]
        return plane.tolist()

    def population(self) -> int:
        plane = self.current[: self.entity_count]
        if self.config.multi is not None:
            plane = plane[:, 0]
        return int(np.count_nonzero(plane))

    def step(self, outputs: Sequence[bool]) -> None:
        table = np.asarray(outputs, dtype=np.bool_)
        if self.config.multi is None:
            _kernels.step_single(self.current, self.next, self.neighbors, table)
        else:
            _kernels.step_multi(self.current, self.next, self.neighbors, table)
        self.commit()
