"""Entity-state storage backends behind one store contract."""

from __future__ import annotations

from casim.errors import AllocationFailure, InvalidConfig, Unsupported
from casim.storage.base import (
    VIRTUAL,
    Backend,
    BoundaryMode,
    EntityStore,
    StorageConfig,
    Typing,
)
from casim.storage.contiguous import ContiguousArrayStore
from casim.storage.dynamic import DynamicValue, Tag
from casim.storage.indirect import EntityRecord, IndirectRecordStore

__all__ = [
    "VIRTUAL",
    "Backend",
    "BoundaryMode",
    "ContiguousArrayStore",
    "DynamicValue",
    "EntityRecord",
    "EntityStore",
    "IndirectRecordStore",
    "StorageConfig",
    "Tag",
    "Typing",
    "build_store",
    "commit",
    "estimate_bytes",
    "generate_milieu",
    "read_state",
    "stage_next",
    "state_vector",
]


def estimate_bytes(config: StorageConfig, entity_count: int) -> int:
    """Rough resident footprint of a fully used store, for the pre-flight check."""
    k = config.slots
    if config.backend is Backend.CONTIGUOUS:
        return entity_count * (2 * k + 2 * 8)
    # record object + milieu list, then two state representations
    per = 64 + 88
    if config.multi is None:
        per += 2 * 56 if config.typing is Typing.DYNAMIC else 0
    else:
        per += 2 * (56 + 8 * k)
        if config.typing is Typing.DYNAMIC:
            per += 2 * k * 56
    return entity_count * per


def _available_bytes() -> int | None:
    try:
        import psutil
    except ImportError:  # pragma: no cover
        return None
    return psutil.virtual_memory().available


def build_store(config: StorageConfig, entity_count: int) -> EntityStore:
    """Allocate ``entity_count`` all-false entities; milieus are left ungenerated."""
    if isinstance(entity_count, bool) or int(entity_count) != entity_count or entity_count < 1:
        raise InvalidConfig(f"entity_count must be a positive integer, got {entity_count!r}")
    entity_count = int(entity_count)
    if not config.supported:
        raise Unsupported(f"{config.label}: dynamic typing is not possible with contiguous arrays")
    available = _available_bytes()
    needed = estimate_bytes(config, entity_count)
    if available is not None and needed > available:
        raise AllocationFailure(entity_count, f"needs ~{needed} bytes, {available} available")
    cls = ContiguousArrayStore if config.backend is Backend.CONTIGUOUS else IndirectRecordStore
    try:
        return cls(config, entity_count)
    except MemoryError as exc:
        raise AllocationFailure(entity_count, str(exc)) from exc


def generate_milieu(store: EntityStore, boundary: BoundaryMode | str) -> None:
    store.generate_milieu(BoundaryMode(boundary))


def read_state(store: EntityStore, i: int, slot: int = 0) -> bool:
    return store.read_state(i, slot)


def stage_next(store: EntityStore, i: int, slot: int, value: bool) -> None:
    store.stage_next(i, slot, value)


def commit(store: EntityStore) -> None:
    store.commit()


def state_vector(store: EntityStore) -> list[bool]:
    return store.state_vector()
