"""Store contract, storage configuration and boundary handling."""

from __future__ import annotations

import abc
import enum
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from casim.errors import IndexOutOfRange, InvalidConfig


class Backend(str, enum.Enum):
    INDIRECT = "indirect"
    CONTIGUOUS = "contiguous"


class Typing(str, enum.Enum):
    STATIC = "static"
    DYNAMIC = "dynamic"


class BoundaryMode(str, enum.Enum):
    """How the first and last entity see their missing neighbor."""

    ZERO = "zero"
    PERIODIC = "periodic"


class _VirtualFalse:
    """Milieu placeholder for a neighbor outside the system; always reads false."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "VIRTUAL"

    def __reduce__(self):
        return (_VirtualFalse, ())


VIRTUAL = _VirtualFalse()


_ARITY_RE = re.compile(r"^multi(?::(\d+))?$")


@dataclass(frozen=True, order=True)
class StorageConfig:
    """One cell of the benchmark matrix.

    ``multi`` is ``None`` for single-state entities, otherwise the number of
    state slots per entity (``multi=1`` is the "multi-state ready" layout).
    """

    backend: Backend = Backend.CONTIGUOUS
    typing: Typing = Typing.STATIC
    multi: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "backend", Backend(self.backend))
        object.__setattr__(self, "typing", Typing(self.typing))
        if self.multi is not None and (isinstance(self.multi, bool) or self.multi < 1):
            raise InvalidConfig(f"multi-state arity must be >= 1, got {self.multi!r}")

    @property
    def slots(self) -> int:
        return 1 if self.multi is None else self.multi

    @property
    def supported(self) -> bool:
        return not (self.backend is Backend.CONTIGUOUS and self.typing is Typing.DYNAMIC)

    @property
    def arity_label(self) -> str:
        return "single" if self.multi is None else f"multi:{self.multi}"

    @property
    def label(self) -> str:
        return f"{self.backend.value}/{self.typing.value}/{self.arity_label}"

    @classmethod
    def parse_arity(cls, text: str) -> int | None:
        if text == "single":
            return None
        m = _ARITY_RE.match(text)
        if not m:
            raise InvalidConfig(f"arity must be 'single', 'multi' or 'multi:k', got {text!r}")
        k = int(m.group(1) or 1)
        if k < 1:
            raise InvalidConfig(f"multi-state arity must be >= 1, got {k}")
        return k

    @classmethod
    def from_label(cls, label: str) -> "StorageConfig":
        backend, typing, arity = label.split("/")
        return cls(Backend(backend), Typing(typing), cls.parse_arity(arity))


class EntityStore(abc.ABC):
    """Entity states with a current and a next plane, plus per-entity milieus.

    Reads always see the committed (current) plane; writes go to the next
    plane and become visible only after :meth:`commit`.
    """

    config: StorageConfig
    entity_count: int
    boundary: BoundaryMode | None

    def __len__(self) -> int:
        return self.entity_count

    @property
    def slots(self) -> int:
        return self.config.slots

    @property
    def milieu_generated(self) -> bool:
        return self.boundary is not None

    def _check(self, i: int, slot: int) -> None:
        if not 0 <= i < self.entity_count:
            raise IndexOutOfRange(f"entity {i} outside [0, {self.entity_count})")
        if not 0 <= slot < self.slots:
            raise IndexOutOfRange(f"slot {slot} outside [0, {self.slots})")

    @abc.abstractmethod
    def generate_milieu(self, boundary: BoundaryMode) -> None:
        """Wire every entity to its left and right neighbor, in that order."""

    @abc.abstractmethod
    def milieu(self, i: int) -> tuple:
        """Neighbor indices of entity ``i``; :data:`VIRTUAL` for a virtual-false neighbor."""

    @abc.abstractmethod
    def neighbor_states(self, i: int, slot: int = 0) -> tuple[bool, ...]:
        """Committed states of the milieu of ``i``, resolved through the store's own links."""

    @abc.abstractmethod
    def read_state(self, i: int, slot: int = 0) -> bool: ...

    @abc.abstractmethod
    def stage_next(self, i: int, slot: int, value: bool) -> None: ...

    @abc.abstractmethod
    def commit(self) -> None:
        """Copy the next plane into the current plane; the next plane is left untouched."""

    @abc.abstractmethod
    def fill(self, value: bool) -> None:
        """Set every slot of both planes to ``value``."""

    @abc.abstractmethod
    def state_vector(self) -> list[bool]:
        """Snapshot of committed slot-0 states in index order."""

    def population(self) -> int:
        """Number of committed slot-0 states that are true."""
        return sum(self.state_vector())

    @abc.abstractmethod
    def step(self, outputs: Sequence[bool]) -> None:
        """One full two-phase update with an 8-entry rule table, every slot.

        ``outputs[(left << 2) | (center << 1) | right]`` is the next state.
        """

    def iter_states(self, slot: int = 0) -> Iterator[bool]:
        for i in range(self.entity_count):
            yield self.read_state(i, slot)
