"""Runtime-tagged state values for the dynamic-typing arm.

Every read and write dispatches on the tag, even though a cellular automaton
only ever stores booleans. That dispatch is the cost being measured.
"""

from __future__ import annotations

import enum


class Tag(enum.Enum):
    BOOLEAN = "boolean"
    INTEGER = "integer"
    REAL = "real"
    TEXT = "text"


_PY_TYPES = {Tag.BOOLEAN: bool, Tag.INTEGER: int, Tag.REAL: float, Tag.TEXT: str}


class DynamicValue:
    __slots__ = ("tag", "payload")

    def __init__(self, payload=False, tag: Tag | None = None):
        if tag is None:
            tag = _tag_of(payload)
        elif not isinstance(payload, _PY_TYPES[tag]) or (
            tag is not Tag.BOOLEAN and isinstance(payload, bool)
        ):
            raise TypeError(f"payload {payload!r} does not match tag {tag.value}")
        self.tag = tag
        self.payload = payload

    def truth(self) -> bool:
        tag = self.tag
        if tag is Tag.BOOLEAN:
            return self.payload
        if tag is Tag.INTEGER:
            return self.payload != 0
        if tag is Tag.REAL:
            return self.payload != 0.0
        if tag is Tag.TEXT:
            return self.payload != ""
        raise TypeError(f"unknown tag {tag!r}")

    def assign(self, value: bool) -> None:
        """Store a boolean, converted to this value's tag."""
        tag = self.tag
        if tag is Tag.BOOLEAN:
            self.payload = bool(value)
        elif tag is Tag.INTEGER:
            self.payload = 1 if value else 0
        elif tag is Tag.REAL:
            self.payload = 1.0 if value else 0.0
        elif tag is Tag.TEXT:
            self.payload = "1" if value else ""
        else:
            raise TypeError(f"unknown tag {tag!r}")

    def copy_from(self, other: "DynamicValue") -> None:
        if other.tag is self.tag:
            self.payload = other.payload
        else:
            self.assign(other.truth())

    def __eq__(self, other):
        if not isinstance(other, DynamicValue):
            return NotImplemented
        return self.tag is other.tag and self.payload == other.payload

    def __repr__(self) -> str:
        return f"DynamicValue({self.payload!r}, {self.tag.value})"


def _tag_of(payload) -> Tag:
    # bool before int: bool is an int subclass
    if isinstance(payload, bool):
        return Tag.BOOLEAN
    if isinstance(payload, int):
        return Tag.INTEGER
    if isinstance(payload, float):
        return Tag.REAL
    if isinstance(payload, str):
        return Tag.TEXT
    raise TypeError(f"unsupported dynamic payload type {type(payload).__name__}")
