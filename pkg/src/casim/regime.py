"""The three lifecycle regimes a system model passes through."""

import enum

from casim.errors import NotConcretised, WrongRegime


class Regime(str, enum.Enum):
    VIRTUAL = "virtual"
    METASTABLE = "metastable"
    ACTUAL = "actual"


def require(obj, expected: Regime, operation: str) -> None:
    actual = getattr(obj, "regime", None)
    if actual is expected:
        return
    if actual is Regime.VIRTUAL and expected is not Regime.VIRTUAL:
        raise NotConcretised(f"{operation} needs a {expected.value} model; this one is still virtual")
    raise WrongRegime(f"{operation} needs a {expected.value} model, got {getattr(actual, 'value', actual)!r}")
