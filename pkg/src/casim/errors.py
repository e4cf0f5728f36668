"""Exception hierarchy shared by every casim module."""


class CasimError(Exception):
    """Base class for all casim errors."""


class WrongRegime(CasimError):
    """An operation was called on a model in a regime it does not accept."""


class NotConcretised(WrongRegime):
    """A simulation operation was called on a model still in the virtual regime."""


class InvalidConfig(CasimError, ValueError):
    pass


class Unsupported(CasimError):
    """The requested storage configuration cannot be built."""


class AllocationFailure(CasimError, MemoryError):
    def __init__(self, entity_count: int, detail: str = ""):
        self.entity_count = entity_count
        msg = f"cannot allocate a store for {entity_count} entities"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class IndexOutOfRange(CasimError, IndexError):
    pass


class AlreadyGenerated(CasimError):
    pass


class OutOfRange(CasimError, ValueError):
    pass


class CaptureTooLarge(CasimError):
    pass


class EmptyTrace(CasimError, ValueError):
    pass


class PlatformUnsupported(CasimError):
    """Process memory introspection is not available on this platform."""


class IOFailure(CasimError, OSError):
    pass
