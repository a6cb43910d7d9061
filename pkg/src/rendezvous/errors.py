class RendezvousError(Exception):
    pass


class PreconditionError(RendezvousError, ValueError):
    """Input outside the range a strategy or theorem applies to."""


class PlanError(RendezvousError, RuntimeError):
    """A plan is internally inconsistent (points at a generator bug)."""


class StallError(PlanError):
    """The simulation kernel found no future event before all robots met."""
