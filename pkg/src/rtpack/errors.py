"""Exception types shared across the toolkit."""


class RtpackError(Exception):
    """Base class for all toolkit errors."""


class BadParam(RtpackError):
    """A generator or solver parameter is outside its admissible range."""


class HorizonOverflow(RtpackError):
    """The hyperperiod needed to bound the feasibility test exceeds the cap."""


class PointExplosion(RtpackError):
    """The deadline-point sweep would enumerate more points than the cap."""


class EventExplosion(RtpackError):
    """The simulation would process more events than the cap."""


class ShapeMismatch(RtpackError):
    """A task set does not match the structural precondition of a closed-form test."""


class CoverageError(RtpackError):
    """A partition does not cover the task set (missing, duplicated or unknown ids)."""


class CapExceeded(RtpackError):
    """The instance is larger than the configured exhaustive-search cap."""


class ParseError(RtpackError):
    """An input document is syntactically malformed."""


class ValidationError(RtpackError):
    """A task set violates the model assumptions.

    Carries the individual violation records so callers can report them
    per task.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))
