class AutomatonError(ValueError):
    """Base class for domain errors raised by the library."""


class InvalidAutomaton(AutomatonError):
    pass


class NotNormalizable(AutomatonError):
    pass


class InvalidK(AutomatonError):
    pass


class LengthMismatch(AutomatonError):
    pass


class UnknownLabel(AutomatonError):
    pass


class UnknownState(AutomatonError):
    pass


class TooLarge(AutomatonError):
    pass


class InterfaceMismatch(AutomatonError):
    pass


class ArityMismatch(AutomatonError):
    pass


class NotClosed(AutomatonError):
    pass


class NotMarkov(AutomatonError):
    pass


class DimensionMismatch(AutomatonError):
    pass
