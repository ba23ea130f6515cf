"""Exception hierarchy shared by all modules."""


class OrdpartError(Exception):
    pass


class AxiomError(OrdpartError, ValueError):
    """A relation fails reflexivity, antisymmetry or transitivity."""


class CycleError(AxiomError):
    """The cover digraph handed to ``from_covers`` contains a directed cycle."""


class SizeMismatch(OrdpartError, ValueError):
    pass


class NotACongruence(OrdpartError, ValueError):
    """A partition that was required to be order-preserving is not."""


class NotMinimal(OrdpartError, ValueError):
    pass


class TotalMismatch(OrdpartError, ValueError):
    pass


class TooSmall(OrdpartError, ValueError):
    """The order complex of the proper part needs at least 3 elements."""


class ConsistencyError(OrdpartError, AssertionError):
    """An internal cross-check failed; this means a bug, not bad input."""
