"""Exception hierarchy.

Every error raised on purpose by the library derives from `LattcertError`.
The intermediate classes map onto CLI exit codes: `PreconditionError` (3),
`ResourceError` (4) and `ParseError` (2).
"""


class LattcertError(Exception):
    pass


class ParseError(LattcertError, ValueError):
    pass


class PreconditionError(LattcertError, ValueError):
    pass


class ResourceError(LattcertError):
    pass


class ZeroValuation(PreconditionError):
    """Valuation of zero requested (it is +infinity)."""


class DegreeTooLow(PreconditionError):
    pass


class BadReduction(PreconditionError):
    """A coefficient denominator is divisible by the prime."""


class NotSquarefree(PreconditionError):
    pass


class NotIrreducible(PreconditionError):
    pass


class NotMonic(PreconditionError):
    pass


class NotSL2(PreconditionError):
    pass


class SingularRoot(PreconditionError):
    """Hensel lifting from a residue where the derivative vanishes mod p."""


class DoesNotSplit(PreconditionError):
    pass


class Ramified(PreconditionError):
    pass


class EntriesOutsideRing(PreconditionError):
    pass


class InsufficientPrecision(PreconditionError):
    pass


class IntervalTooWide(PreconditionError):
    """Interval arithmetic could not resolve the sign of a pivot."""


class RankUnresolved(IntervalTooWide):
    pass


class MemoryBudgetExceeded(ResourceError):
    pass
