"""Exception hierarchy.

Every domain failure raises a subclass of :class:`TreecutError`; the CLI
prints the class name on a single diagnostic line and exits with status 1.
"""


class TreecutError(Exception):
    pass


class ParseError(TreecutError):
    """Malformed signature, term, system or equation text."""


class UnknownOp(TreecutError):
    pass


class ArityMismatch(TreecutError):
    pass


class DuplicateOp(TreecutError):
    pass


class NameClash(TreecutError):
    """A variable name collides with an operation symbol."""


class InfiniteTree(TreecutError):
    """A finite tree was required but a cycle is reachable from the root."""


class NotAChain(TreecutError):
    pass


class NotRational(TreecutError):
    """No eventually periodic closure was found within the search bound."""


class NotExact(TreecutError):
    pass


class DepthRequired(TreecutError):
    pass


class UnknownBuiltin(TreecutError):
    pass


class BadParams(TreecutError):
    pass


class CapacityExceeded(TreecutError):
    """A bounded power-set normalizer received too many distinct children."""


class MixedPresentations(TreecutError):
    pass


class Undecided(TreecutError):
    pass


class NoEnumerator(TreecutError):
    pass


class CapExceeded(TreecutError):
    """A stage enumeration grew past the configured size cap."""


class NotGuarded(TreecutError):
    pass


class BadCutPoint(TreecutError):
    pass
