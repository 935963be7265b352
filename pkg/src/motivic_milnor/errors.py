"""Exception hierarchy shared by every module of the package."""


class MotivicError(Exception):
    """Base class for all library errors."""


class IndexOverCap(MotivicError):
    """A sequence or matrix index reached the configured cap."""


class SubUnderflow(MotivicError):
    """Componentwise subtraction would produce a negative entry."""


class NonzeroR0(MotivicError):
    """A xi-exponent sequence has a nonzero entry at index 0."""


class NotExterior(MotivicError):
    """A tau-exponent sequence has an entry outside {0, 1}."""


class NegativeExponent(MotivicError, AssertionError):
    """A closed-form formula produced a negative tau/rho exponent.

    This is an internal invariant violation: the rewriting derivation
    forces nonnegative exponents on every contributing term.
    """


class TableError(MotivicError):
    """Base class for structure-constant table failures."""


class VersionMismatch(TableError):
    pass


class CorruptTable(TableError):
    pass


class IOFailure(TableError):
    pass
