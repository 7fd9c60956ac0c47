"""Exception hierarchy shared by all pickdisc modules."""


class PickDiscError(Exception):
    """Base class for every error raised by pickdisc."""


class ParameterOutOfRange(PickDiscError, ValueError):
    pass


class DenominatorZero(PickDiscError, ZeroDivisionError):
    pass


class DenominatorRootInDisc(PickDiscError, ValueError):
    """A coordinate denominator vanishes somewhere on the closed unit disc."""


class DegenerateComposition(PickDiscError, ValueError):
    pass


class DegenerateFamily(PickDiscError, ValueError):
    pass


class TransversalityViolation(PickDiscError, ValueError):
    """The semi-invariant is not real and positive at a boundary point."""


class NotNormalized(PickDiscError, ValueError):
    """Input is not in the normal form an operation requires.

    Raised for embeddings whose boundary crossing is not at +-1 and for
    coefficient sequences whose constant term is not 1.
    """


class Singularity(PickDiscError, ArithmeticError):
    pass


class DuplicatePoints(PickDiscError, ValueError):
    pass


class ZeroAtOrigin(PickDiscError, ValueError):
    pass


class NotCompletePick(PickDiscError, ValueError):
    pass


class PeriodicSupport(PickDiscError, ValueError):
    """The support of the reciprocal coefficients has gcd > 1."""


class MalformedInput(PickDiscError, ValueError):
    pass


class NonConvergence(PickDiscError, RuntimeWarning):
    """Newton refinement of a crossing candidate failed (non-fatal)."""
