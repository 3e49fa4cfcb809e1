"""Exception types shared across the package."""


class CleanforgeError(Exception):
    """Base class for all library errors."""


class SpecMismatch(CleanforgeError):
    """Operands belong to different ring specs."""


class NotPrime(CleanforgeError):
    """A parameter that must be prime is not."""


class NotAUnit(CleanforgeError):
    """Inversion of a non-invertible element was requested."""


class InfiniteRing(CleanforgeError):
    """An enumeration-style operation was applied to an infinite ring."""


class UnsupportedFamily(CleanforgeError):
    """The operation is undefined for this ring family."""


class UnsupportedRing(CleanforgeError):
    """The ring is outside the guaranteed scope of the algorithm."""


class ParseError(CleanforgeError):
    """Malformed textual input (ring spec, element, polynomial, matrix)."""


class NotMonic(CleanforgeError):
    """A polynomial that must be monic is not."""


class NotCoprime(CleanforgeError):
    """Residue polynomials share a common factor of positive degree."""


class ResidueMismatch(CleanforgeError):
    """A residue factorization does not match the reduced polynomial."""


class BoundExceeded(CleanforgeError):
    """An enumeration would exceed the configured work bound."""


class NotIdempotent(CleanforgeError):
    """A matrix that must satisfy E*E = E does not."""


class PreconditionViolated(CleanforgeError):
    """An operation's stated preconditions do not hold for the input."""


class InternalCheckFailed(CleanforgeError):
    """A self-check that must hold by construction failed (a bug)."""


class WitnessDegenerate(CleanforgeError):
    """A witness construction hit a case it certifies as impossible."""
