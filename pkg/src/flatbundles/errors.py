"""Exception taxonomy.

Every domain failure raises a subclass of :class:`DomainError`; the CLI maps
these to exit code 1 and prints the class name as the typed message.
"""


class DomainError(Exception):
    """Base class for all typed domain errors."""

    @property
    def code(self):
        return type(self).__name__


# exact fields
class NonPrime(DomainError):
    pass


class ReducibleModulus(DomainError):
    pass


class CtxMismatch(DomainError):
    pass


class NotInSubfield(DomainError):
    pass


class UnsupportedEmbedding(DomainError):
    pass


class PrimeDividesDenominatorOrDet(DomainError):
    pass


class ParseError(DomainError):
    pass


# matrices and groups
class SingularMatrix(DomainError):
    pass


class SingularGenerator(SingularMatrix):
    pass


class CapExceeded(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class NoRootFound(DomainError):
    pass


class UnsupportedClass(DomainError):
    pass


# base spaces
class Disconnected(DomainError):
    pass


class OpenFaceWord(DomainError):
    pass


class MissingBasepoint(DomainError):
    pass


class UnknownEdge(DomainError):
    pass


class NotClosed(DomainError):
    pass


class NotAtBasepoint(DomainError):
    pass


# local systems and coverings
class RelatorViolation(DomainError):
    pass


class FaceProductNotIdentity(DomainError):
    pass


class SpaceMismatch(DomainError):
    pass


class NotGalois(DomainError):
    pass


class NotTrivializedBy(DomainError):
    pass


# descent
class NotATrivialization(DomainError):
    pass


class DescentFailure(DomainError):
    """Raised defensively; reaching it means a bug, not bad input."""


class BadDepth(DomainError):
    pass


class LevelNotInTower(DomainError):
    pass


class BadModulus(DomainError):
    pass


# cohomology
class NotACocycle(DomainError):
    pass
