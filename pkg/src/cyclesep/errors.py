"""Exception hierarchy shared by every cyclesep module."""

from __future__ import annotations


class CyclesepError(Exception):
    """Base class for all library errors."""


# -- embedding documents -----------------------------------------------------


class EmbeddingError(CyclesepError):
    """The embedding document or rotation system is invalid."""


class MalformedDocument(EmbeddingError):
    pass


class AsymmetricAdjacency(EmbeddingError):
    pass


class Disconnected(EmbeddingError):
    pass


class NotGenusZero(EmbeddingError):
    pass


class SelfLoopOrMultiEdge(EmbeddingError):
    pass


class InvalidDrawing(EmbeddingError):
    """Coordinates cross, coincide, or disagree with the rotation system."""


# -- queries -----------------------------------------------------------------


class UnknownVertex(CyclesepError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class NotACycle(CyclesepError, ValueError):
    pass


class NotAPath(CyclesepError, ValueError):
    pass


class VertexOnCycle(CyclesepError, ValueError):
    pass


class BudgetExceeded(CyclesepError):
    pass


class SupportTooLarge(BudgetExceeded):
    pass


class HypothesisNotMet(CyclesepError, ValueError):
    pass


class IndexOutOfRange(CyclesepError, IndexError):
    pass


class NotAFamily(CyclesepError, ValueError):
    pass


class AxiomViolation(CyclesepError):
    pass


class TooFewMembers(CyclesepError, ValueError):
    pass


class DegenerateGeometry(CyclesepError, ValueError):
    pass


class BadConfig(CyclesepError, ValueError):
    pass


class UnknownProperty(CyclesepError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)
