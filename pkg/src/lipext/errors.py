"""Exception hierarchy.

Every error carries a machine-readable payload; the three families map onto
the CLI exit codes (3 invalid metric, 4 domain error, 5 failed rule
precondition).
"""

from __future__ import annotations

from typing import Any


class LipextError(Exception):
    exit_code = 1

    def __init__(self, message: str = "", **details: Any) -> None:
        super().__init__(message or type(self).__name__)
        self.details = details

    def payload(self) -> dict[str, Any]:
        out: dict[str, Any] = {"error": type(self).__name__, "message": str(self)}
        out.update(self.details)
        return out


# -- invalid metric data ----------------------------------------------------


class MetricError(LipextError, ValueError):
    exit_code = 3


class NotSquare(MetricError):
    pass


class NonFiniteDistance(MetricError):
    pass


class NotSymmetric(MetricError):
    pass


class NegativeDistance(MetricError):
    pass


class ZeroOffDiagonal(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class TriangleViolation(MetricError):
    pass


class DuplicateLabel(MetricError):
    pass


class ApexTooClose(MetricError):
    pass


# -- bad arguments relative to a valid space --------------------------------


class DomainError(LipextError, ValueError):
    exit_code = 4


class EmptySet(DomainError):
    pass


class EmptyDomain(DomainError):
    pass


class EmptyTargets(DomainError):
    pass


class EmptyInput(DomainError):
    pass


class UnknownLabel(DomainError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return Exception.__str__(self)


class OverlappingDomain(DomainError):
    pass


class AlreadyDefined(DomainError):
    pass


class SetsOverlap(DomainError):
    pass


class SetsTouch(DomainError):
    pass


class BadExponent(DomainError):
    pass


class BadOrdering(DomainError):
    pass


class NonpositiveWeight(DomainError):
    pass


class NonpositiveRatio(DomainError):
    pass


class CoincidentPoints(DomainError):
    pass


class DegenerateTriangle(DomainError):
    pass


class BadCount(DomainError):
    pass


class BadSide(DomainError):
    pass


class BoxTooSmall(DomainError):
    pass


class SpaceMismatch(DomainError):
    pass


# -- a rule's hypotheses do not hold -----------------------------------------


class PreconditionError(LipextError):
    exit_code = 5


class NotATriangle(PreconditionError):
    pass


class NotATetragon(PreconditionError):
    pass


class NotRegularPolygon(PreconditionError):
    pass


class WrongMetricShape(PreconditionError):
    pass


class AlphaNotOne(PreconditionError):
    pass


class AngleConditionFails(PreconditionError):
    pass


class NoClosedFormRule(PreconditionError):
    pass


class Infeasible(PreconditionError):
    pass
