"""Exception hierarchy.

Every error carries a ``kind`` (its class name) so the CLI can map it to a
structured ``{"error": {"kind": ..., "detail": ...}}`` payload.
"""


class ToricError(Exception):
    @property
    def kind(self) -> str:
        return type(self).__name__


# fan validation
class FanError(ToricError):
    pass


class NonPrimitiveRay(FanError):
    pass


class NonSimplicialCone(FanError):
    pass


class IncompleteFan(FanError):
    pass


class DisconnectedFan(FanError):
    pass


class IndexOutOfRange(ToricError):
    pass


class InvalidFan(FanError):
    pass


# grading
class LengthMismatch(ToricError):
    pass


class NotEffectiveInput(ToricError):
    pass


class EnumerationBudgetExceeded(ToricError):
    pass


class NoLiftFound(ToricError):
    pass


class ZeroEta(ToricError):
    pass


# polynomials and ideals
class NotHomogeneous(ToricError):
    pass


class ParseError(ToricError):
    pass


class UnitGenerator(ToricError):
    pass


class SocleDimensionNotOne(ToricError):
    def __init__(self, actual: int):
        super().__init__(f"dim R^N = {actual}, expected 1")
        self.actual = actual


# hodge / cayley
class TooManyPolynomials(ToricError):
    pass


class ExcludedIndex(ToricError):
    pass


# asymptotics
class DegenerateDenominator(ToricError):
    pass


class HypothesisNotMet(ToricError):
    pass
