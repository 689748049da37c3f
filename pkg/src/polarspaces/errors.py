"""Exception types shared by all modules."""


class PolarError(ValueError):
    pass


# fields
class NonPrime(PolarError):
    pass


class DegreeZero(PolarError):
    pass


class TooLarge(PolarError):
    pass


class FieldMismatch(PolarError):
    pass


class DivisionByZero(PolarError, ZeroDivisionError):
    pass


class NoInvolution(PolarError):
    pass


class WrongCharacteristic(PolarError):
    pass


# linear algebra
class DimensionMismatch(PolarError):
    pass


class NotContained(PolarError):
    pass


# forms
class InvariantViolation(PolarError):
    pass


class NotAQuotientSituation(PolarError):
    pass


# geometry
class NotOpposite(PolarError):
    pass


class NotSubGenerator(PolarError):
    pass


class NotASubspace(PolarError):
    pass


class NotAGeneratorOfPerp(PolarError):
    pass


class NotMinimalEmbedding(PolarError):
    pass


class NotAGenerator(PolarError):
    pass


class NotCatalogSpace(PolarError):
    pass


class NoOppositeExists(PolarError):
    pass


class HyperbolicObstruction(PolarError):
    pass


class NotPairwiseOpposite(PolarError):
    pass


class DegenerateInput(PolarError):
    pass


# infinite model
class WrongKind(PolarError):
    pass


class UnsupportedPattern(PolarError):
    pass


# command line
class ParseError(PolarError):
    pass


class UnknownSuite(PolarError):
    pass
