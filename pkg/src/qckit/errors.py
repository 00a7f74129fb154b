"""Exception types raised by the library.

Everything derives from QCKitError so callers can catch broadly; the CLI maps
QCKitError to exit code 1 and argparse usage errors to exit code 2.
"""


class QCKitError(ValueError):
    pass


# field construction / arithmetic
class NonPrimeCharacteristic(QCKitError):
    pass


class OrderCapExceeded(QCKitError):
    pass


class MixedFields(QCKitError):
    pass


class DivisionByZero(QCKitError, ZeroDivisionError):
    pass


class InvalidSubfieldOrder(QCKitError):
    pass


class NotASubfield(QCKitError):
    pass


class NoEmbedding(QCKitError):
    pass


class NoRootOfThatOrder(QCKitError):
    pass


# polynomial ring
class NotCoprime(QCKitError):
    pass


class ZeroConstantTerm(QCKitError):
    pass


# linear codes
class LengthMismatch(QCKitError):
    pass


class DimensionMismatch(QCKitError):
    pass


class OrderNotSquare(QCKitError):
    pass


class BudgetTooSmallForExact(QCKitError):
    pass


class RepeatedEvaluationPoint(QCKitError):
    pass


class ZeroMultiplier(QCKitError):
    pass


# quasi-cyclic assembly
class FieldMismatch(QCKitError):
    pass


class MissingProvenance(QCKitError):
    pass


class OrderingViolated(QCKitError):
    pass


class ConstituentNotHSO(QCKitError):
    pass


class SlotSNotESO(QCKitError):
    pass


# distance bound
class RepNotACosetMin(QCKitError):
    pass


class UnknownConstituentDistance(QCKitError):
    pass


class EmptyAssignment(QCKitError):
    pass


# quantum
class NotNested(QCKitError):
    pass


class BudgetExceeded(QCKitError):
    pass


class NotDualContaining(QCKitError):
    pass


class PreconditionViolated(QCKitError):
    pass
