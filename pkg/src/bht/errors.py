"""Exception hierarchy.

``DomainError`` covers invalid inputs (the CLI maps it to exit code 3);
``InfeasibleError`` covers computations that cannot be carried out within the
configured limits (exit code 4).
"""


class BhtError(Exception):
    pass


class DomainError(BhtError, ValueError):
    pass


class InfeasibleError(BhtError):
    pass


class NegativeMass(DomainError):
    pass


class SumOutOfTolerance(DomainError):
    pass


class AlphabetTooSmall(DomainError):
    pass


class SupportMismatch(DomainError):
    pass


class AlphabetSizeMismatch(DomainError):
    pass


class TiltOutOfRange(DomainError):
    pass


class RateOutOfRange(DomainError):
    pass


class TargetUnreachable(DomainError):
    pass


class NotAdmissible(DomainError):
    pass


class Undecidable(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class LogDomainError(DomainError):
    """Log-domain subtraction with a minuend smaller than the subtrahend."""


class EnumerationTooLarge(InfeasibleError):
    pass


class TooLarge(InfeasibleError):
    pass


class OracleInfeasible(InfeasibleError):
    pass


class NotFound(InfeasibleError):
    pass


class InconsistentMeasures(UserWarning):
    """Scalar overrides with C_X < D; no real pair has these measures."""


class DegeneratePair(UserWarning):
    """Concentration check on a pair with C_X = 0; the bound is vacuous."""
