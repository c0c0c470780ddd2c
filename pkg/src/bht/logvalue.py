"""Nonnegative reals stored as natural logarithms.

Type II error probabilities in this package routinely fall far below the
smallest positive double (the gap table reaches ~1e-317 and beyond), so every
probability that can become tiny is carried as its log.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import LogDomainError

_LOG10_E = 1.0 / math.log(10.0)


def log_add_exp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def log_sub_exp(a: float, b: float) -> float:
    """log(e^a - e^b), defined for a >= b."""
    if b > a:
        raise LogDomainError(f"log_sub_exp requires a >= b, got a={a!r}, b={b!r}")
    if b == -math.inf:
        return a
    x = b - a
    if x == 0.0:
        return -math.inf
    if x > -0.6931471805599453:
        return a + math.log(-math.expm1(x))
    return a + math.log1p(-math.exp(x))


@dataclass(frozen=True, order=True)
class LogValue:
    """A nonnegative real ``exp(log)``; ``log == -inf`` is exact zero."""

    log: float

    def __post_init__(self):
        if math.isnan(self.log) or self.log == math.inf:
            raise ValueError(f"invalid log value {self.log!r}")

    @classmethod
    def zero(cls) -> LogValue:
        return cls(-math.inf)

    @classmethod
    def one(cls) -> LogValue:
        return cls(0.0)

    @classmethod
    def from_float(cls, x: float) -> LogValue:
        if x < 0:
            raise ValueError(f"LogValue holds nonnegative reals, got {x!r}")
        return cls(math.log(x) if x > 0 else -math.inf)

    @property
    def is_zero(self) -> bool:
        return self.log == -math.inf

    @property
    def log10(self) -> float:
        return self.log * _LOG10_E

    def to_float(self) -> float:
        return math.exp(self.log)

    def __add__(self, other: LogValue) -> LogValue:
        return LogValue(log_add_exp(self.log, other.log))

    def __sub__(self, other: LogValue) -> LogValue:
        return LogValue(log_sub_exp(self.log, other.log))

    def __mul__(self, other: LogValue) -> LogValue:
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.log + other.log)

    def sci(self, digits: int = 6) -> str:
        return format_sci_log10(self.log10, digits)

    def __repr__(self) -> str:
        return f"LogValue({self.sci()})"


def format_sci_log10(log10_value: float, digits: int = 6) -> str:
    """Scientific string for ``10**log10_value`` computed without leaving log space.

    >>> format_sci_log10(math.log10(9.544) - 317)
    '9.54400E-317'
    """
    if log10_value == -math.inf:
        return f"{0.0:.{digits - 1}f}E+00"
    exponent = math.floor(log10_value)
    mantissa = round(10.0 ** (log10_value - exponent), digits - 1)
    if mantissa >= 10.0:
        mantissa /= 10.0
        exponent += 1
    sign = "+" if exponent >= 0 else "-"
    return f"{mantissa:.{digits - 1}f}E{sign}{abs(exponent):02d}"


def parse_sci_log10(text: str) -> float:
    """Inverse of :func:`format_sci_log10`; returns ``log10`` of the value."""
    mant, _, exp = text.strip().upper().partition("E")
    m = float(mant)
    if m == 0.0:
        return -math.inf
    if m < 0:
        raise ValueError(f"negative magnitude {text!r}")
    return math.log10(m) + int(exp or 0)
