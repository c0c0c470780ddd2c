"""Vanishing Type I error budgets eps_n.

Text syntax (CLI and JSON): ``const:0.1``, ``recip``, ``pow:0.1``,
``logrecip``, ``exp:0.2``, ``list:0.5,0.3,0.2``.  ``logrecip`` is 1/ln(n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NotAdmissible, Undecidable


class Family(str, Enum):
    CONSTANT = "const"
    RECIPROCAL = "recip"
    POWER = "pow"
    LOG_RECIPROCAL = "logrecip"
    EXPONENTIAL = "exp"
    EXPLICIT = "list"


@dataclass(frozen=True)
class EpsilonSchedule:
    family: Family
    param: float | None = None
    values: tuple[float, ...] = ()

    def __post_init__(self):
        f, a = self.family, self.param
        if f is Family.CONSTANT and not (a is not None and 0.0 < a < 1.0):
            raise DomainError(f"constant budget must lie in (0, 1), got {a!r}")
        if f is Family.POWER and not (a is not None and a > 0):
            raise DomainError(f"power exponent must be > 0, got {a!r}")
        if f is Family.EXPONENTIAL and not (a is not None and a > 0):
            raise DomainError(f"exponential rate must be > 0, got {a!r}")
        if f is Family.EXPLICIT:
            if not self.values:
                raise DomainError("explicit schedule needs at least one value")
            if not all(0.0 < x < 1.0 for x in self.values):
                raise DomainError("explicit schedule values must lie in (0, 1)")

    @classmethod
    def constant(cls, eps: float) -> EpsilonSchedule:
        return cls(Family.CONSTANT, float(eps))

    @classmethod
    def reciprocal(cls) -> EpsilonSchedule:
        return cls(Family.RECIPROCAL)

    @classmethod
    def power(cls, a: float) -> EpsilonSchedule:
        return cls(Family.POWER, float(a))

    @classmethod
    def log_reciprocal(cls) -> EpsilonSchedule:
        return cls(Family.LOG_RECIPROCAL)

    @classmethod
    def exponential(cls, r: float) -> EpsilonSchedule:
        return cls(Family.EXPONENTIAL, float(r))

    @classmethod
    def explicit(cls, values) -> EpsilonSchedule:
        return cls(Family.EXPLICIT, values=tuple(float(x) for x in values))

    @classmethod
    def parse(cls, text: str) -> EpsilonSchedule:
        name, _, arg = text.strip().partition(":")
        try:
            family = Family(name.strip().lower())
        except ValueError:
            raise DomainError(f"unknown schedule family {name!r}") from None
        try:
            if family is Family.EXPLICIT:
                return cls.explicit(float(x) for x in arg.split(",") if x.strip())
            if family in (Family.RECIPROCAL, Family.LOG_RECIPROCAL):
                if arg:
                    raise DomainError(f"{family.value} takes no parameter")
                return cls(family)
            return cls(family, float(arg))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"bad schedule {text!r}: {exc}") from None

    def __str__(self) -> str:
        if self.family is Family.EXPLICIT:
            return "list:" + ",".join(repr(x) for x in self.values)
        if self.param is None:
            return self.family.value
        return f"{self.family.value}:{self.param:g}"

    @property
    def first_n(self) -> int:
        """Smallest n at which eps_n lies strictly inside (0, 1)."""
        if self.family in (Family.RECIPROCAL, Family.POWER):
            return 2
        if self.family is Family.LOG_RECIPROCAL:
            return 3
        return 1

    @property
    def last_n(self) -> int | None:
        return len(self.values) if self.family is Family.EXPLICIT else None

    def admissible(self, n: int) -> bool:
        return n >= self.first_n and (self.last_n is None or n <= self.last_n)

    def admissible_range(self, n_max: int) -> range:
        hi = n_max if self.last_n is None else min(n_max, self.last_n)
        return range(self.first_n, hi + 1)


def parse_schedule_list(text: str) -> list[EpsilonSchedule]:
    """Split ``recip,pow:0.1,list:0.5,0.3`` into schedules.

    Bare numbers after a ``list:`` item continue that list.
    """
    items: list[str] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if items and items[-1].startswith("list:"):
            try:
                float(tok)
            except ValueError:
                pass
            else:
                items[-1] += "," + tok
                continue
        items.append(tok)
    return [EpsilonSchedule.parse(s) for s in items]


def epsilon_at(schedule: EpsilonSchedule, n: int) -> float:
    if not schedule.admissible(n):
        raise NotAdmissible(f"schedule {schedule} is not admissible at n={n}")
    f = schedule.family
    if f is Family.CONSTANT:
        return schedule.param
    if f is Family.RECIPROCAL:
        return 1.0 / n
    if f is Family.POWER:
        return math.exp(-schedule.param * math.log(n))
    if f is Family.LOG_RECIPROCAL:
        return 1.0 / math.log(n)
    if f is Family.EXPONENTIAL:
        return math.exp(-schedule.param * n)
    return schedule.values[n - 1]


def is_subexponential(schedule: EpsilonSchedule) -> bool:
    """Whether 1/eps_n is o(e^{rn}) for every r > 0."""
    if schedule.family is Family.EXPLICIT:
        raise Undecidable("sub-exponential decay cannot be decided from a finite list")
    return schedule.family is not Family.EXPONENTIAL


STANDARD_SCHEDULES = (
    EpsilonSchedule.constant(0.1),
    EpsilonSchedule.reciprocal(),
    EpsilonSchedule.power(0.1),
    EpsilonSchedule.log_reciprocal(),
)
