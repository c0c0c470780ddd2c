"""Critical sample size: the first n at which beta_n is pinned near e^{-nD}.

The predicted CSS is the first admissible n with

    max(UB(eps_n) - e^{-nD}, e^{-nD} - LB(eps_n)) <= delta

and the empirical CSS is the first n with |beta_n(eps_n) - e^{-nD}| < delta
for beta_n from an oracle.  Both scans are linear because the criterion is
not monotone in n at small n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import bounds_for_epsilon, check_abstract_measures
from .distributions import HypothesisPair
from .errors import DomainError, EnumerationTooLarge, OracleInfeasible
from .exact_np import beta_exact
from .logvalue import log_sub_exp
from .montecarlo import McConfig, estimate_beta
from .schedules import EpsilonSchedule, epsilon_at
from .settings import DEFAULT_SETTINGS, Settings


@dataclass(frozen=True)
class CssQuery:
    schedule: EpsilonSchedule
    delta: float
    d: float
    c_x: float
    n_max: int = 1_000_000
    keep_series: bool = False

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError(f"delta must be > 0, got {self.delta!r}")
        if self.n_max < 1:
            raise DomainError(f"n_max must be >= 1, got {self.n_max}")
        if not self.d > 0:
            raise DomainError(f"CSS needs D > 0, got {self.d!r}")

    @classmethod
    def for_pair(cls, pair: HypothesisPair, schedule: EpsilonSchedule, delta: float, **kw) -> CssQuery:
        return cls(schedule, delta, pair.d, pair.c_x, **kw)

    @classmethod
    def abstract(cls, d: float, c_x: float, schedule: EpsilonSchedule, delta: float, **kw) -> CssQuery:
        check_abstract_measures(d, c_x)
        return cls(schedule, delta, d, c_x, **kw)

    def with_delta(self, delta: float) -> CssQuery:
        return CssQuery(self.schedule, delta, self.d, self.c_x, self.n_max, self.keep_series)


@dataclass(frozen=True)
class CssResult:
    css: int | None
    criterion_at_css: float
    n_max: int
    series: tuple[tuple[int, float], ...] | None = None

    @property
    def found(self) -> bool:
        return self.css is not None


def log_criterion(d: float, c_x: float, epsilon: float, n: int) -> float:
    """log of max(UB - e^{-nD}, e^{-nD} - LB)."""
    b = bounds_for_epsilon(d, c_x, epsilon, n)
    center = -n * d
    above = log_sub_exp(max(b.log_ub.log, center), center)
    below = log_sub_exp(center, min(b.log_lb.log, center))
    return max(above, below)


def predicted_css(query: CssQuery) -> CssResult:
    log_delta = math.log(query.delta)
    series = [] if query.keep_series else None
    for n in query.schedule.admissible_range(query.n_max):
        lc = log_criterion(query.d, query.c_x, epsilon_at(query.schedule, n), n)
        if series is not None:
            series.append((n, math.exp(lc)))
        if lc <= log_delta:
            return CssResult(n, math.exp(lc), query.n_max, tuple(series) if series is not None else None)
    return CssResult(None, math.nan, query.n_max, tuple(series) if series is not None else None)


def css_sweep(base: CssQuery, k_range) -> list[tuple[float, CssResult]]:
    """Predicted CSS for delta = 10^-k over ``k_range``."""
    ks = list(k_range)
    if not ks:
        raise DomainError("k_range is empty")
    out = []
    for k in ks:
        delta = 10.0 ** (-k)
        out.append((delta, predicted_css(base.with_delta(delta))))
    return out


def empirical_css(
    pair: HypothesisPair,
    schedule: EpsilonSchedule,
    delta: float,
    oracle: str | McConfig = "exact",
    n_max: int = 10_000,
    settings: Settings = DEFAULT_SETTINGS,
) -> CssResult:
    """First n with |beta_n(eps_n) - e^{-nD}| < delta, beta_n from an oracle.

    ``oracle`` is ``"exact"`` for the type-class oracle or a :class:`McConfig`
    for the simulation estimate.
    """
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta!r}")
    if oracle != "exact" and not isinstance(oracle, McConfig):
        raise DomainError(f"unknown oracle {oracle!r}")
    log_delta = math.log(delta)
    for n in schedule.admissible_range(n_max):
        eps = epsilon_at(schedule, n)
        if oracle == "exact":
            try:
                log_beta = beta_exact(pair, n, eps, settings).beta.log
            except EnumerationTooLarge as exc:
                raise OracleInfeasible(f"exact oracle infeasible at n={n}: {exc}") from exc
        else:
            est = estimate_beta(pair, n, eps, oracle).estimate
            log_beta = math.log(est) if est > 0 else -math.inf
        center = -n * pair.d
        diff = log_sub_exp(max(log_beta, center), min(log_beta, center))
        if diff < log_delta:
            return CssResult(n, math.exp(diff), n_max)
    return CssResult(None, math.nan, n_max)
