"""Finite-n bounds on the optimal Type II error and asymptotic references.

For a pair with divergence D and bounded-difference constant C_X, and a
Type I budget eps at block length n, with

    delta_n = C_X * sqrt(2 ln(1/eps) / n)

the optimal Type II error satisfies

    LB = (1 - eps - delta_n) * exp(-n (D + delta_n))
       <= beta_n(eps) <=
    UB = exp(-n (D - delta_n)).

UB is clamped at 1 and LB at 0 (when ``1 - eps - delta_n <= 0``).  Both are
carried as :class:`LogValue` because they underflow doubles for moderate n.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .distributions import HypothesisPair, nakagawa_exponent
from .errors import DomainError, InconsistentMeasures, OutOfDomain
from .logvalue import LogValue, log_sub_exp
from .schedules import EpsilonSchedule, epsilon_at


@dataclass(frozen=True)
class BoundsResult:
    n: int
    epsilon_n: float
    delta_n: float
    exp_lower: float
    exp_upper: float  # +inf when the lower bound is void
    log_ub: LogValue
    log_lb: LogValue
    lb_valid: bool

    @property
    def ub(self) -> float:
        return self.log_ub.to_float()

    @property
    def lb(self) -> float:
        return self.log_lb.to_float()

    @property
    def lb_certified(self) -> bool:
        """True when eps_n <= delta_n, where the (1 - eps - delta) prefactor is rigorous.

        Outside that range the lower bound can exceed the true optimum.
        """
        return self.lb_valid and self.epsilon_n <= self.delta_n


@dataclass(frozen=True)
class ExponentTriple:
    stein: float
    nakagawa: float
    strassen: float


def delta_n(c_x: float, epsilon: float, n: int) -> float:
    """Concentration slack C_X * sqrt(2 ln(1/eps) / n)."""
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon!r} outside (0, 1]")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if c_x == 0.0:
        return 0.0
    return c_x * math.sqrt(2.0 * math.log(1.0 / epsilon) / n)


def bounds_for_epsilon(d: float, c_x: float, epsilon: float, n: int) -> BoundsResult:
    dn = delta_n(c_x, epsilon, n)
    exp_lower = d - dn
    log_ub = min(0.0, -n * exp_lower)
    slack = 1.0 - epsilon - dn
    if slack > 0.0:
        exp_upper = d - math.log(slack) / n + dn
        log_lb = LogValue(-n * (d + dn) + math.log(slack))
    else:
        exp_upper = math.inf
        log_lb = LogValue.zero()
    return BoundsResult(n, epsilon, dn, exp_lower, exp_upper, LogValue(log_ub), log_lb, slack > 0.0)


def bounds_at(pair: HypothesisPair, schedule: EpsilonSchedule, n: int) -> BoundsResult:
    return bounds_for_epsilon(pair.d, pair.c_x, epsilon_at(schedule, n), n)


def check_abstract_measures(d: float, c_x: float) -> None:
    if d < 0 or c_x < 0:
        raise DomainError(f"measures must be nonnegative, got d={d!r}, c_x={c_x!r}")
    if c_x < d:
        warnings.warn(
            f"C_X={c_x!r} < D={d!r}: no pair of distributions has these measures",
            InconsistentMeasures,
            stacklevel=3,
        )


def bounds_at_abstract(d: float, c_x: float, schedule: EpsilonSchedule, n: int) -> BoundsResult:
    """Same bounds from scalar D and C_X, for models known only by their measures."""
    check_abstract_measures(d, c_x)
    return bounds_for_epsilon(d, c_x, epsilon_at(schedule, n), n)


def gap(result: BoundsResult) -> LogValue:
    """Width UB - LB of the feasibility interval."""
    if not result.lb_valid:
        return result.log_ub
    return LogValue(log_sub_exp(result.log_ub.log, result.log_lb.log))


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


# Acklam's rational approximation, relative error ~1.15e-9 before refinement
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
        den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        return num / den
    q = p - 0.5
    r = q * q
    num = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
    den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    return num / den


def inverse_normal_cdf(p: float) -> float:
    """Standard normal quantile.

    The lower half is approximated rationally and polished with one Halley
    step against ``erfc``; the upper half follows by symmetry so that 1 - p
    never loses precision to cancellation.
    """
    if not 0.0 < p < 1.0:
        raise OutOfDomain(f"quantile level {p!r} outside (0, 1)")
    if p > 0.5:
        return -inverse_normal_cdf(1.0 - p)
    if p == 0.5:
        return 0.0
    x = _acklam(p)
    e = norm_cdf(x) - p
    u = e * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def strassen_exponent_scalar(d: float, v: float, epsilon: float, n: int) -> float:
    return d + math.sqrt(v / n) * inverse_normal_cdf(epsilon) + math.log(n) / (2.0 * n)


def strassen_exponent(pair: HypothesisPair, epsilon: float, n: int) -> float:
    """Second-order expansion of -(1/n) ln beta_n(eps) for fixed eps, O(1/n) term dropped."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return strassen_exponent_scalar(pair.d, pair.v, epsilon, n)


def exponent_triple(pair: HypothesisPair, rate: float, epsilon: float, n: int) -> ExponentTriple:
    return ExponentTriple(
        stein=pair.d,
        nakagawa=nakagawa_exponent(pair, rate),
        strassen=strassen_exponent(pair, epsilon, n),
    )
