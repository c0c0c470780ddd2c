"""Cross-checks of the bounds against the oracles for one model."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import bounds_for_epsilon
from .distributions import HypothesisPair
from .errors import EnumerationTooLarge
from .exact_np import beta_exact_many
from .montecarlo import ConcentrationResult, McConfig, concentration_sweep
from .schedules import STANDARD_SCHEDULES, EpsilonSchedule, epsilon_at

# bound levels at which the concentration inequality is probed
BOUND_TARGETS = (0.5, 0.2, 0.1, 0.05, 0.01, 0.001)


@dataclass(frozen=True)
class SandwichViolation:
    schedule: str
    n: int
    log_lb: float
    log_beta: float
    log_ub: float


@dataclass
class SandwichReport:
    checked: int = 0
    n_reached: int = 0
    violations: list[SandwichViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def sandwich_check(
    pair: HypothesisPair,
    schedules: tuple[EpsilonSchedule, ...] = STANDARD_SCHEDULES,
    n_max: int = 200,
    log_rtol: float = 1e-9,
) -> SandwichReport:
    """Check clamp(LB) <= beta_exact <= clamp(UB) at every admissible n <= n_max.

    Comparisons are in log space with relative slack ``log_rtol`` for
    rounding; stops quietly where enumeration becomes infeasible.
    """
    report = SandwichReport()
    for n in range(1, n_max + 1):
        active = [s for s in schedules if s.admissible(n)]
        if not active:
            continue
        eps = [epsilon_at(s, n) for s in active]
        try:
            results = beta_exact_many(pair, n, eps)
        except EnumerationTooLarge:
            break
        report.n_reached = n
        for s, e, r in zip(active, eps, results):
            b = bounds_for_epsilon(pair.d, pair.c_x, e, n)
            lb, beta, ub = b.log_lb.log, r.beta.log, b.log_ub.log
            slack = log_rtol * max(1.0, abs(beta) if math.isfinite(beta) else 1.0)
            report.checked += 1
            if beta > ub + slack or beta < lb - slack:
                report.violations.append(SandwichViolation(str(s), n, lb, beta, ub))
    return report


def concentration_deltas(c_x: float, n: int, targets=BOUND_TARGETS) -> list[float]:
    """Deviations at which exp(-n delta^2 / (2 C_X^2)) equals each target."""
    return [c_x * math.sqrt(2.0 * math.log(1.0 / b) / n) for b in targets]


def concentration_suite(
    pair: HypothesisPair,
    ns=(10, 50, 200),
    config: McConfig = McConfig(1_000_000, 0),
) -> list[tuple[int, ConcentrationResult]]:
    out = []
    for n in ns:
        for r in concentration_sweep(pair, n, concentration_deltas(pair.c_x, n) if pair.c_x else [1.0], config):
            out.append((n, r))
    return out
