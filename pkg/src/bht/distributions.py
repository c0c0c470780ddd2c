"""Finite-alphabet distributions and the information measures of a pair.

All logarithms are natural; divergences are in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    AlphabetSizeMismatch,
    AlphabetTooSmall,
    DomainError,
    NegativeMass,
    RateOutOfRange,
    SumOutOfTolerance,
    SupportMismatch,
    TargetUnreachable,
    TiltOutOfRange,
)
from .settings import DEFAULT_SETTINGS, Settings


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    masses: np.ndarray
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.masses)

    @property
    def support(self) -> np.ndarray:
        return self.masses > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.masses, other.masses)

    def __hash__(self) -> int:
        return hash((self.masses.tobytes(), self.labels))


def validate_distribution(
    masses: Sequence[float],
    tolerance: float | None = None,
    labels: Sequence[str] | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> DiscreteDistribution:
    """Check a probability vector and renormalize it by its exact sum."""
    tol = settings.sum_tol if tolerance is None else tolerance
    a = np.asarray(masses, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise DomainError("masses must be a non-empty vector")
    if not np.all(np.isfinite(a)):
        raise DomainError("masses must be finite")
    if np.any(a < 0):
        raise NegativeMass(f"negative mass at index {int(np.argmin(a))}: {a.min()!r}")
    total = math.fsum(a)
    if abs(total - 1.0) > tol:
        raise SumOutOfTolerance(f"masses sum to {total!r}, outside 1 +/- {tol:g}")
    if a.size < 2:
        raise AlphabetTooSmall(f"alphabet size {a.size} < 2")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != a.size:
            raise DomainError(f"{len(labels)} labels for {a.size} masses")
    return DiscreteDistribution(_frozen(a / total), labels)


def kl_divergence(a: np.ndarray, b: np.ndarray) -> float:
    """D(a||b) in nats; requires a << b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    s = a > 0
    if np.any(b[s] <= 0):
        return math.inf
    return float(np.sum(a[s] * (np.log(a[s]) - np.log(b[s]))))


@dataclass(frozen=True, eq=False)
class HypothesisPair:
    """Null P against alternative Q on a common finite alphabet.

    ``llr[x] = ln(p[x]/q[x])`` on the support and 0 off it.
    """

    p: DiscreteDistribution
    q: DiscreteDistribution
    llr: np.ndarray
    d: float
    v: float
    c_x: float
    support: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.p.size

    @property
    def reverse_d(self) -> float:
        """D(Q||P), the largest rate reachable by the tilted family."""
        return kl_divergence(self.q.masses, self.p.masses)


def make_pair(p: DiscreteDistribution, q: DiscreteDistribution) -> HypothesisPair:
    if p.size != q.size:
        raise AlphabetSizeMismatch(f"alphabet sizes differ: {p.size} vs {q.size}")
    sp, sq = p.support, q.support
    if not np.array_equal(sp, sq):
        bad = np.flatnonzero(sp != sq)
        raise SupportMismatch(f"supports differ at symbols {bad.tolist()}; C_X would be infinite")
    pm, qm = p.masses[sp], q.masses[sp]
    llr = np.zeros(p.size)
    llr[sp] = np.log(pm) - np.log(qm)
    d = float(np.dot(pm, llr[sp]))
    v = float(np.dot(pm, (llr[sp] - d) ** 2))
    c_x = float(np.max(np.abs(llr[sp])))
    # Gibbs: tiny negative values are rounding noise
    d = max(d, 0.0)
    return HypothesisPair(p, q, _frozen(llr), d, v, c_x, support=_frozen(sp).astype(bool))


def pair_from_masses(p: Sequence[float], q: Sequence[float], labels=None) -> HypothesisPair:
    return make_pair(validate_distribution(p, labels=labels), validate_distribution(q, labels=labels))


def tilted(pair: HypothesisPair, t: float) -> DiscreteDistribution:
    """Normalized geometric mixture proportional to P^(1-t) Q^t."""
    if not 0.0 <= t <= 1.0:
        raise TiltOutOfRange(f"tilt {t!r} outside [0, 1]")
    if t == 0.0:
        return pair.p
    if t == 1.0:
        return pair.q
    s = pair.support
    logw = (1.0 - t) * np.log(pair.p.masses[s]) + t * np.log(pair.q.masses[s])
    logw -= logw.max()
    w = np.exp(logw)
    out = np.zeros(pair.size)
    out[s] = w / w.sum()
    return DiscreteDistribution(_frozen(out), pair.p.labels)


def tilt_rate(pair: HypothesisPair, t: float) -> float:
    """D(P_t||P)."""
    return kl_divergence(tilted(pair, t).masses, pair.p.masses)


def solve_tilt_rate(pair: HypothesisPair, r: float, settings: Settings = DEFAULT_SETTINGS) -> float:
    """Find t in [0, 1] with D(P_t||P) = r by bisection."""
    upper = pair.reverse_d
    if r < 0 or r > upper + settings.bisection_tol:
        raise RateOutOfRange(f"rate {r!r} outside [0, D(Q||P)={upper!r}]")
    if r <= 0.0:
        return 0.0
    if r >= upper:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if tilt_rate(pair, mid) < r:
            lo = mid
        else:
            hi = mid
    t = lo if abs(tilt_rate(pair, lo) - r) <= abs(tilt_rate(pair, hi) - r) else hi
    return t


def nakagawa_exponent(pair: HypothesisPair, r: float, settings: Settings = DEFAULT_SETTINGS) -> float:
    """Type II exponent D(P_t*||Q) when the Type I budget decays like e^{-rn}."""
    if not 0.0 < r < pair.d:
        raise RateOutOfRange(f"rate {r!r} outside (0, D(P||Q)={pair.d!r})")
    t_star = solve_tilt_rate(pair, r, settings)
    return kl_divergence(tilted(pair, t_star).masses, pair.q.masses)


def _floored_simplex(rng: np.random.Generator, m: int, min_mass: float, alpha: float) -> np.ndarray:
    return min_mass + (1.0 - m * min_mass) * rng.dirichlet(np.full(m, alpha))


def synthesize_pair(
    m: int,
    target_d: float,
    min_mass: float = 1e-3,
    seed: int = 0,
    max_retries: int = 64,
) -> HypothesisPair:
    """Seeded pair with full support, masses >= ``min_mass`` and D(P||Q) = ``target_d``.

    A random anchor pair (P, Q0) is drawn and Q is placed on the segment
    Q_lam = (1 - lam) P + lam Q0; D(P||Q_lam) is convex in lam and zero at 0,
    hence increasing, so lam is found by bisection.
    """
    if m < 2:
        raise AlphabetTooSmall(f"alphabet size {m} < 2")
    if not 0.0 <= min_mass or min_mass * m >= 1.0:
        raise DomainError(f"min_mass {min_mass!r} infeasible for m={m}")
    if target_d < 0:
        raise DomainError(f"target divergence {target_d!r} < 0")
    # every llr is at most ln(1/min_mass), and so is D
    if min_mass > 0 and target_d > math.log(1.0 / min_mass):
        raise TargetUnreachable(f"D={target_d!r} exceeds ln(1/min_mass)={math.log(1 / min_mass):.6g}")

    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        p = _floored_simplex(rng, m, min_mass, 0.5)
        q0 = _floored_simplex(rng, m, min_mass, 0.5)
        if target_d == 0.0:
            return make_pair(validate_distribution(p), validate_distribution(p))
        if kl_divergence(p, q0) < target_d:
            continue
        lo, hi = 0.0, 1.0
        for _ in range(200):
            lam = 0.5 * (lo + hi)
            if lam in (lo, hi):
                break
            if kl_divergence(p, (1 - lam) * p + lam * q0) < target_d:
                lo = lam
            else:
                hi = lam
        q = (1 - hi) * p + hi * q0
        return make_pair(validate_distribution(p), validate_distribution(q))
    raise TargetUnreachable(f"no anchor pair reached D={target_d!r} in {max_retries} draws")
