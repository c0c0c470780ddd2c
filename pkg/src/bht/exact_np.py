"""Exact optimal Type II error by enumerating type classes.

Every length-n sequence with symbol counts k has the same LLR total
sum_x k_x * llr[x] and the same per-sequence masses under P and Q, so the
Neyman-Pearson test can be built over the C(n+m-1, m-1) type classes instead
of the m^n sequences.  The acceptance region is filled greedily from the
highest LLR level down until its P-mass reaches 1 - eps; inside the boundary
level only the minimal integer number of sequences is taken.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .distributions import HypothesisPair
from .errors import DomainError, EnumerationTooLarge, TooLarge
from .logvalue import LogValue
from .settings import DEFAULT_SETTINGS, Settings

# relative slack on the Type I budget; absorbs summation rounding only
_BUDGET_RTOL = 1e-12
# counts below 2^52 are handled as exact integers
_LOG_EXACT = 52 * math.log(2.0)


@dataclass(frozen=True)
class TypeGroup:
    counts: tuple[int, ...]
    sequence_count: int
    log_p_per_seq: LogValue
    log_q_per_seq: LogValue


@dataclass(frozen=True)
class LLRLevel:
    llr_total: float
    groups: tuple[TypeGroup, ...]


@dataclass(frozen=True)
class NPResult:
    """Outcome of the optimal deterministic test at one (n, eps).

    ``beta_threshold`` and ``threshold_type1`` describe the pure threshold
    test that accepts the whole boundary level.
    """

    beta: LogValue
    achieved_type1: float
    threshold_llr: float
    boundary_fraction: float
    beta_threshold: LogValue
    threshold_type1: float
    boundary_q_per_seq: LogValue

    @property
    def beta_float(self) -> float:
        return self.beta.to_float()


@dataclass(frozen=True, eq=False)
class TypeTable:
    """Type classes of one (pair, n), sorted into test order."""

    n: int
    counts: np.ndarray      # (T, s) over the support symbols
    log_count: np.ndarray
    log_p: np.ndarray
    log_q: np.ndarray
    llr: np.ndarray
    level: np.ndarray       # level index, 0 = highest LLR
    level_llr: np.ndarray
    level_end: np.ndarray   # one past the last position of each level
    tail_p: np.ndarray      # P-mass at positions >= k (length T + 1)
    head_log_q: np.ndarray  # log Q-mass of positions < k (length T + 1)

    def __len__(self) -> int:
        return len(self.log_count)


def type_class_count(n: int, m: int) -> int:
    return math.comb(n + m - 1, m - 1)


@functools.lru_cache(maxsize=2)
def _log_factorials(n: int) -> np.ndarray:
    return np.array([math.lgamma(k + 1.0) for k in range(n + 1)])


def _build_table(p: np.ndarray, q: np.ndarray, n: int, merge_tol: float) -> TypeTable:
    log_p_sym, log_q_sym = np.log(p), np.log(q)
    llr_sym = log_p_sym - log_q_sym
    counts = kernels.compositions(n, len(p))
    lf = _log_factorials(n) if n > 0 else np.zeros(1)
    log_count, lp, lq, llr = kernels.type_log_stats(counts, log_p_sym, log_q_sym, llr_sym, lf)
    lex = np.arange(len(counts))

    order = np.lexsort((lex, -llr))
    llr_sorted = llr[order]
    breaks = (llr_sorted[:-1] - llr_sorted[1:]) > merge_tol * max(1, n)
    level_sorted = np.concatenate(([0], np.cumsum(breaks)))
    level = np.empty_like(level_sorted)
    level[order] = level_sorted

    order = np.lexsort((lex, lp, level))
    counts, log_count, lp, lq, llr, level = (a[order] for a in (counts, log_count, lp, lq, llr, level))
    first = np.flatnonzero(np.concatenate(([True], level[1:] != level[:-1])))
    level_llr = llr[first]
    level_end = np.append(first[1:], len(level))

    p_mass = np.exp(log_count + lp)
    tail_p = np.append(np.cumsum(p_mass[::-1])[::-1], 0.0)
    head_log_q = np.concatenate(([-np.inf], np.logaddexp.accumulate(log_count + lq)))
    return TypeTable(n, counts, log_count, lp, lq, llr, level, level_llr, level_end, tail_p, head_log_q)


@functools.lru_cache(maxsize=64)
def _cached_table(p_bytes: bytes, q_bytes: bytes, n: int, merge_tol: float) -> TypeTable:
    return _build_table(np.frombuffer(p_bytes), np.frombuffer(q_bytes), n, merge_tol)


def type_table(pair: HypothesisPair, n: int, settings: Settings = DEFAULT_SETTINGS) -> TypeTable:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    s = pair.support
    size = type_class_count(n, int(s.sum()))
    if size > settings.enumeration_cap:
        raise EnumerationTooLarge(f"{size} type classes exceed the cap {settings.enumeration_cap}")
    p = np.ascontiguousarray(pair.p.masses[s])
    q = np.ascontiguousarray(pair.q.masses[s])
    return _cached_table(p.tobytes(), q.tobytes(), n, settings.level_merge_tol)


def enumerate_levels(pair: HypothesisPair, n: int, settings: Settings = DEFAULT_SETTINGS) -> list[LLRLevel]:
    """Type classes grouped into LLR levels, highest LLR first.

    Count vectors are over the support symbols; sequence counts are exact
    integers.
    """
    table = type_table(pair, n, settings)
    fact = [math.factorial(k) for k in range(n + 1)]
    levels = []
    start = 0
    for lvl, end in enumerate(table.level_end):
        groups = []
        for i in range(start, end):
            k = tuple(int(x) for x in table.counts[i])
            count = fact[n]
            for x in k:
                count //= fact[x]
            groups.append(TypeGroup(k, count, LogValue(float(table.log_p[i])), LogValue(float(table.log_q[i]))))
        levels.append(LLRLevel(float(table.level_llr[lvl]), tuple(groups)))
        start = end
    return levels


def np_from_table(table: TypeTable, epsilon: float) -> NPResult:
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon!r} outside [0, 1]")
    budget = epsilon * (1.0 + _BUDGET_RTOL)
    if budget >= table.tail_p[0]:
        return NPResult(LogValue.zero(), 1.0, math.inf, 0.0, LogValue.zero(), 1.0, LogValue.zero())

    rem_after = table.tail_p[1:]
    # first position whose strict tail fits in the budget; rem_after is non-increasing
    k = int(np.searchsorted(-rem_after, -budget, side="left"))
    rem_before = float(table.tail_p[k])
    log_p_seq = float(table.log_p[k])
    log_n_seq = float(table.log_count[k])
    deficit = rem_before - budget
    if deficit <= 0.0:
        log_j = -math.inf
    else:
        log_x = math.log(deficit) - log_p_seq
        if log_x < _LOG_EXACT:
            p_seq = math.exp(log_p_seq)
            x = math.exp(log_x)
            j = max(math.ceil(x - 1e-9 * max(1.0, x)), 0)
            if rem_before - j * p_seq > budget:
                j += 1
            if log_n_seq < _LOG_EXACT:
                j = min(j, round(math.exp(log_n_seq)))
            log_j = math.log(j) if j > 0 else -math.inf
        else:
            # a float count cannot resolve single sequences here
            log_j = min(log_x, log_n_seq)
    achieved = max(rem_before - math.exp(log_j + log_p_seq), 0.0)

    log_beta = float(table.head_log_q[k])
    if log_j > -math.inf:
        log_beta = float(np.logaddexp(log_beta, log_j + table.log_q[k]))

    lvl = int(table.level[k])
    lvl_start = int(table.level_end[lvl - 1]) if lvl > 0 else 0
    lvl_end = int(table.level_end[lvl])
    lc = table.log_count[lvl_start:lvl_end]
    log_total = float(np.logaddexp.reduce(lc))
    taken = -math.inf
    if k > lvl_start:
        taken = float(np.logaddexp.reduce(lc[: k - lvl_start]))
    taken = float(np.logaddexp(taken, log_j))
    fraction = min(math.exp(taken - log_total), 1.0)

    return NPResult(
        beta=LogValue(min(float(log_beta), 0.0)),
        achieved_type1=achieved,
        threshold_llr=float(table.level_llr[lvl]),
        boundary_fraction=fraction,
        beta_threshold=LogValue(min(float(table.head_log_q[lvl_end]), 0.0)),
        threshold_type1=float(table.tail_p[lvl_end]),
        boundary_q_per_seq=LogValue(float(table.log_q[k])),
    )


def beta_exact(pair: HypothesisPair, n: int, epsilon: float, settings: Settings = DEFAULT_SETTINGS) -> NPResult:
    """Minimum Q^n(A) over deterministic acceptance regions A with P^n(A^c) <= eps."""
    return np_from_table(type_table(pair, n, settings), epsilon)


def beta_exact_many(pair: HypothesisPair, n: int, epsilons, settings: Settings = DEFAULT_SETTINGS) -> list[NPResult]:
    table = type_table(pair, n, settings)
    return [np_from_table(table, e) for e in epsilons]


def beta_bruteforce(pair: HypothesisPair, n: int, epsilon: float, max_sequences: int = 20) -> NPResult:
    """Exhaustive minimum of Q^n(A) over all 2^(m^n) subsets A."""
    m = pair.size
    if m**n > max_sequences:
        raise TooLarge(f"{m}^{n} sequences exceed {max_sequences}")
    if not 0.0 <= epsilon <= 1.0:
        raise DomainError(f"epsilon {epsilon!r} outside [0, 1]")
    seqs = list(itertools.product(range(m), repeat=n))
    pm = np.array([math.prod(pair.p.masses[x] for x in s) for s in seqs])
    qm = np.array([math.prod(pair.q.masses[x] for x in s) for s in seqs])
    num = len(seqs)
    budget = epsilon * (1.0 + _BUDGET_RTOL)
    shifts = np.arange(num, dtype=np.int64)
    best_q, best_t1 = math.inf, math.nan
    chunk = 1 << 16
    for start in range(0, 1 << num, chunk):
        masks = np.arange(start, min(start + chunk, 1 << num), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float64)
        p_in = bits @ pm
        q_in = bits @ qm
        t1 = 1.0 - p_in
        ok = t1 <= budget
        if not ok.any():
            continue
        i = np.flatnonzero(ok)[np.argmin(q_in[ok])]
        if q_in[i] < best_q:
            best_q, best_t1 = float(q_in[i]), float(max(t1[i], 0.0))
    beta = LogValue.from_float(max(best_q, 0.0))
    return NPResult(beta, best_t1, math.nan, math.nan, beta, best_t1, LogValue.zero())
