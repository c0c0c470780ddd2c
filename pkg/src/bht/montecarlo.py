"""Seeded simulation of LLR sums, Type II error estimates and tail checks.

Random numbers come from NumPy's Philox4x64 counter-based generator.  Trials
are cut into canonical blocks of ``BLOCK_SIZE``; block ``b`` for hypothesis
``h`` at length ``n`` draws from its own stream keyed by
``SeedSequence(seed, spawn_key=(h, n, b))``.  ``stream_chunks`` only decides
how blocks are grouped into work items, so results do not depend on it, and a
run with N samples is a prefix of any longer run with the same seed.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .distributions import HypothesisPair
from .errors import DegeneratePair, DomainError

BLOCK_SIZE = 4096
LARGE_NUM_SAMPLES = 2_500_000
_HYPOTHESES = {"P": 0, "Q": 1}


@dataclass(frozen=True)
class McConfig:
    num_samples: int = 100_000
    seed: int = 0
    stream_chunks: int = 1

    def __post_init__(self):
        if self.num_samples < 1:
            raise DomainError(f"num_samples must be >= 1, got {self.num_samples}")
        if self.stream_chunks < 1:
            raise DomainError(f"stream_chunks must be >= 1, got {self.stream_chunks}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    num_samples: int
    threshold: float = math.nan
    resolved: bool = True

    @classmethod
    def proportion(cls, hits: int, num_samples: int, **kw) -> McEstimate:
        est = hits / num_samples
        return cls(est, math.sqrt(est * (1.0 - est) / num_samples), num_samples, **kw)


@dataclass(frozen=True)
class ConcentrationResult:
    delta: float
    empirical: McEstimate
    bound: float
    passed: bool
    degenerate: bool = False


def max_threads() -> int:
    env = os.environ.get("BHT_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _block_stream(seed: int, hyp: int, n: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(hyp, n, block))
    return np.random.Generator(np.random.Philox(ss))


def sample_llr_sums(pair: HypothesisPair, n: int, hypothesis: str, config: McConfig) -> np.ndarray:
    """``num_samples`` i.i.d. draws of sum_i llr(X_i), X_i ~ P or Q."""
    if hypothesis not in _HYPOTHESES:
        raise DomainError(f"hypothesis must be 'P' or 'Q', got {hypothesis!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    hyp = _HYPOTHESES[hypothesis]
    s = pair.support
    masses = (pair.p if hyp == 0 else pair.q).masses[s]
    cdf = np.cumsum(masses)
    cdf[-1] = 1.0
    llr = np.ascontiguousarray(pair.llr[s])

    total = config.num_samples
    n_blocks = -(-total // BLOCK_SIZE)
    out = np.empty(total)

    def run(blocks):
        for b in blocks:
            lo = b * BLOCK_SIZE
            rows = min(BLOCK_SIZE, total - lo)
            u = _block_stream(config.seed, hyp, n, b).random((rows, n))
            out[lo:lo + rows] = kernels.llr_block_sums(u, cdf, llr)

    groups = [g for g in np.array_split(np.arange(n_blocks), config.stream_chunks) if len(g)]
    workers = min(len(groups), max_threads())
    if workers <= 1:
        for g in groups:
            run(g)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, groups))
    return out


def estimate_beta(pair: HypothesisPair, n: int, epsilon: float, config: McConfig) -> McEstimate:
    """Plug-in estimate of the Type II error of the empirical threshold test.

    The threshold is the lower empirical eps-quantile of the LLR sums under P,
    chosen as the largest sample value with at most eps*N samples strictly
    below it; the estimate is the fraction of Q-samples at or above it.
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon {epsilon!r} outside (0, 1)")
    num = config.num_samples
    sp = np.sort(sample_llr_sums(pair, n, "P", config))
    sq = sample_llr_sums(pair, n, "Q", config)
    k = math.floor(epsilon * num * (1.0 + 1e-12))
    if k >= num:
        return McEstimate(0.0, 0.0, num, math.inf, resolved=False)
    threshold = float(sp[k])
    hits = int(np.count_nonzero(sq >= threshold))
    return McEstimate.proportion(hits, num, threshold=threshold, resolved=hits > 0)


def concentration_sweep(pair: HypothesisPair, n: int, deltas, config: McConfig) -> list[ConcentrationResult]:
    """Empirical P^n(|D_hat - D| >= delta) against exp(-n delta^2 / (2 C_X^2)).

    One set of P-samples serves every delta.
    """
    deltas = [float(x) for x in deltas]
    if any(x <= 0 for x in deltas):
        raise DomainError("deltas must be > 0")
    if pair.c_x == 0.0:
        warnings.warn("C_X = 0: concentration bound is vacuous", DegeneratePair, stacklevel=2)
        zero = McEstimate(0.0, 0.0, config.num_samples)
        return [ConcentrationResult(x, zero, 1.0, True, degenerate=True) for x in deltas]
    dev = np.abs(sample_llr_sums(pair, n, "P", config) / n - pair.d)
    out = []
    for x in deltas:
        emp = McEstimate.proportion(int(np.count_nonzero(dev >= x)), config.num_samples)
        bound = math.exp(-n * x * x / (2.0 * pair.c_x**2))
        out.append(ConcentrationResult(x, emp, bound, emp.estimate <= bound + 3.0 * emp.stderr))
    return out


def concentration_check(pair: HypothesisPair, n: int, delta: float, config: McConfig) -> ConcentrationResult:
    return concentration_sweep(pair, n, [delta], config)[0]
