"""NumPy implementations of the hot kernels.

Reference semantics for ``_ckernels.pyx``; both must agree to the last bit on
``type_log_stats`` and ``llr_block_sums`` (accumulation runs over symbols in
index order in both).
"""
import itertools
import math

import numpy as np


def compositions(n, m):
    """All count vectors of length m summing to n, lexicographically ascending."""
    if m == 1:
        return np.array([[n]], dtype=np.int64)
    total = math.comb(n + m - 1, m - 1)
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n + m - 1), m - 1)),
        dtype=np.int64,
        count=total * (m - 1),
    ).reshape(total, m - 1)
    edges = np.empty((total, m + 1), dtype=np.int64)
    edges[:, 0] = -1
    edges[:, 1:m] = bars
    edges[:, m] = n + m - 1
    return np.diff(edges, axis=1) - 1


def _ordered_dot(counts, v):
    acc = counts[:, 0] * v[0]
    for j in range(1, counts.shape[1]):
        acc = acc + counts[:, j] * v[j]
    return acc


def type_log_stats(counts, log_p, log_q, llr, log_fact):
    """Per-type log multinomial count, per-sequence log masses and LLR total."""
    counts = np.asarray(counts, dtype=np.int64)
    n = int(counts[0].sum())
    lf = log_fact[counts]
    neg = lf[:, 0].copy()
    for j in range(1, counts.shape[1]):
        neg = neg + lf[:, j]
    log_count = log_fact[n] - neg
    c = counts.astype(np.float64)
    return log_count, _ordered_dot(c, log_p), _ordered_dot(c, log_q), _ordered_dot(c, llr)


def llr_block_sums(u, cdf, llr):
    """LLR sum of each row of symbols drawn by inverse CDF from uniforms ``u``."""
    u = np.asarray(u, dtype=np.float64)
    rows, n = u.shape
    m = len(cdf)
    idx = np.searchsorted(cdf, u, side="right")
    np.minimum(idx, m - 1, out=idx)
    idx += (np.arange(rows, dtype=np.intp) * m)[:, None]
    counts = np.bincount(idx.ravel(), minlength=rows * m).reshape(rows, m)
    return _ordered_dot(counts.astype(np.float64), np.asarray(llr, dtype=np.float64))
