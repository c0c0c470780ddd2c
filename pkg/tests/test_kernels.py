import importlib
import math

import numpy as np
import pytest

from bht import _pykernels, kernels

ckernels = pytest.importorskip("bht._ckernels")


@pytest.mark.parametrize("n, m", [(0, 2), (5, 1), (6, 2), (7, 3), (9, 4)])
def test_compositions(n, m):
    py = _pykernels.compositions(n, m)
    assert py.shape == (math.comb(n + m - 1, m - 1), m)
    assert (py.sum(axis=1) == n).all()
    assert len({tuple(r) for r in py}) == len(py)
    assert np.array_equal(ckernels.compositions(n, m), py)


def test_type_stats_parity():
    rng = np.random.default_rng(0)
    p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
    lp, lq = np.log(p), np.log(q)
    counts = _pykernels.compositions(12, 4)
    log_fact = np.array([math.lgamma(k + 1) for k in range(13)])
    a = _pykernels.type_log_stats(counts, lp, lq, lp - lq, log_fact)
    b = ckernels.type_log_stats(counts, lp, lq, lp - lq, log_fact)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_block_sums_parity():
    rng = np.random.default_rng(1)
    p, q = rng.dirichlet(np.ones(5)), rng.dirichlet(np.ones(5))
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    llr = np.log(p) - np.log(q)
    u = rng.random((500, 37))
    assert np.array_equal(_pykernels.llr_block_sums(u, cdf, llr), ckernels.llr_block_sums(u, cdf, llr))


def test_backend_override(monkeypatch):
    monkeypatch.setenv("BHT_PURE_PYTHON", "1")
    try:
        assert importlib.reload(kernels).BACKEND == "python"
    finally:
        monkeypatch.delenv("BHT_PURE_PYTHON")
        importlib.reload(kernels)
    assert kernels.BACKEND == "cython"
