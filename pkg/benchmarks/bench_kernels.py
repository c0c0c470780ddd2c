"""Compiled kernels against the NumPy fallback.

Run ``python benchmarks/bench_kernels.py``.  Kernel timings call both
implementations directly; end-to-end timings run each backend in a fresh
interpreter (``BHT_PURE_PYTHON``) so the import-time selection is exercised.
"""
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from bht import _pykernels

try:
    from bht import _ckernels
except ImportError:
    _ckernels = None


def best(fn, number=3, repeat=5):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def kernel_cases():
    rng = np.random.default_rng(0)
    p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
    lp, lq = np.log(p), np.log(q)
    counts = _pykernels.compositions(120, 4)
    log_fact = np.array([math.lgamma(k + 1) for k in range(121)])
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    u = rng.random((4096, 200))
    return {
        "compositions(120, 4)": lambda k: k.compositions(120, 4),
        f"type_log_stats({len(counts)} types)": lambda k: k.type_log_stats(counts, lp, lq, lp - lq, log_fact),
        "llr_block_sums(4096 x 200)": lambda k: k.llr_block_sums(u, cdf, lp - lq),
    }


END_TO_END = {
    "beta_exact m=4 n=120": (
        "from bht import *; import numpy as np; r=np.random.default_rng(0); "
        "pr=pair_from_masses(r.dirichlet(np.ones(4)), r.dirichlet(np.ones(4))); beta_exact(pr, 120, 0.1)"
    ),
    "estimate_beta m=15 n=200 N=1e5": (
        "from bht import *; pr=synthesize_pair(15, 1.0, seed=0); "
        "estimate_beta(pr, 200, 0.1, McConfig(100_000, 0))"
    ),
}


def end_to_end(stmt, pure):
    env = dict(os.environ, BHT_PURE_PYTHON="1" if pure else "0", BHT_THREADS="1")
    code = f"import time; t=time.perf_counter(); {stmt}; print(time.perf_counter()-t)"
    runs = [float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                 text=True, check=True).stdout) for _ in range(3)]
    return min(runs)


def main():
    if _ckernels is None:
        print("compiled extension not built; nothing to compare")
        return
    print(f"{'case':40s} {'cython':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in kernel_cases().items():
        tc, tp = best(lambda: fn(_ckernels)), best(lambda: fn(_pykernels))
        print(f"{name:40s} {tc * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tc:7.1f}x")
    for name, stmt in END_TO_END.items():
        tc, tp = end_to_end(stmt, False), end_to_end(stmt, True)
        print(f"{name:40s} {tc * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
