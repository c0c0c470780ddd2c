"""Kernel backend selected at import.

The compiled ``_ckernels`` extension is used when importable; set
``BHT_PURE_PYTHON=1`` to force the NumPy fallback.
"""
import os

if os.environ.get("BHT_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

compositions = _impl.compositions
type_log_stats = _impl.type_log_stats
llr_block_sums = _impl.llr_block_sums

__all__ = ["BACKEND", "compositions", "type_log_stats", "llr_block_sums"]
