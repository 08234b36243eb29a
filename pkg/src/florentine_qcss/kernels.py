"""Kernel selection.

The Cython build is used when importable; set ``FQCSS_PURE=1`` to force the
numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
shift_counts = _kernels_py.shift_counts
norm_counts = _kernels_py.norm_counts

if not os.environ.get("FQCSS_PURE"):
    try:
        from . import _kernels
    except ImportError:  # pragma: no cover - depends on the build
        pass
    else:
        shift_counts = _kernels.shift_counts
        norm_counts = _kernels.norm_counts
        BACKEND = "cython"

__all__ = ["BACKEND", "shift_counts", "norm_counts"]
