"""Backend selection for the hot loops.

The compiled extension ``surjunct._kernels`` is used when it was built;
otherwise the numpy/pure-Python versions in ``_kernels_py`` are used.
Setting ``SURJUNCT_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("SURJUNCT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND


def backends() -> dict:
    """All importable backends by name (used by tests and benchmarks)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["cython"] = _kernels
    except ImportError:
        pass
    return out


def image_codes(k: int, n_sites: int, gather, table) -> np.ndarray:
    gather = np.asarray(gather, dtype=np.int64)
    if gather.size == 0:
        gather = np.zeros((0, 1), dtype=np.int64)
    else:
        gather = gather.reshape(len(gather), -1)
    gather = np.ascontiguousarray(gather)
    table = np.ascontiguousarray(table, dtype=np.int64)
    return _impl.image_codes(int(k), int(n_sites), gather, table)


def residual_shortest_path(p: int, s: int, goal: int, pairs, weights) -> int:
    pairs = np.ascontiguousarray(np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    return int(_impl.residual_shortest_path(int(p), int(s), int(goal), pairs, weights))
