"""Kernel backend selection: compiled extension if built, NumPy otherwise.

Set GRAPHPOLY_PURE=1 to force the pure backend (used by the parity tests
and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GRAPHPOLY_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

eval_grid = _impl.eval_grid
count_zeros_set = _impl.count_zeros_set
count_zeros_single_linear = _impl.count_zeros_single_linear
count_rank_lt = _impl.count_rank_lt
psi_eval_batch = _impl.psi_eval_batch
rank_mod = _kernels_py.rank_mod


def backend_name() -> str:
    return BACKEND
