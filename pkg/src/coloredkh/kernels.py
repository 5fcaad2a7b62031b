"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``COLOREDKH_PURE=1`` to force the pure-Python kernels.
"""
from __future__ import annotations

import os

from . import _fallback

DEFAULT_PRIME = 2_147_483_647  # 2^31 - 1

try:
    if os.environ.get("COLOREDKH_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

COMPILED = _compiled is not None


def state_loop_counts(zero, one, narcs: int):
    if _compiled is not None:
        return _compiled.state_loop_counts(zero, one, narcs).tolist()
    return _fallback.state_loop_counts(zero, one, narcs)


def reduce_columns(columns, nrows: int, modulus: int = DEFAULT_PRIME) -> list[int]:
    """Pivot rows of the column-reduced matrix; ``modulus=0`` means exact over Q."""
    if _compiled is not None and 0 < modulus < (1 << 31):
        return _compiled.reduce_columns(columns, nrows, modulus)
    return _fallback.reduce_columns(columns, nrows, modulus)
