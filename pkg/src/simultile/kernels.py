"""Backend selection for the pattern-search kernel.

The compiled extension ``_kernels`` is used when it imports; otherwise the
pure-Python twin runs.  Set ``SIMULTILE_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py
from ._kernels_py import RULE_COMPONENT, RULE_RANK

try:
    if os.environ.get("SIMULTILE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

__all__ = ["BACKEND", "RULE_COMPONENT", "RULE_RANK", "min_cover_search", "available_backends"]


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def min_cover_search(n_rows, n_cols, edges, k_lo, k_hi, rule, row_target, col_target,
                     backend: str | None = None):
    """Dispatch to the selected backend; see ``_kernels_py.min_cover_search``."""
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not built")
        impl = _compiled.min_cover_search
    elif backend == "python":
        impl = _kernels_py.min_cover_search
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return impl(n_rows, n_cols, list(edges), k_lo, k_hi, rule, row_target, col_target)
