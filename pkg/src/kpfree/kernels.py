"""Kernel selection.

The compiled extension is used when it imported cleanly and the graph fits in
64-bit masks; otherwise every call routes to the pure-Python kernels. Set
``KPFREE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from kpfree import _pykernels
from kpfree._pykernels import NodeLimitExceeded, popcount

_compiled = None
if not os.environ.get("KPFREE_PURE_PYTHON"):
    try:
        from kpfree import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernels.BACKEND

__all__ = [
    "BACKEND",
    "NodeLimitExceeded",
    "popcount",
    "count_cliques",
    "has_clique",
    "list_cliques",
    "search_partition",
    "max_kpfree",
    "backend_for",
]


def backend_for(n: int):
    if _compiled is not None and n <= _compiled.MAX_N:
        return _compiled
    return _pykernels


def count_cliques(adj: list[int], mask: int, t: int) -> int:
    return backend_for(len(adj)).count_cliques(adj, mask, t)


def has_clique(adj: list[int], mask: int, t: int) -> bool:
    return bool(backend_for(len(adj)).has_clique(adj, mask, t))


def list_cliques(adj: list[int], mask: int, t: int, cap: int = -1) -> list[int]:
    return backend_for(len(adj)).list_cliques(adj, mask, t, cap)


def search_partition(adj, order, parts, node_limit: int = 0):
    return backend_for(len(adj)).search_partition(adj, list(order), list(parts), node_limit)


def max_kpfree(adj, p: int, collect: int = 1, node_limit: int = 0):
    return backend_for(len(adj)).max_kpfree(adj, p, collect, node_limit)
