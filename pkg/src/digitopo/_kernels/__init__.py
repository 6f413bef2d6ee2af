"""Kernel backend selection.

The compiled extension (`_core`, Cython) and the pure-Python module
(`_pure`) implement the same four calls with identical semantics:

    canon_bytes(n, rows)        exact canonical form of an adjacency-mask graph
    is_contractible(n, rows)    exact reducibility-to-a-point decision
    contraction_order(n, rows)  witnessing deletion order, or None
    clique_counts(n, rows, cap) counts of k-vertex cliques

The compiled backend handles graphs up to 64 vertices; larger graphs route
to the pure backend automatically. Set DIGITOPO_PURE_KERNELS=1 to force the
pure backend (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import importlib
import os

from . import _pure

_core = None
if os.environ.get("DIGITOPO_PURE_KERNELS") != "1":
    try:
        _core = importlib.import_module("digitopo._kernels._core")
    except ImportError:
        _core = None

BACKEND = "compiled" if _core is not None else "pure"


def canon_bytes(n: int, rows) -> bytes:
    if _core is not None and n <= 64:
        return _core.canon_bytes(n, rows)
    return _pure.canon_bytes(n, rows)


def is_contractible(n: int, rows) -> bool:
    if _core is not None and n <= 64:
        return _core.is_contractible(n, rows)
    return _pure.is_contractible(n, rows)


def contraction_order(n: int, rows):
    if _core is not None and n <= 64:
        return _core.contraction_order(n, rows)
    return _pure.contraction_order(n, rows)


def clique_counts(n: int, rows, cap: int = 9) -> list[int]:
    if _core is not None and n <= 64:
        return _core.clique_counts(n, rows, cap)
    return _pure.clique_counts(n, rows, cap)


def connected(n: int, rows) -> bool:
    return _pure.connected(n, rows)


def clear_caches() -> None:
    _pure.clear_caches()
    if _core is not None:
        _core.clear_caches()
