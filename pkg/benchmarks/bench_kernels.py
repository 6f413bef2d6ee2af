#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Micro benchmarks call both backend modules directly on the same inputs;
the macro benchmark re-runs a full workload in a subprocess with
DIGITOPO_PURE_KERNELS toggled, so module-level memo tables start cold.

Usage: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from digitopo._kernels import _pure  # noqa: E402

try:
    from digitopo._kernels import _core  # type: ignore
    import importlib

    _core = importlib.import_module("digitopo._kernels._core")
except ImportError:
    _core = None


def _inputs():
    """Workloads shaped like the package's real call sites.

    Contractibility rows use small or honestly contractible graphs; the
    exact decision on large non-contractible graphs with many deletable
    vertices is exponential by nature and is not a kernel call the package
    makes (reduction only ever tests rim-sized graphs).
    """
    import random

    from digitopo.catalog import get
    from digitopo.classify import minimal_sphere
    from digitopo.covers import BoxCell
    from digitopo.digitizer import cubical_model, model_graph, shape_circle
    from digitopo.graph import build_graph

    rng = random.Random(11)
    canon_graphs = {
        "torus16": get("torus16").graph,
        "rp11": get("rp11").graph,
        "minimal 3-sphere": minimal_sphere(3),
        "minimal 4-sphere": minimal_sphere(4),
        "circle model (1/4)": model_graph(
            cubical_model(shape_circle(), BoxCell.make([-2, -2], [2, 2]), "1/4")
        ),
    }
    k = 12
    wheel = build_graph(
        [f"c{i}" for i in range(k)] + ["hub"],
        [(f"c{i}", f"c{(i + 1) % k}") for i in range(k)] + [(f"c{i}", "hub") for i in range(k)],
    )
    contract_graphs = {
        "wheel-12 (contractible)": wheel,
        "torus16 (irreducible)": get("torus16").graph,
        "minimal 3-sphere (irreducible)": minimal_sphere(3),
    }
    return canon_graphs, contract_graphs


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _table(rows_spec, backends):
    print(f"{'workload':40s}" + "".join(f"{name:>12s}" for name, _ in backends) + f"{'speedup':>10s}")
    for label, g, call in rows_spec:
        n, rows = g.order, g._rows
        times = []
        for _, mod in backends:
            times.append(_time(lambda m=mod: call(m, n, rows)))
        line = f"{label:40s}"
        for t in times:
            line += f"{t * 1e3:>10.2f}ms"
        if len(times) == 2 and times[1]:
            line += f"{times[0] / times[1]:>9.1f}x"
        print(line)


def micro():
    canon_graphs, contract_graphs = _inputs()
    backends = [("pure", _pure)] + ([("compiled", _core)] if _core else [])
    spec = []
    for gname, g in canon_graphs.items():
        spec.append((f"canon_bytes {gname}", g, lambda m, n, r: m.canon_bytes(n, r)))
    for gname, g in contract_graphs.items():
        spec.append(
            (
                f"is_contractible {gname}",
                g,
                lambda m, n, r: (m.clear_caches(), m.is_contractible(n, r)),
            )
        )
    for gname, g in canon_graphs.items():
        if g.order <= 20:
            spec.append((f"clique_counts {gname}", g, lambda m, n, r: m.clique_counts(n, r, 9)))
    _table(spec, backends)


_MACRO = """
import time
import digitopo
from digitopo.classify import is_n_sphere, minimal_sphere
from digitopo.covers import BoxCell
from digitopo.digitizer import digitize_reduce, shape_circle

t = time.perf_counter()
assert is_n_sphere(minimal_sphere(3), 3).ok
rep = digitize_reduce(shape_circle(), BoxCell.make([-2, -2], [2, 2]), "1/4")
assert rep.euler == 0
print(f"{digitopo.KERNEL_BACKEND}: {time.perf_counter() - t:.3f}s "
      f"(3-sphere recognition + circle digitization at pitch 1/4)")
"""


def macro():
    print("\nmacro workload, cold caches per process:")
    sys.stdout.flush()
    for pure in ("0", "1"):
        env = dict(os.environ, DIGITOPO_PURE_KERNELS=pure)
        subprocess.run([sys.executable, "-c", _MACRO], env=env, check=True)


if __name__ == "__main__":
    if _core is None:
        print("compiled kernels not built; showing pure timings only\n")
    micro()
    macro()
