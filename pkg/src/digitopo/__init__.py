"""digitopo: digital models of n-dimensional manifolds as simple graphs.

The package builds, classifies and transforms graphs that model continuous
spaces: contractibility and homotopy traces, recursive sphere and manifold
recognizers, clique-complex invariants, box-cover nerves, and cubical
digitization of implicit shapes.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .graph import (
    Graph,
    GraphError,
    ball,
    build_graph,
    canonical_key,
    components,
    edge_rim,
    induced_subgraph,
    is_connected,
    join,
    join_with_map,
    relabeled,
    rim,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Graph",
    "GraphError",
    "ball",
    "build_graph",
    "canonical_key",
    "components",
    "edge_rim",
    "induced_subgraph",
    "is_connected",
    "join",
    "join_with_map",
    "relabeled",
    "rim",
]
