"""Reading and writing graphs: JSON objects, plain edge lists, DOT export."""

from __future__ import annotations

import json
from typing import Any

from .graph import Graph, GraphError, build_graph


def graph_to_obj(g: Graph) -> dict[str, Any]:
    """JSON-ready object with sorted vertices and sorted edge pairs."""
    return {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in g.edges()],
    }


def graph_from_obj(obj: Any) -> Graph:
    """Parse the graph JSON object; duplicates are rejected here."""
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise GraphError("graph object must have a 'vertices' array")
    vertices = obj["vertices"]
    edges_raw = obj.get("edges", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphError("'vertices' must be an array of strings")
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex in graph object")
    seen = set()
    edges = []
    for e in edges_raw:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphError(f"edge entries must be 2-element string arrays, got {e!r}")
        key = frozenset(e)
        if len(key) == 1:
            raise GraphError(f"self-loop {e!r} rejected")
        if key in seen:
            raise GraphError(f"duplicate edge {e!r}")
        seen.add(key)
        edges.append((e[0], e[1]))
    return build_graph(vertices, edges)


def dumps_graph(g: Graph, pretty: bool = False) -> str:
    obj = graph_to_obj(g)
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads_graph(text: str) -> Graph:
    return graph_from_obj(json.loads(text))


# ---------------------------------------------------------------------------
# plain-text edge lists
#
# One "u v" pair per line; lines with a single token declare isolated
# vertices; "#" starts a comment. The parser also tolerates the DOT syntax
# emitted by to_dot (quotes, "--" separators, braces, semicolons), which
# makes export-dot output re-importable.


def parse_edge_list(text: str) -> Graph:
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []

    def add_vertex(v: str) -> None:
        if v not in seen:
            seen.add(v)
            vertices.append(v)

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith(("graph", "}")):
            continue
        line = line.rstrip(";").strip()
        if not line:
            continue
        parts = [p.strip().strip('"') for p in line.split("--")] if "--" in line else line.split()
        parts = [p for p in parts if p]
        if len(parts) == 1:
            add_vertex(parts[0])
        elif len(parts) == 2:
            u, v = parts
            add_vertex(u)
            add_vertex(v)
            edges.append((u, v))
        else:
            raise GraphError(f"cannot parse edge-list line: {raw!r}")
    return build_graph(vertices, edges)


def format_edge_list(g: Graph) -> str:
    lines = []
    covered = set()
    for u, v in g.edges():
        lines.append(f"{u} {v}")
        covered.add(u)
        covered.add(v)
    for v in sorted(g.vertices):
        if v not in covered:
            lines.append(v)
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    covered = set()
    for u, v in g.edges():
        lines.append(f'  "{u}" -- "{v}";')
        covered.add(u)
        covered.add(v)
    for v in sorted(g.vertices):
        if v not in covered:
            lines.append(f'  "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
