"""Axis-aligned box covers: validity checks, nerves, boundary traces, merges.

Cells are boxes with rational corners on a Euclidean or periodic (flat
torus) lattice, which keeps every intersection exactly computable. All
arithmetic uses Fractions; there are no epsilons anywhere.

The locally-centered check uses the Helly reading: every pairwise
intersecting subfamily must share a common point, which reduces to checking
the maximal cliques of the intersection graph. The locally-lump check
requires every nonempty k-wise intersection to be a single box of dimension
n+1-k lying in the relative boundary of each participating cell.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .graph import Graph, build_graph, canonical_key, induced_subgraph


class CoverError(ValueError):
    """Invalid cells, domains or cover operations."""


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        # exact conversion of the decimal text, not of the binary float
        return Fraction(repr(x))
    raise CoverError(f"cannot read rational value {x!r}")


def _fmt(x: Fraction) -> Any:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BoxCell:
    """An axis-aligned box; its dimension is the number of fat axes."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    @staticmethod
    def make(lo: Sequence[Any], hi: Sequence[Any]) -> "BoxCell":
        lof = tuple(_frac(x) for x in lo)
        hif = tuple(_frac(x) for x in hi)
        if len(lof) != len(hif):
            raise CoverError("lo and hi have different lengths")
        for a, b in zip(lof, hif):
            if b < a:
                raise CoverError(f"negative extent: {a} > {b}")
        return BoxCell(lof, hif)

    @property
    def ambient(self) -> int:
        return len(self.lo)

    @property
    def dimension(self) -> int:
        return sum(1 for a, b in zip(self.lo, self.hi) if b > a)

    def to_obj(self) -> dict[str, Any]:
        return {"lo": [_fmt(x) for x in self.lo], "hi": [_fmt(x) for x in self.hi]}


@dataclass(frozen=True)
class BoxCover:
    """A collection of n-cells over a Euclidean or periodic domain.

    ``periods[k]`` is None for a Euclidean axis or the period of a flat
    torus axis; periodic extents must stay below the period so every
    pairwise overlap has an unambiguous representative.
    """

    cells: tuple[BoxCell, ...]
    periods: tuple[Optional[Fraction], ...]
    n: int

    @staticmethod
    def make(cells: Iterable[BoxCell], periods: Sequence[Any], n: int) -> "BoxCover":
        cells = tuple(cells)
        pf = tuple(None if p is None else _frac(p) for p in periods)
        if not cells:
            raise CoverError("cover has no cells")
        p = cells[0].ambient
        if len(pf) != p:
            raise CoverError("period list length differs from ambient dimension")
        for per in pf:
            if per is not None and per <= 0:
                raise CoverError("periods must be positive")
        normalized = []
        for c in cells:
            if c.ambient != p:
                raise CoverError("mixed ambient dimensions")
            if c.dimension != n:
                raise CoverError(f"cell {c.to_obj()} has dimension {c.dimension}, declared {n}")
            lo = list(c.lo)
            hi = list(c.hi)
            for ax, per in enumerate(pf):
                if per is None:
                    continue
                if hi[ax] - lo[ax] >= per:
                    raise CoverError("periodic cell extent must be below the period")
                shift = (lo[ax] // per) * per
                lo[ax] -= shift
                hi[ax] -= shift
            normalized.append(BoxCell(tuple(lo), tuple(hi)))
        return BoxCover(tuple(normalized), pf, n)

    @property
    def ambient(self) -> int:
        return self.cells[0].ambient

    def to_obj(self) -> dict[str, Any]:
        return {
            "ambient": self.ambient,
            "n": self.n,
            "domain": {"periodic": [None if p is None else _fmt(p) for p in self.periods]},
            "cells": [c.to_obj() for c in self.cells],
        }

    @staticmethod
    def from_obj(obj: Any) -> "BoxCover":
        try:
            ambient = obj["ambient"]
            n = obj["n"]
            periods = obj.get("domain", {}).get("periodic", [None] * ambient)
            cells = [BoxCell.make(c["lo"], c["hi"]) for c in obj["cells"]]
        except (KeyError, TypeError) as exc:
            raise CoverError(f"malformed cover object: {exc}") from exc
        if len(periods) != ambient:
            raise CoverError("periodic list length differs from ambient")
        cover = BoxCover.make(cells, periods, n)
        if cover.ambient != ambient:
            raise CoverError("cells do not match the declared ambient dimension")
        return cover


def load_cover(text: str) -> BoxCover:
    return BoxCover.from_obj(json.loads(text))


# ---------------------------------------------------------------------------
# exact interval geometry
#
# On a periodic axis an interval is an arc; the intersection of arcs can
# have up to two components, which is never a box. _axis_pieces returns the
# disjoint components (merged when they touch), each normalized to start in
# [0, period).


def _axis_pieces(
    intervals: Sequence[tuple[Fraction, Fraction]], period: Optional[Fraction]
) -> list[tuple[Fraction, Fraction]]:
    if period is None:
        lo = max(a for a, _ in intervals)
        hi = min(b for _, b in intervals)
        return [(lo, hi)] if lo <= hi else []
    pieces = [intervals[0]]
    for a2, b2 in intervals[1:]:
        nxt: list[tuple[Fraction, Fraction]] = []
        for a1, b1 in pieces:
            for k in (-1, 0, 1):
                lo = max(a1, a2 + k * period)
                hi = min(b1, b2 + k * period)
                if lo <= hi:
                    nxt.append((lo, hi))
        nxt.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in nxt:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        # two pieces can also touch around the wrap
        if len(merged) >= 2 and merged[0][0] + period <= merged[-1][1]:
            merged[0] = (merged[-1][0] - period, merged[0][1])
            merged.pop()
            merged.sort()
        pieces = merged
        if not pieces:
            return []
    out = []
    for lo, hi in pieces:
        shift = (lo // period) * period
        out.append((lo - shift, hi - shift))
    return sorted(out)


def _intersection_pieces(
    cells: Sequence[BoxCell], periods: Sequence[Optional[Fraction]]
) -> Optional[list[list[tuple[Fraction, Fraction]]]]:
    """Per-axis piece lists of the common intersection; None when empty."""
    out = []
    for ax, period in enumerate(periods):
        pieces = _axis_pieces([(c.lo[ax], c.hi[ax]) for c in cells], period)
        if not pieces:
            return None
        out.append(pieces)
    return out


def intersect_cells(
    cells: Sequence[BoxCell], periods: Sequence[Optional[Fraction]]
) -> Optional[BoxCell]:
    """Common intersection of a nonempty subfamily, as a box.

    Returns None when the intersection is empty and raises when it is
    nonempty but not a single box (possible on periodic axes when two arcs
    wrap far enough to meet twice).
    """
    if not cells:
        raise CoverError("empty subfamily")
    p = cells[0].ambient
    for c in cells:
        if c.ambient != p:
            raise CoverError("mixed ambient dimensions")
    pieces = _intersection_pieces(cells, periods)
    if pieces is None:
        return None
    if any(len(ax_pieces) != 1 for ax_pieces in pieces):
        raise CoverError("intersection is not a single box")
    lo = tuple(ax_pieces[0][0] for ax_pieces in pieces)
    hi = tuple(ax_pieces[0][1] for ax_pieces in pieces)
    return BoxCell(lo, hi)


def _box_in_relative_boundary(
    e_lo: Sequence[Fraction],
    e_hi: Sequence[Fraction],
    cell: BoxCell,
    periods: Sequence[Optional[Fraction]],
) -> bool:
    """Is the box E inside the relative boundary of ``cell``?

    True when some fat axis of the cell sees E pinned to one of its two
    facet coordinates. Degenerate axes of the cell carry no facets.
    """
    for ax, period in enumerate(periods):
        if cell.hi[ax] == cell.lo[ax]:
            continue
        if e_lo[ax] != e_hi[ax]:
            continue
        x = e_lo[ax]
        for facet in (cell.lo[ax], cell.hi[ax]):
            if x == facet:
                return True
            if period is not None and (x - facet) % period == 0:
                return True
    return False


# ---------------------------------------------------------------------------
# LCL validation


@dataclass(frozen=True)
class LclViolation:
    indices: tuple[int, ...]
    clause: str  # "LC" | "LL-dimension" | "LL-boundary"
    detail: str

    def to_obj(self) -> dict[str, Any]:
        return {"indices": list(self.indices), "clause": self.clause, "detail": self.detail}


@dataclass(frozen=True)
class LclReport:
    verdict: bool
    violations: tuple[LclViolation, ...]

    def to_obj(self) -> dict[str, Any]:
        return {"verdict": self.verdict, "violations": [v.to_obj() for v in self.violations]}


def _pairwise_matrix(cover: BoxCover) -> list[list[bool]]:
    m = len(cover.cells)
    adj = [[False] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            nonempty = (
                _intersection_pieces([cover.cells[i], cover.cells[j]], cover.periods)
                is not None
            )
            adj[i][j] = adj[j][i] = nonempty
    return adj


def _maximal_cliques(adj: list[list[bool]]) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting, deterministic output order."""
    m = len(adj)
    masks = [sum(1 << j for j in range(m) if adj[i][j]) for i in range(m)]
    out = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(i for i in range(m) if (r >> i) & 1))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = -1
        cand_pool = pivot_pool
        while cand_pool:
            b = cand_pool & -cand_pool
            cand_pool ^= b
            u = b.bit_length() - 1
            k = (p & masks[u]).bit_count()
            if k > best:
                best, pivot = k, u
        cand = p & ~masks[pivot]
        while cand:
            b = cand & -cand
            cand ^= b
            v = b.bit_length() - 1
            expand(r | b, p & masks[v], x & masks[v])
            p &= ~b
            x |= b
    expand(0, (1 << m) - 1, 0)
    return sorted(out)


def validate_lcl(cover: BoxCover) -> LclReport:
    """Check the locally-centered and locally-lump clauses.

    LC: every maximal clique of the intersection graph has a common point
    (subfamilies inherit it). LL: every nonempty k-wise intersection with
    k >= 2 is a single box of dimension n+1-k inside the relative boundary
    of each member. Violations are data, not errors.
    """
    adj = _pairwise_matrix(cover)
    m = len(cover.cells)
    violations: list[LclViolation] = []

    # LL over all nonempty-intersection subfamilies, grown incrementally
    def extend(indices: tuple[int, ...]) -> None:
        cells = [cover.cells[i] for i in indices]
        pieces = _intersection_pieces(cells, cover.periods)
        if pieces is None:
            return
        k = len(indices)
        if any(len(ax) != 1 for ax in pieces):
            violations.append(
                LclViolation(indices, "LL-dimension", "intersection is not a single box")
            )
        else:
            e_lo = [ax[0][0] for ax in pieces]
            e_hi = [ax[0][1] for ax in pieces]
            dim = sum(1 for a, b in zip(e_lo, e_hi) if b > a)
            want = cover.n + 1 - k
            if want < 0:
                violations.append(
                    LclViolation(
                        indices,
                        "LL-dimension",
                        f"{k} cells meet but only {cover.n + 1} may share a point",
                    )
                )
            elif dim != want:
                violations.append(
                    LclViolation(
                        indices,
                        "LL-dimension",
                        f"intersection has dimension {dim}, expected {want}",
                    )
                )
            for pos, i in enumerate(indices):
                if not _box_in_relative_boundary(e_lo, e_hi, cover.cells[i], cover.periods):
                    violations.append(
                        LclViolation(
                            indices,
                            "LL-boundary",
                            f"intersection not inside the boundary of cell {i}",
                        )
                    )
        last = indices[-1]
        for j in range(last + 1, m):
            if all(adj[i][j] for i in indices):
                extend(indices + (j,))

    for i in range(m):
        for j in range(i + 1, m):
            if adj[i][j]:
                extend((i, j))

    # LC over maximal cliques
    for clique in _maximal_cliques(adj):
        if len(clique) < 2:
            continue
        cells = [cover.cells[i] for i in clique]
        if _intersection_pieces(cells, cover.periods) is None:
            violations.append(
                LclViolation(
                    clique, "LC", "pairwise intersecting subfamily has no common point"
                )
            )

    violations.sort(key=lambda v: (v.indices, v.clause, v.detail))
    return LclReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# nerve and boundary trace


def nerve(cover: BoxCover) -> Graph:
    """Intersection graph: one vertex per cell, edges between meeting cells."""
    labels = [f"c{i}" for i in range(len(cover.cells))]
    adj = _pairwise_matrix(cover)
    edges = [
        (labels[i], labels[j])
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
        if adj[i][j]
    ]
    return build_graph(labels, edges)


def boundary_trace_cover(cover: BoxCover, i: int) -> tuple[BoxCover, bool]:
    """Trace cell i's neighborhood onto its boundary.

    Returns the collection of pairwise intersections with cell i as an
    (n-1)-dimensional cover, plus the verdict that its nerve is isomorphic
    to the nerve induced on the neighbors of cell i (which holds on valid
    LCL input).
    """
    if not 0 <= i < len(cover.cells):
        raise CoverError(f"no cell {i}")
    neighbors = []
    traces = []
    for j, cell in enumerate(cover.cells):
        if j == i:
            continue
        box = intersect_cells([cover.cells[i], cell], cover.periods)
        if box is not None:
            neighbors.append(j)
            traces.append(box)
    if not neighbors:
        raise CoverError(f"cell {i} has no neighbors")
    traced = BoxCover.make(traces, cover.periods, cover.n - 1)
    big = nerve(cover)
    induced = induced_subgraph(big, [f"c{j}" for j in neighbors])
    verdict = canonical_key(induced) == canonical_key(nerve(traced))
    return traced, verdict


# ---------------------------------------------------------------------------
# merging simple subcollections


def _union_box(cells: Sequence[BoxCell], periods) -> BoxCell:
    """Bounding box of cells lifted into a common frame; raises when the
    cells do not tile it exactly (the union is then not a box)."""
    p = cells[0].ambient
    lifted = [list(zip(cells[0].lo, cells[0].hi))]
    for c in cells[1:]:
        best = None
        for shifts in itertools.product(*[
            (0,) if periods[ax] is None else (-periods[ax], Fraction(0), periods[ax])
            for ax in range(p)
        ]):
            cand = [(c.lo[ax] + shifts[ax], c.hi[ax] + shifts[ax]) for ax in range(p)]
            # prefer the shift overlapping or touching the current frame
            ok = all(
                cand[ax][1] >= min(iv[ax][0] for iv in lifted)
                and cand[ax][0] <= max(iv[ax][1] for iv in lifted)
                for ax in range(p)
            )
            if ok:
                best = cand
                break
        if best is None:
            raise CoverError("union is not a box (cells do not meet in a common frame)")
        lifted.append(best)
    lo = tuple(min(iv[ax][0] for iv in lifted) for ax in range(p))
    hi = tuple(max(iv[ax][1] for iv in lifted) for ax in range(p))
    for ax, period in enumerate(periods):
        if period is not None and hi[ax] - lo[ax] >= period:
            raise CoverError("union is not a box (wraps a full period)")
    # exact tiling check on the grid induced by all cut coordinates
    cuts = [sorted({lo[ax], hi[ax], *[iv[ax][0] for iv in lifted], *[iv[ax][1] for iv in lifted]}) for ax in range(p)]
    for corner in itertools.product(*[range(len(c) - 1) for c in cuts]):
        cell_lo = [cuts[ax][corner[ax]] for ax in range(p)]
        cell_hi = [cuts[ax][corner[ax] + 1] for ax in range(p)]
        covered = any(
            all(iv[ax][0] <= cell_lo[ax] and cell_hi[ax] <= iv[ax][1] for ax in range(p))
            for iv in lifted
        )
        if not covered:
            raise CoverError("union is not a box (grid cell uncovered)")
    return BoxCell(lo, hi)


def merge_cells(cover: BoxCover, subset: Sequence[int]) -> tuple[BoxCover, LclReport]:
    """Replace a subcollection by its union box and re-validate.

    Rejects when the union is not a box or when the merged cover fails the
    LCL check, naming the clause.
    """
    subset = sorted(set(subset))
    if len(subset) < 2:
        raise CoverError("merge needs at least two cells")
    for i in subset:
        if not 0 <= i < len(cover.cells):
            raise CoverError(f"no cell {i}")
    union = _union_box([cover.cells[i] for i in subset], cover.periods)
    if union.dimension != cover.n:
        raise CoverError(f"union has dimension {union.dimension}, expected {cover.n}")
    cells = []
    for i, c in enumerate(cover.cells):
        if i == subset[0]:
            cells.append(union)
        elif i not in subset:
            cells.append(c)
    merged = BoxCover.make(cells, cover.periods, cover.n)
    report = validate_lcl(merged)
    if not report.verdict:
        raise CoverError(
            f"merged cover fails LCL: {report.violations[0].clause} "
            f"({report.violations[0].detail})"
        )
    return merged, report
