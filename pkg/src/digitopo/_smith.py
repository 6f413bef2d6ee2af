"""Exact integer diagonalization and GF(2) rank for sparse boundary matrices.

Arbitrary-precision integers throughout; no floating point. Matrices arrive
as a list of columns, each a dict mapping row index to a nonzero integer.
"""

from __future__ import annotations

from math import gcd


def gf2_rank(cols: list[int]) -> int:
    """Rank over GF(2) of a matrix whose columns are bitmasks over rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in cols:
        c = col
        while c:
            h = c.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = c
                rank += 1
                break
            c ^= p
    return rank


def smith_diagonal(columns: list[dict[int, int]]) -> list[int]:
    """Diagonal of an integer diagonalization of the sparse matrix.

    Row and column operations are unimodular, so the cokernel of the matrix
    is the direct sum of Z/d over the returned entries (plus free summands).
    The list is normalized to a divisibility chain; its length is the rank.
    """
    # row-major working copy with a column index
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
                col_rows.setdefault(j, set()).add(i)

    diag: list[int] = []

    def drop_entry(i: int, j: int) -> None:
        del rows[i][j]
        if not rows[i]:
            del rows[i]
        col_rows[j].discard(i)
        if not col_rows[j]:
            del col_rows[j]

    def set_entry(i: int, j: int, v: int) -> None:
        if v:
            rows.setdefault(i, {})[j] = v
            col_rows.setdefault(j, set()).add(i)
        elif i in rows and j in rows[i]:
            drop_entry(i, j)

    def add_row(src: int, dst: int, mult: int) -> None:
        # row[dst] += mult * row[src]
        for j, v in list(rows.get(src, {}).items()):
            set_entry(dst, j, rows.get(dst, {}).get(j, 0) + mult * v)

    def add_col(src: int, dst: int, mult: int) -> None:
        for i in list(col_rows.get(src, set())):
            v = rows[i][src]
            set_entry(i, dst, rows.get(i, {}).get(dst, 0) + mult * v)

    while rows:
        # pivot choice: unit entries first, smallest fill, then magnitude
        best = None
        for i, row in rows.items():
            for j, v in row.items():
                av = abs(v)
                fill = (len(row) - 1) * (len(col_rows[j]) - 1)
                key = (av != 1, av, fill, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, pi, pj = best

        while True:
            piv = rows[pi][pj]
            # clear the pivot column with exact or Euclidean steps
            touched = False
            for i in list(col_rows.get(pj, set())):
                if i == pi:
                    continue
                v = rows[i][pj]
                q = v // piv
                if q:
                    add_row(pi, i, -q)
                if rows.get(i, {}).get(pj):
                    # remainder is a strictly smaller pivot; swap roles
                    pi = i
                    touched = True
                    break
            if touched:
                continue
            piv = rows[pi][pj]
            # clear the pivot row
            touched = False
            for j in list(rows.get(pi, {}).keys()):
                if j == pj:
                    continue
                v = rows[pi][j]
                q = v // piv
                if q:
                    add_col(pj, j, -q)
                if rows.get(pi, {}).get(j):
                    pj = j
                    touched = True
                    break
            if touched:
                continue
            break

        diag.append(abs(rows[pi][pj]))
        drop_entry(pi, pj)

    # normalize to a divisibility chain (group-preserving gcd/lcm swaps)
    changed = True
    while changed:
        changed = False
        diag.sort()
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                if diag[b] % diag[a]:
                    g = gcd(diag[a], diag[b])
                    l = diag[a] * diag[b] // g
                    diag[a], diag[b] = g, l
                    changed = True
    return diag
