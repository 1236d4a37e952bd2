"""Canonical labelling for small graphs (n <= ~12).

Equitable refinement of an ordered vertex partition, then individualisation
and backtracking over the first smallest non-singleton cell.  Leaves are
compared by their relabelled upper-triangle bit string; the largest wins.
Automorphisms found at equal leaves prune siblings in the same orbit.
"""

from __future__ import annotations

from .graph_core import Graph


def _refine(adj, cells):
    """Split cells by neighbour counts into other cells until equitable.

    Each pass splits every cell by the vector of neighbour counts into all
    current cells; fragments are ordered by that vector, so the result is
    label-invariant.
    """
    cells = list(cells)
    while True:
        masks = []
        for cell in cells:
            mk = 0
            for v in cell:
                mk |= 1 << v
            masks.append(mk)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups = {}
            for v in cell:
                a = adj[v]
                groups.setdefault(tuple((a & mk).bit_count() for mk in masks), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                for k in sorted(groups):
                    out.append(groups[k])
        if len(out) == len(cells):
            return cells
        cells = out


def _code(adj, order):
    n = len(order)
    code = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def canonical_order(g: Graph | tuple[int, ...], n: int | None = None,
                    colours: list[list[int]] | None = None):
    """Return ``(code, order)``: ``order[i]`` is the vertex placed at position ``i``.

    Isomorphic graphs get equal codes.  ``colours`` is an optional initial
    ordered partition (vertices in different cells are never swapped).
    """
    if isinstance(g, Graph):
        adj, n = g.adj, g.n
    else:
        adj = g
    init = colours if colours is not None else [list(range(n))]
    best = [None, None]
    autos: list[list[int]] = []

    def orbit_reps(cands, fixed):
        gens = [a for a in autos if all(a[v] == v for v in fixed)]
        if not gens:
            return cands
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            for v in range(n):
                ra, rb = find(v), find(a[v])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        seen, reps = set(), []
        for v in cands:
            r = find(v)
            if r not in seen:
                seen.add(r)
                reps.append(v)
        return reps

    def walk(cells, fixed):
        cells = _refine(adj, cells)
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                # order -> best[1] position-wise is an automorphism
                a = [0] * n
                for u, v in zip(best[1], order):
                    a[v] = u
                autos.append(a)
            return
        cell = cells[target]
        explored = []
        for v in cell:
            if explored and v not in orbit_reps(explored + [v], fixed):
                continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            walk(cells[:target] + [[v], rest] + cells[target + 1:], fixed + [v])

    walk(init, [])
    return best[0], best[1]


def canonical_form(g: Graph) -> int:
    return canonical_order(g)[0]


def canonical_graph(g: Graph) -> Graph:
    """The representative of ``g``'s isomorphism class with canonical labels."""
    _, order = canonical_order(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)
