"""Simple undirected graphs on labelled vertices ``0..n-1``.

Edges live in a strict upper-triangular bit matrix: ``rows[i]`` has bit ``j``
set (``j > i``) iff ``{i, j}`` is an edge.  Graph values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input (bad labels, self-loops, bad files)."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be positive, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError("rows must have one entry per vertex")
        for i, r in enumerate(self.rows):
            if r >> self.n or r & ((1 << (i + 1)) - 1):
                raise GraphError(f"row {i} has bits outside the strict upper triangle")

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~((1 << (i + 1)) - 1) for i in range(n)))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Full symmetric adjacency as one neighbour bitmask per vertex."""
        adj = list(self.rows)
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                adj[low.bit_length() - 1] |= 1 << i
                r ^= low
        return tuple(adj)

    @cached_property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if i > j:
            i, j = j, i
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs with ``i < j``, lexicographically sorted."""
        out = []
        for i, r in enumerate(self.rows):
            j = i + 1
            r >>= j
            while r:
                if r & 1:
                    out.append((i, j))
                r >>= 1
                j += 1
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                if not self.rows[i] >> j & 1]

    def with_edges(self, add: Iterable[tuple[int, int]] = (),
                   remove: Iterable[tuple[int, int]] = ()) -> Graph:
        rows = list(self.rows)
        for i, j in remove:
            i, j = min(i, j), max(i, j)
            rows[i] &= ~(1 << j)
        for i, j in add:
            i, j = min(i, j), max(i, j)
            rows[i] |= 1 << j
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_from_edge_list(self.n, [(perm[i], perm[j]) for i, j in self.edges()])

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    delta_max: int
    d_avg: Fraction

    @property
    def ceil_d_avg(self) -> int:
        return math.ceil(self.d_avg)


@dataclass(frozen=True)
class Partition:
    """Sizes of complete components, stored non-increasing."""

    sizes: tuple[int, ...] = field()

    def __post_init__(self):
        sizes = tuple(sorted((int(s) for s in self.sizes), reverse=True))
        if not sizes:
            raise GraphError("a partition needs at least one part")
        if sizes[-1] < 1:
            raise GraphError(f"component sizes must be positive: {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def of(cls, *sizes: int) -> Partition:
        return cls(tuple(sizes))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return sum(s * (s - 1) // 2 for s in self.sizes)

    @property
    def p(self) -> int:
        return len(self.sizes)

    @property
    def largest(self) -> int:
        return self.sizes[0]

    def nontrivial(self) -> tuple[int, ...]:
        """Sizes without the ``K_1`` singletons."""
        return tuple(s for s in self.sizes if s > 1)

    def __str__(self):
        return ",".join(map(str, self.sizes))


def build_from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    rows = [0] * n
    for pair in pairs:
        i, j = (int(v) for v in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"label out of range [0, {n}) in pair {(i, j)}")
        if i == j:
            raise GraphError(f"self-loop {(i, j)}")
        if i > j:
            i, j = j, i
        rows[i] |= 1 << j
    return Graph(n, tuple(rows))


def build_union_complete(partition: Partition) -> Graph:
    """Disjoint union of ``K_{n_i}`` on contiguous label blocks, largest first."""
    rows = []
    for size in partition.sizes:
        start = len(rows)
        block = ((1 << size) - 1) << start
        for i in range(start, start + size):
            rows.append(block & ~((1 << (i + 1)) - 1))
    return Graph(partition.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = Graph.complete(g.n).rows
    return Graph(g.n, tuple(f & ~r for f, r in zip(full, g.rows)))


def laplacian(g: Graph) -> np.ndarray:
    L = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.edges():
        L[i, j] = L[j, i] = -1
    L[np.diag_indices(g.n)] = g.degrees
    return L


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees
    return DegreeProfile(degs, max(degs), Fraction(2 * g.m, g.n))


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, largest first, ties by smallest label."""
    seen = 0
    comps = []
    adj = g.adj
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(frozenset(i for i in range(g.n) if comp >> i & 1))
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps


def union_partition(g: Graph) -> Partition | None:
    """The component partition if ``g`` is a union of complete graphs, else None."""
    sizes = []
    for comp in components(g):
        k = len(comp)
        if any(g.degrees[v] != k - 1 for v in comp):
            return None
        sizes.append(k)
    return Partition(tuple(sizes))


def _ints(parts, lineno):
    try:
        return tuple(int(v) for v in parts)
    except ValueError:
        raise GraphError(f"line {lineno}: non-integer entry in {' '.join(parts)!r}") from None


def read_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``i j`` lines format."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise GraphError("first line must be 'n m'")
    n, m = _ints(lines[0], 1)
    pairs = []
    for k, parts in enumerate(lines[1:], start=2):
        if len(parts) != 2:
            raise GraphError(f"line {k}: expected 'i j', got {' '.join(parts)!r}")
        pairs.append(_ints(parts, k))
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges but {len(pairs)} lines follow")
    g = build_from_edge_list(n, pairs)
    if g.m != m:
        raise GraphError(f"{m - g.m} duplicate edge line(s); header m={m} but {g.m} distinct edges")
    return g


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"
