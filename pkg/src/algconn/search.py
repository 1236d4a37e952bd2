"""Exhaustive minimisation of lambda1 over all graphs with n vertices and m edges.

Two independent routes: brute force over labelled edge subsets (n <= 7), and
isomorph-free generation by canonical augmentation (n <= 10) with max-degree
pruning.  A graph with max degree D has lambda1 >= D + 1, so once a graph
with lambda1 = U is known, everything with D >= U can be skipped.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb

import numpy as np

from .canon import canonical_graph, canonical_order
from .graph_core import Graph, build_from_edge_list, build_union_complete, laplacian
from .partition_builder import algorithm1, certify, class_degree_bound, is_legm
from .spectral import TOL, eigvals_batch, lambda1

LABELED_N_CAP = 7
CANONICAL_N_CAP = 10
TIE_TOL = 1e-9
BATCH = 4096


@dataclass
class SearchReport:
    n: int
    m: int
    min_lambda1: float
    witness: Graph
    graphs_examined: int
    pruned: int
    method: str
    elapsed: float = field(default=0.0, compare=False)
    degree_cap: int | None = None
    minimizers: tuple[Graph, ...] = ()

    def to_json(self):
        return {"n": self.n, "m": self.m, "min_lambda1": self.min_lambda1,
                "witness": self.witness.edges(), "graphs_examined": self.graphs_examined,
                "pruned": self.pruned, "method": self.method, "degree_cap": self.degree_cap,
                "minimizer_classes": len(self.minimizers)}


class _Best:
    """Running minimum; keeps every isomorphism class within ``TIE_TOL`` of it."""

    def __init__(self):
        self.value = float("inf")
        self.ties: dict[int, Graph] = {}

    def offer(self, value: float, graph: Graph, code: int | None = None):
        if value > self.value + TIE_TOL:
            return
        if code is None:
            code = canonical_order(graph)[0]
        if value < self.value - TIE_TOL:
            self.ties = {}
        self.value = min(value, self.value)
        self.ties.setdefault(code, graph)

    def report(self, n, m, examined, pruned, method, start, cap=None) -> SearchReport:
        codes = sorted(self.ties)
        minimizers = tuple(canonical_graph(self.ties[c]) for c in codes)
        return SearchReport(n, m, self.value, minimizers[0], examined, pruned, method,
                            time.perf_counter() - start, cap, minimizers)


def _laplacian_stack(n: int, pair_i: np.ndarray, pair_j: np.ndarray, chosen: np.ndarray) -> np.ndarray:
    """Laplacians for a batch of edge-index subsets ``chosen`` of shape (B, m)."""
    B, m = chosen.shape
    L = np.zeros((B, n, n))
    if m == 0:
        return L
    b = np.repeat(np.arange(B), m)
    i = pair_i[chosen].ravel()
    j = pair_j[chosen].ravel()
    L[b, i, j] = -1.0
    L[b, j, i] = -1.0
    np.add.at(L, (b, i, i), 1.0)
    np.add.at(L, (b, j, j), 1.0)
    return L


def search_labeled(n: int, m: int, tol: float = TOL) -> SearchReport:
    """Minimum lambda1 over every labelled graph, by enumerating all m-subsets of pairs."""
    if n > LABELED_N_CAP:
        raise ValueError(f"n={n} exceeds the labelled-search cap {LABELED_N_CAP}; use search_canonical")
    if not 0 <= m <= comb(n, 2):
        raise ValueError(f"m={m} outside [0, {comb(n, 2)}]")
    start = time.perf_counter()
    pairs = list(combinations(range(n), 2))
    pair_i = np.array([p[0] for p in pairs], dtype=np.intp)
    pair_j = np.array([p[1] for p in pairs], dtype=np.intp)
    best = _Best()
    examined = 0
    combos = combinations(range(len(pairs)), m)
    while True:
        block = list(islice(combos, BATCH))
        if not block:
            break
        chunk = np.array(block, dtype=np.intp).reshape(len(block), m)
        examined += chunk.shape[0]
        vals = eigvals_batch(_laplacian_stack(n, pair_i, pair_j, chunk), tol)[:, 0]
        lo = float(vals.min())
        if lo > best.value + TIE_TOL:
            continue
        for k in np.flatnonzero(vals <= min(lo, best.value) + TIE_TOL):
            g = build_from_edge_list(n, [pairs[e] for e in chunk[k]])
            best.offer(float(vals[k]), g)
    return best.report(n, m, examined, 0, "labeled", start)


def _graph_from_adj(n: int, adj) -> Graph:
    return Graph(n, tuple(a & ~((1 << (i + 1)) - 1) for i, a in enumerate(adj)))


def _canonical_children(n: int, adj: tuple[int, ...], code: int, degree_cap: int):
    """Children ``g + e`` whose canonical parent is ``g``; one per isomorphism class.

    The canonical deletion is the edge maximising (degree sum, max degree,
    common neighbours), ties broken by canonical position.  A candidate is
    kept iff deleting that edge gives back a graph isomorphic to ``g``.
    """
    deg = [a.bit_count() for a in adj]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1]
    seen = set()
    for u in range(n):
        if deg[u] >= degree_cap:
            continue
        for v in range(u + 1, n):
            if adj[u] >> v & 1 or deg[v] >= degree_cap:
                continue
            h = list(adj)
            h[u] |= 1 << v
            h[v] |= 1 << u
            hd = deg[:]
            hd[u] += 1
            hd[v] += 1
            mine = (hd[u] + hd[v], max(hd[u], hd[v]), (h[u] & h[v]).bit_count())
            ties = [(u, v)]
            for a, b in edges:
                s = hd[a] + hd[b]
                if s < mine[0]:
                    continue
                inv = (s, max(hd[a], hd[b]), (h[a] & h[b]).bit_count())
                if inv > mine:
                    break
                if inv == mine:
                    ties.append((a, b))
            else:
                hcode, order = canonical_order(h, n)
                if len(ties) > 1:
                    pos = [0] * n
                    for i, w in enumerate(order):
                        pos[w] = i
                    a, b = max(ties, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))
                    if (a, b) != (u, v):
                        back = h[:]
                        back[a] ^= 1 << b
                        back[b] ^= 1 << a
                        if canonical_order(back, n)[0] != code:
                            continue
                if hcode not in seen:
                    seen.add(hcode)
                    yield tuple(h), hcode


def generate_graphs(n: int, max_edges: int | None = None, degree_cap: int | None = None):
    """Yield ``(graph, code)`` once per isomorphism class with at most ``max_edges`` edges."""
    if n > CANONICAL_N_CAP:
        raise ValueError(f"n={n} exceeds the canonical-search cap {CANONICAL_N_CAP}")
    max_edges = comb(n, 2) if max_edges is None else max_edges
    cap = n - 1 if degree_cap is None else degree_cap
    stack = [((0,) * n, 0, 0)]
    while stack:
        adj, code, m = stack.pop()
        yield _graph_from_adj(n, adj), code
        if m < max_edges:
            kids = list(_canonical_children(n, adj, code, cap))
            stack.extend((a, c, m + 1) for a, c in reversed(kids))


def search_canonical(n: int, m: int, degree_cap: int | None = None, tol: float = TOL) -> SearchReport:
    """Minimum lambda1 over isomorphism classes via canonical augmentation.

    ``degree_cap=None`` derives the cap from the clique-union construction:
    if it reaches exactly ``m`` edges with lambda1 = U, graphs with max degree
    >= U cannot do better and are never generated.  Pass ``degree_cap=n-1``
    to disable pruning.
    """
    if n > CANONICAL_N_CAP:
        raise ValueError(f"n={n} exceeds the canonical-search cap {CANONICAL_N_CAP}")
    if not 0 <= m <= comb(n, 2):
        raise ValueError(f"m={m} outside [0, {comb(n, 2)}]")
    if degree_cap is not None and degree_cap <= 0 and m > 0:
        raise ValueError("degree_cap must be positive when m > 0")
    start = time.perf_counter()
    if degree_cap is None:
        built = algorithm1(n, m)
        degree_cap = built.lambda1 - 1 if built.m_actual == m and m else n - 1
    degree_cap = min(max(degree_cap, 0), n - 1)
    best = _Best()
    examined = pruned = 0
    leaves: list[tuple[Graph, int]] = []

    def flush():
        nonlocal examined
        if not leaves:
            return
        vals = eigvals_batch(np.stack([laplacian(g) for g, _ in leaves]), tol)[:, 0]
        examined += len(leaves)
        for (g, code), val in zip(leaves, vals):
            best.offer(float(val), g, code)
        leaves.clear()

    stack = [((0,) * n, 0, 0)]
    while stack:
        adj, code, k = stack.pop()
        if k == m:
            leaves.append((_graph_from_adj(n, adj), code))
            if len(leaves) >= BATCH:
                flush()
            continue
        # remaining degree capacity must absorb the edges still to come
        if sum(degree_cap - a.bit_count() for a in adj) < 2 * (m - k):
            pruned += 1
            continue
        stack.extend((a, c, k + 1) for a, c in _canonical_children(n, adj, code, degree_cap))
    flush()
    if not best.ties:
        raise RuntimeError(f"no graph with n={n}, m={m} and max degree <= {degree_cap}")
    return best.report(n, m, examined, pruned, "canonical", start, degree_cap)


def best_search(n: int, m: int) -> SearchReport:
    return search_labeled(n, m) if n <= 6 else search_canonical(n, m)


@dataclass
class CrossValidation:
    n: int
    m: int
    built_lambda1: int
    m_actual: int
    legm_bases: list[str]
    oracle: SearchReport
    discrepancies: list[str]

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def to_json(self):
        return {"n": self.n, "m": self.m, "built_lambda1": self.built_lambda1,
                "m_actual": self.m_actual, "legm_bases": self.legm_bases,
                "oracle": self.oracle.to_json(), "consistent": self.consistent,
                "discrepancies": self.discrepancies}


def cross_validate(n: int, m: int) -> CrossValidation:
    """Run construction, certification and the exhaustive oracle; report disagreements."""
    res, certs = certify(n, m)
    rep = best_search(n, m)
    problems = []
    bases = [c.basis for c in certs if c.kind == "LEGM"]
    if res.m_actual == m:
        if rep.min_lambda1 > res.lambda1 + 1e-6:
            problems.append(f"oracle min {rep.min_lambda1} exceeds built lambda1 {res.lambda1}")
        if is_legm(certs) and abs(rep.min_lambda1 - res.lambda1) > 1e-6:
            problems.append(f"LEGM via {bases} but oracle min is {rep.min_lambda1}")
        built = lambda1(build_union_complete(res.partition), exact=False)
        if abs(built - res.lambda1) > 1e-6:
            problems.append(f"numerical lambda1 {built} of the built graph != {res.lambda1}")
    bound = class_degree_bound(n, m)
    if bound is not None and rep.min_lambda1 < bound - 1e-6:
        problems.append(f"oracle min {rep.min_lambda1} below class bound {bound}")
    return CrossValidation(n, m, res.lambda1, res.m_actual, bases, rep, problems)
