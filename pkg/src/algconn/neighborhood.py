"""One-edge moves (add / remove / reconnect) and local-minimality checks on lambda1."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import islice
from typing import Iterable, Iterator

import numpy as np

from .graph_core import Graph, components, laplacian, union_partition
from .spectral import INT_TOL, eig_symmetric, lambda1, lambda1_batch

KINDS = ("add", "remove", "reconnect")
LELM_KINDS = frozenset({"add", "reconnect"})
_KIND_RANK = {k: r for r, k in enumerate(KINDS)}


class IllegalMoveError(ValueError):
    pass


class MoveClass(str, Enum):
    ADD = "C_add"
    RE_SAME = "C_re_same"
    RE_INCR = "C_re_incr"
    OTHER = "other"


@dataclass(frozen=True)
class Move:
    kind: str
    removed: tuple[int, int] | None = None
    added: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise IllegalMoveError(f"unknown move kind {self.kind!r}")
        for name in ("removed", "added"):
            e = getattr(self, name)
            if e is not None:
                object.__setattr__(self, name, (min(e), max(e)))
        want_removed = self.kind in ("remove", "reconnect")
        want_added = self.kind in ("add", "reconnect")
        if (self.removed is not None) != want_removed or (self.added is not None) != want_added:
            raise IllegalMoveError(f"{self.kind} move has wrong edge fields: {self}")
        if self.kind == "reconnect" and self.removed == self.added:
            raise IllegalMoveError("reconnect must move the edge somewhere else")

    @property
    def sort_key(self):
        return (_KIND_RANK[self.kind], self.removed or (), self.added or ())

    def __str__(self):
        if self.kind == "add":
            return f"add{self.added}"
        if self.kind == "remove":
            return f"remove{self.removed}"
        return f"reconnect{self.removed}->{self.added}"

    def to_json(self):
        return {"kind": self.kind,
                "removed": list(self.removed) if self.removed else None,
                "added": list(self.added) if self.added else None}


@dataclass(frozen=True)
class LelmReport:
    base_lambda1: float
    worst_neighbor_lambda1: float
    violating_move: Move | None
    neighborhood_size: int
    verdict: bool
    kinds: tuple[str, ...] = ("add", "reconnect")

    def to_json(self):
        return {"base_lambda1": self.base_lambda1,
                "worst_neighbor_lambda1": self.worst_neighbor_lambda1,
                "violating_move": self.violating_move.to_json() if self.violating_move else None,
                "neighborhood_size": self.neighborhood_size,
                "verdict": self.verdict,
                "kinds": list(self.kinds)}


def move_counts(n: int, m: int) -> dict[str, int]:
    slots = n * (n - 1) // 2
    return {"add": slots - m, "remove": m, "reconnect": m * (slots - m)}


def enumerate_moves(g: Graph, kinds: Iterable[str] = KINDS) -> Iterator[Move]:
    """Every legal move of the requested kinds, in ``Move.sort_key`` order."""
    kinds = set(kinds)
    unknown = kinds - set(KINDS)
    if unknown:
        raise IllegalMoveError(f"unknown move kinds {sorted(unknown)}")
    edges = g.edges()
    holes = g.non_edges()
    if "add" in kinds:
        for e in holes:
            yield Move("add", added=e)
    if "remove" in kinds:
        for e in edges:
            yield Move("remove", removed=e)
    if "reconnect" in kinds:
        for r in edges:
            for a in holes:
                yield Move("reconnect", removed=r, added=a)


def apply_move(g: Graph, mv: Move) -> Graph:
    for e in (mv.removed, mv.added):
        if e is not None and not (0 <= e[0] < e[1] < g.n):
            raise IllegalMoveError(f"{mv}: pair {e} is not a valid vertex pair for n={g.n}")
    if mv.removed is not None and not g.has_edge(*mv.removed):
        raise IllegalMoveError(f"{mv}: removed pair {mv.removed} is not an edge")
    if mv.added is not None and g.has_edge(*mv.added):
        raise IllegalMoveError(f"{mv}: added pair {mv.added} is already an edge")
    return g.with_edges(add=[mv.added] if mv.added else [],
                        remove=[mv.removed] if mv.removed else [])


def classify_move(mv: Move) -> MoveClass:
    if mv.kind == "add":
        return MoveClass.ADD
    if mv.kind == "reconnect":
        shared = set(mv.removed) & set(mv.added)
        return MoveClass.RE_SAME if len(shared) == 1 else MoveClass.RE_INCR
    return MoveClass.OTHER


# (top eigenvalue, rank) of each connection matrix, independent of padding
MOVE_SPECTRA = {
    MoveClass.ADD: (2.0, 1),
    MoveClass.RE_INCR: (2.0, 2),
    MoveClass.RE_SAME: (3 ** 0.5, 2),
}


def connection_matrix(g: Graph, mv: Move, check: bool = True) -> tuple[np.ndarray, MoveClass]:
    """``L(apply_move(g, mv)) - L(g)`` together with its move class."""
    C = laplacian(apply_move(g, mv)) - laplacian(g)
    cls = classify_move(mv)
    if check and cls in MOVE_SPECTRA:
        top, rank = MOVE_SPECTRA[cls]
        vals = eig_symmetric(C).values
        got_rank = sum(abs(v) > 1e-9 for v in vals)
        if abs(vals[0] - top) > 1e-9 or got_rank != rank:
            raise ArithmeticError(f"{cls.value}: got top {vals[0]}, rank {got_rank}")
    return C, cls


def verify_lelm(g: Graph, kinds: Iterable[str] = LELM_KINDS, full_scan: bool = False,
                tol: float = INT_TOL, chunk: int = 1024) -> LelmReport:
    """Check that no one-edge neighbour has a strictly smaller lambda1.

    The default neighbourhood is reconnects plus additions.  Pass
    ``kinds=KINDS`` to also scan removals.  Neighbours are evaluated in chunks
    in ``Move.sort_key`` order, so the reported violator is the least one.
    """
    kinds = tuple(k for k in KINDS if k in set(kinds))
    base = lambda1(g)
    worst = float("inf")
    violator = None
    size = 0
    moves = enumerate_moves(g, kinds)
    while True:
        batch = list(islice(moves, chunk))
        if not batch:
            break
        size += len(batch)
        vals = lambda1_batch([apply_move(g, mv) for mv in batch])
        worst = min(worst, float(vals.min()))
        if violator is None:
            bad = np.flatnonzero(vals < base - tol)
            if bad.size:
                violator = batch[int(bad[0])]
                if not full_scan:
                    break
    if size == 0:
        worst = base
    return LelmReport(base, worst, violator, size, violator is None, kinds)


def case_classify(g: Graph, mv: Move) -> str:
    """Label a move on a union of complete graphs by the sizes of what it joins.

    Case 1 joins two components both at least two smaller than the largest,
    Case 2 involves one of size ``n1 - 1`` (and none of size ``n1``), Case 3
    touches a largest component.  Moves that stay inside one component are
    ``within-component``; anything on a graph that is not a union of
    complete graphs is ``other``.
    """
    part = union_partition(g)
    if part is None:
        return "other"
    comp_of = {}
    sizes = []
    for idx, comp in enumerate(components(g)):
        sizes.append(len(comp))
        for v in comp:
            comp_of[v] = idx
    if mv.added is None:
        return "within-component"
    u, v = mv.added
    if comp_of[u] == comp_of[v]:
        return "within-component"
    n1 = part.largest
    big = max(sizes[comp_of[u]], sizes[comp_of[v]])
    cls = classify_move(mv)
    if big == n1:
        return "3a" if cls is MoveClass.ADD else "3r"
    case = "2" if big == n1 - 1 else "1"
    return case + {MoveClass.ADD: "a", MoveClass.RE_SAME: "r_s", MoveClass.RE_INCR: "r_i"}[cls]
