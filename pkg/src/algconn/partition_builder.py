"""Greedy construction of union-of-cliques LELM graphs and their LEGM certificates.

All condition arithmetic is exact (ints and ``Fraction``); floats only enter
through eigensolves done elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .graph_core import Graph, Partition, complement, degree_profile

STRICT, EQUALITY, VIOLATED, SATISFIED = "strict", "equality", "violated", "satisfied"
EXACT_N_CAP = 32
# The two-component condition is tight only at (n, ell) = (8, 2) and (9, 3):
# 2l^2 - nl + n = 0 needs (n-4)^2 - k^2 = 16.  Both were settled by exhaustive
# isomorph-free search (minimum lambda1 over all graphs equals 6).
EQUALITY_SETTLED = {(8, 2): "search_canonical(8, 16)", (9, 3): "search_canonical(9, 18)"}


@dataclass(frozen=True)
class Step:
    x: int
    count: int
    edges_before: int
    vertices_before: int


@dataclass(frozen=True)
class BuildResult:
    partition: Partition
    m_desired: int
    m_actual: int
    steps: tuple[Step, ...]
    lambda1: int
    rule: str = "exact"

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def shortfall(self) -> int:
        return self.m_desired - self.m_actual

    def to_json(self):
        return {"n": self.n, "m_desired": self.m_desired, "m_actual": self.m_actual,
                "sizes": list(self.partition.sizes), "lambda1": self.lambda1,
                "shortfall": self.shortfall, "rule": self.rule,
                "steps": [[s.x, s.count, s.edges_before, s.vertices_before] for s in self.steps]}


@dataclass(frozen=True)
class Certificate:
    kind: str
    n: int
    m: int
    lambda1: int
    basis: str
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self):
        return {"kind": self.kind, "n": self.n, "m": self.m, "lambda1": self.lambda1,
                "basis": self.basis, "details": self.details}


@dataclass(frozen=True)
class LowerBounds:
    delta_plus_1: int | None
    ceil_davg_plus_1: int | None
    n_over_alpha: Fraction | None
    floor_n_over_gamma: int | None
    alpha: int | None
    gamma: int | None

    def best(self) -> float:
        vals = [v for v in (self.delta_plus_1, self.ceil_davg_plus_1,
                            self.n_over_alpha, self.floor_n_over_gamma) if v is not None]
        return float(max(vals)) if vals else 0.0


# -- greedy clique-union construction -----------------------------------------

@lru_cache(maxsize=None)
def _exact_path(edges: int, verts: int):
    """Smallest-x-first path of greedy steps that uses up ``edges`` exactly."""
    if edges == 0:
        return ()
    for x in range(2, verts + 1):
        c = comb(x, 2)
        count = edges // c
        if count == 0:
            break
        if count * x > verts:
            continue
        rest = _exact_path(edges - count * c, verts - count * x)
        if rest is not None:
            return ((x, count),) + rest
    return None


@lru_cache(maxsize=None)
def _best_relaxed(edges: int, verts: int, xmax: int):
    """(leftover, path) minimising leftover edges; any count that fits, sizes decreasing."""
    best = (edges, ())
    for x in range(2, min(verts, xmax) + 1):
        c = comb(x, 2)
        if c > edges:
            break
        for count in range(min(edges // c, verts // x), 0, -1):
            left, rest = _best_relaxed(edges - count * c, verts - count * x, x - 1)
            cand = (left, ((x, count),) + rest)
            if cand < best:
                best = cand
        if best[0] == 0:
            break
    return best


def _literal(edges: int, verts: int):
    path = []
    while edges > 0 and verts > 0:
        for x in range(2, verts + 1):
            c = comb(x, 2)
            count = edges // c
            if count >= 1 and count * x <= verts:
                break
        else:
            break
        path.append((x, count))
        edges -= count * comb(x, 2)
        verts -= count * x
    return tuple(path)


def algorithm1(n: int, m_desired: int, lookahead: bool = True) -> BuildResult:
    """Union-of-cliques construction with the least lambda1 the step rule allows.

    Each step takes the smallest clique size ``x`` for which
    ``count = E_rem // C(x, 2)`` copies fit in the remaining vertices.  With
    ``lookahead`` the smallest ``x`` is taken among choices that still lead
    to exactly ``m_desired`` edges.  When no such path exists, the result
    is the path that leaves the fewest edges unplaced, and the count of a
    step may then be below ``E_rem // C(x, 2)`` (``rule="relaxed"``).
    ``lookahead=False`` runs the plain greedy loop and stops when no size fits.
    Leftover vertices become ``K_1`` components.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= m_desired <= comb(n, 2):
        raise ValueError(f"m_desired={m_desired} outside [0, C({n},2)={comb(n, 2)}]")
    rule = "exact"
    if not lookahead:
        path, rule = _literal(m_desired, n), "literal"
    else:
        path = _exact_path(m_desired, n)
        if path is None:
            path, rule = _best_relaxed(m_desired, n, n)[1], "relaxed"
    steps, sizes = [], []
    edges, verts = m_desired, n
    for x, count in path:
        steps.append(Step(x, count, edges, verts))
        sizes += [x] * count
        edges -= count * comb(x, 2)
        verts -= count * x
    sizes += [1] * verts
    part = Partition(tuple(sizes))
    return BuildResult(part, m_desired, part.m, tuple(steps), steps[0].x if steps else 0, rule)


# -- sufficient conditions ------------------------------------------------------

def check_two_component_condition(n: int, ell: int) -> tuple[str, Fraction]:
    """Classify ``ell - 2 ell^2 / n`` against 1 for ``K_ell + K_{n-ell}``."""
    if not 1 <= ell or 2 * ell > n:
        raise ValueError(f"need 1 <= ell <= n/2, got ell={ell}, n={n}")
    value = ell - Fraction(2 * ell * ell, n)
    if value < 1:
        return STRICT, value
    return (EQUALITY if value == 1 else VIOLATED), value


def check_multi_component_condition(partition: Partition) -> tuple[str, Fraction]:
    """Evaluate ``n1 - sum(n_i^2) / n``; satisfied iff below 1."""
    n = partition.n
    value = partition.largest - Fraction(sum(s * s for s in partition.sizes), n)
    if value < 0:
        raise ArithmeticError(f"negative condition value {value} for {partition}")
    return (SATISFIED if value < 1 else VIOLATED), value


def discriminant_equality_scan(n_max: int) -> list[tuple[int, int]]:
    """All integer ``(n, ell)`` with ``2 ell^2 - n ell + n = 0`` and ``1 <= ell <= n/2``."""
    if n_max < 9:
        raise ValueError("n_max must be at least 9")
    out = []
    for n in range(3, n_max + 1):
        disc = n * n - 8 * n
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for num in {n - r, n + r}:
            if num % 4 == 0:
                ell = num // 4
                if 1 <= ell and 2 * ell <= n and 2 * ell * ell - n * ell + n == 0:
                    out.append((n, ell))
    return sorted(out)


# -- exact alpha / gamma -------------------------------------------------------

def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_clique(adj: tuple[int, ...], n: int) -> int:
    """Clique number by branch and bound with a greedy colouring bound."""
    best = 0

    def colour_order(cand: int):
        # greedy sequential colouring; returns vertices with their colour count bound
        order, bounds = [], []
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(size: int, cand: int):
        nonlocal best
        order, bounds = colour_order(cand)
        for v, b in zip(reversed(order), reversed(bounds)):
            if size + b <= best:
                return
            expand(size + 1, cand & adj[v])
            cand &= ~(1 << v)
        if size > best:
            best = size

    expand(0, (1 << n) - 1)
    return best


def independence_number(g: Graph, n_cap: int = EXACT_N_CAP) -> int | None:
    if g.n > n_cap:
        return None
    return _max_clique(complement(g).adj, g.n)


def domination_number(g: Graph, n_cap: int = EXACT_N_CAP) -> int | None:
    """Smallest dominating set size by iterative deepening over closed neighbourhoods."""
    if g.n > n_cap:
        return None
    n = g.n
    closed = [g.adj[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1
    reach = max(c.bit_count() for c in closed)

    def search(covered: int, budget: int) -> bool:
        if covered == full:
            return True
        if budget == 0 or (full & ~covered).bit_count() > budget * reach:
            return False
        u = ((full & ~covered) & -(full & ~covered)).bit_length() - 1
        return any(search(covered | closed[w], budget - 1) for w in _iter_bits(closed[u]))

    k = 1
    while not search(0, k):
        k += 1
    return k


def lower_bounds(g: Graph, n_cap: int = EXACT_N_CAP) -> LowerBounds:
    """Lower bounds on lambda1.

    ``ceil_davg_plus_1`` holds for every graph with the same ``n`` and ``m``
    (when ``m >= 1``); the others are specific to ``g``.  ``n/alpha`` and
    ``floor(n/gamma)`` are reported for the edgeless graph too, where they are
    not valid bounds.  alpha and gamma above ``n_cap`` are left as None.
    """
    prof = degree_profile(g)
    alpha = independence_number(g, n_cap)
    gamma = domination_number(g, n_cap)
    return LowerBounds(
        delta_plus_1=prof.delta_max + 1 if g.m else None,
        ceil_davg_plus_1=prof.ceil_d_avg + 1 if g.m else None,
        n_over_alpha=Fraction(g.n, alpha) if alpha else None,
        floor_n_over_gamma=g.n // gamma if gamma else None,
        alpha=alpha,
        gamma=gamma,
    )


# -- certification --------------------------------------------------------------

def class_degree_bound(n: int, m: int) -> int | None:
    """``ceil(2m/n) + 1``: no graph with n vertices and m >= 1 edges has smaller lambda1."""
    return -(-2 * m // n) + 1 if m else None


def certify(n: int, m: int, oracle: bool = False, verify: bool = False
            ) -> tuple[BuildResult, list[Certificate]]:
    """Build the clique union for ``(n, m)`` and list what can be certified about it.

    An empty LEGM list means "global status unknown", never "not LEGM".
    ``oracle=True`` runs exhaustive search (n <= 10) and ``verify=True`` re-checks
    the LELM claim numerically over the whole one-edge neighbourhood.
    """
    res = algorithm1(n, m)
    lam = res.lambda1
    part = res.partition
    lelm_details = {"sizes": list(part.sizes)}
    if verify:
        from .neighborhood import verify_lelm
        from .graph_core import build_union_complete
        report = verify_lelm(build_union_complete(part))
        lelm_details["neighborhood"] = report.to_json()
    certs = [Certificate("LELM", n, res.m_actual, lam, "clique-union", lelm_details)]
    if res.m_actual != m or m == 0:
        return res, certs

    bound = class_degree_bound(n, m)
    status3, value3 = check_multi_component_condition(part)
    # each LEGM basis proves lambda1 >= lam for every graph with n vertices and m edges
    base = {"lower_bound": lam, "class_degree_bound": bound, "condition_value": str(value3)}
    if part.p == 2:
        ell = part.sizes[1]
        status2, value2 = check_two_component_condition(n, ell)
        if status2 == STRICT:
            certs.append(Certificate("LEGM", n, m, lam, "two-component-strict",
                                     {**base, "ell": ell, "condition_value": str(value2)}))
        elif status2 == EQUALITY and (n, ell) in EQUALITY_SETTLED:
            certs.append(Certificate("LEGM", n, m, lam, "two-component-equality",
                                     {"lower_bound": lam, "ell": ell, "condition_value": str(value2),
                                      "settled_by": EQUALITY_SETTLED[(n, ell)]}))
    if status3 == SATISFIED:
        certs.append(Certificate("LEGM", n, m, lam, "square-sum", base))
    if bound == lam:
        certs.append(Certificate("LEGM", n, m, lam, "degree-bound-match",
                                 {"lower_bound": bound, "d_avg": str(Fraction(2 * m, n))}))
    if oracle:
        from .search import best_search
        rep = best_search(n, m)
        if abs(rep.min_lambda1 - lam) <= 1e-6:
            certs.append(Certificate("LEGM", n, m, lam, "oracle",
                                     {"lower_bound": lam, "method": rep.method,
                                      "min_lambda1": rep.min_lambda1,
                                      "graphs_examined": rep.graphs_examined}))
    return res, certs


def is_legm(certs: list[Certificate]) -> bool:
    return any(c.kind == "LEGM" for c in certs)
