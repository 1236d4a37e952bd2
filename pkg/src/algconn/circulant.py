"""Circulant graphs and their spectra from the cosine transform of the first row.

A circulant graph on ``Z_n`` is fixed by a symmetric offset set ``S``
(``j in S`` iff ``n - j in S``).  Its Laplacian eigenvalues are
``d - sum_{j in S} cos(2 pi k j / n)`` for ``k = 0..n-1``; the transform of
the first row of ``A - D`` gives their negatives, which is what
``DftSpectrum.X`` holds.  Frequencies are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph_core import Graph, Partition, build_from_edge_list, laplacian
from .partition_builder import Certificate, check_multi_component_condition
from .spectral import eig_symmetric

DFT_TOL = 1e-6
PROBLEM2_MAX_CANDIDATES = 1 << 22


@dataclass(frozen=True)
class CirculantSet:
    n: int
    offsets: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        offs = tuple(sorted(set(self.offsets)))
        if len(offs) != len(self.offsets):
            raise ValueError(f"repeated offsets in {self.offsets}")
        for j in offs:
            if j == 0:
                raise ValueError("offset 0 would be a self-loop")
            if not 0 < j < self.n:
                raise ValueError(f"offset {j} outside 1..{self.n - 1}")
            if self.n - j not in offs:
                raise ValueError(f"offsets not symmetric: {j} present but {self.n - j} missing")
        object.__setattr__(self, "offsets", offs)

    @classmethod
    def from_row(cls, row: str) -> CirculantSet:
        """Parse a 0/1 generating row such as ``"001011010"`` (spaces allowed)."""
        bits = row.replace(" ", "").replace(",", "")
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"row must be a non-empty 0/1 string, got {row!r}")
        if bits[0] != "0":
            raise ValueError("first entry of the row must be 0 (no self-loop)")
        return cls(len(bits), tuple(j for j, b in enumerate(bits) if b == "1"))

    @property
    def row(self) -> str:
        on = set(self.offsets)
        return "".join("1" if j in on else "0" for j in range(self.n))

    @property
    def degree(self) -> int:
        return len(self.offsets)

    def __str__(self):
        return f"C_{self.n}{{{','.join(map(str, self.offsets))}}}"


@dataclass(frozen=True)
class DftSpectrum:
    X: tuple[float, ...]
    peak: float

    @property
    def laplacian_eigenvalues(self) -> tuple[float, ...]:
        """``-X`` sorted non-increasing."""
        return tuple(sorted((-x for x in self.X), reverse=True))


def circulant_graph(s: CirculantSet) -> Graph:
    n = s.n
    pairs = {(min(i, (i + j) % n), max(i, (i + j) % n)) for i in range(n) for j in s.offsets}
    return build_from_edge_list(n, sorted(pairs))


def _cosine_table(n: int) -> np.ndarray:
    k = np.arange(n)
    return np.cos(2.0 * np.pi * np.outer(k, k) / n)


def dft_spectrum(s: CirculantSet, check: bool = True) -> DftSpectrum:
    """Real transform of the first row of ``A - D``; optionally cross-checked by eigensolve."""
    n, d = s.n, s.degree
    cos = _cosine_table(n)
    X = cos[:, list(s.offsets)].sum(axis=1) - d if s.offsets else np.zeros(n)
    assert abs(X[0]) <= 1e-9 * n, f"DC term {X[0]} is not zero"
    X[0] = 0.0
    spec = DftSpectrum(tuple(float(x) for x in X), float(np.abs(X[1:]).max()) if n > 1 else 0.0)
    if check:
        ref = eig_symmetric(laplacian(circulant_graph(s))).values
        dev = max(abs(a - b) for a, b in zip(spec.laplacian_eigenvalues, ref))
        if dev > DFT_TOL:
            raise ArithmeticError(f"transform and eigensolver disagree by {dev:.3e} for {s}")
    return spec


def theorem5_construct(n: int, m: int) -> tuple[CirculantSet, Certificate]:
    """Circulant with ``n`` vertices and ``m`` edges made of equal disjoint cliques.

    Needs ``n | 2m`` and ``(2m/n + 1) | n``.  With ``i = 2m/n + 1`` and
    ``l = n / i`` the offsets ``{l, 2l, ..., n - l}`` join vertices congruent
    mod ``l``, giving ``l`` copies of ``K_i`` with lambda1 = ``i``.
    """
    if n < 1 or m < 1:
        # m = 0 passes both divisibility tests but gives lambda1 = 0, not i = 1
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if (2 * m) % n:
        raise ValueError(f"n={n} does not divide 2m={2 * m}")
    i = 2 * m // n + 1
    if n % i:
        raise ValueError(f"2m/n + 1 = {i} does not divide n={n}")
    ell = n // i
    s = CirculantSet(n, tuple(range(ell, n, ell)))
    part = Partition((i,) * ell)
    _, value = check_multi_component_condition(part)
    assert value == 0, value
    cert = Certificate("LEGM", n, m, i, "square-sum", {
        "sizes": list(part.sizes), "condition_value": str(value), "offsets": list(s.offsets),
        "complement": f"the complement maximises algebraic connectivity, value {n - i}"})
    return s, cert


def _symmetric_candidates(n: int, d: int):
    if not 1 <= d <= n - 1:
        raise ValueError(f"need 1 <= d <= n-1, got d={d}, n={n}")
    if d % 2 and n % 2:
        raise ValueError(f"no symmetric offset set of odd size {d} exists for odd n={n}: "
                         "offsets pair up as {j, n-j} and only even n has the self-paired offset n/2")
    half = d % 2 == 1
    pairs = list(range(1, (n - 1) // 2 + 1))
    k = (d - half) // 2
    if k > len(pairs):
        raise ValueError(f"d={d} needs {k} offset pairs but n={n} has only {len(pairs)}")
    total = math.comb(len(pairs), k)
    if total > PROBLEM2_MAX_CANDIDATES:
        raise ValueError(f"{total} candidate sets exceed the search limit {PROBLEM2_MAX_CANDIDATES}")
    for chosen in combinations(pairs, k):
        offs = set(chosen) | {n - j for j in chosen}
        if half:
            offs.add(n // 2)
        yield tuple(sorted(offs))


def solve_problem2(n: int, d: int) -> tuple[CirculantSet, DftSpectrum]:
    """Symmetric offset set of size ``d`` minimising the peak non-DC magnitude.

    Every symmetric set is tried; ties within 1e-9 go to the
    lexicographically least offset tuple.
    """
    cos = _cosine_table(n)
    best = None
    for offs in _symmetric_candidates(n, d):
        peak = float(np.abs(cos[1:, list(offs)].sum(axis=1) - d).max())
        if best is None or peak < best[0] - 1e-9 or (abs(peak - best[0]) <= 1e-9 and offs < best[1]):
            best = (peak, offs)
    s = CirculantSet(n, best[1])
    return s, dft_spectrum(s)


def problem2_search_size(n: int) -> int:
    """Number of symmetric offset sets of any size: 2 ** floor((n - 1) / 2), doubled for even n."""
    return 2 ** ((n - 1) // 2) * (2 if n % 2 == 0 else 1)

