"""Laplacian spectra via cyclic Jacobi rotations.

The solver works on a stack of symmetric matrices at once: every rotation
index ``(p, q)`` of a sweep is applied to the whole batch with per-matrix
angles.  Searches push tens of thousands of small Laplacians through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph_core import Graph, complement, degree_profile, laplacian, union_partition

TOL = 1e-9
INT_TOL = 1e-6
MAX_SWEEPS = 100
OFFDIAG_RTOL = 1e-12


class AsymmetricMatrixError(ValueError):
    def __init__(self, asymmetry: float):
        super().__init__(f"matrix is not symmetric: max |A - A^T| = {asymmetry:.3e}")
        self.asymmetry = asymmetry


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]
    tol: float = TOL

    @property
    def lambda1(self) -> float:
        return self.values[0]

    @property
    def algebraic_connectivity(self) -> float:
        return self.values[-2] if len(self.values) > 1 else 0.0

    def __len__(self):
        return len(self.values)


def _jacobi(a: np.ndarray, vectors: bool = False):
    """Cyclic Jacobi on a ``(B, n, n)`` float stack; returns (diag, V or None)."""
    A = np.array(a, dtype=float, copy=True)
    B, n, _ = A.shape
    V = np.broadcast_to(np.eye(n), (B, n, n)).copy() if vectors else None
    if n < 2:
        return A[:, np.arange(n), np.arange(n)], V
    norm = np.abs(A).sum(axis=2).max(axis=1)
    thresh = OFFDIAG_RTOL * norm
    iu = np.triu_indices(n, 1)
    rows = np.arange(B)
    for _ in range(MAX_SWEEPS):
        off = np.abs(A[:, iu[0], iu[1]]).max(axis=1)
        active = off > thresh
        if not active.any():
            break
        idx = rows[active]
        S = A[idx]
        W = V[idx] if vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = S[:, p, q]
                nz = apq != 0.0
                if not nz.any():
                    continue
                # a tiny a_pq sends theta to inf, and t to 0: no rotation, as it should
                with np.errstate(over="ignore"):
                    theta = np.divide(S[:, q, q] - S[:, p, p], 2.0 * apq,
                                      out=np.zeros_like(apq), where=nz)
                    t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
                t[theta == 0.0] = 1.0
                t[~nz] = 0.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c2, s2 = c[:, None], s[:, None]
                rp, rq = S[:, p, :].copy(), S[:, q, :]
                S[:, p, :] = c2 * rp - s2 * rq
                S[:, q, :] = s2 * rp + c2 * rq
                cp, cq = S[:, :, p].copy(), S[:, :, q]
                S[:, :, p] = c2 * cp - s2 * cq
                S[:, :, q] = s2 * cp + c2 * cq
                if vectors:
                    vp, vq = W[:, :, p].copy(), W[:, :, q]
                    W[:, :, p] = c2 * vp - s2 * vq
                    W[:, :, q] = s2 * vp + c2 * vq
        A[idx] = S
        if vectors:
            V[idx] = W
    return A[:, np.arange(n), np.arange(n)], V


def _check_symmetric(a: np.ndarray, tol: float):
    asym = float(np.abs(a - np.swapaxes(a, -1, -2)).max()) if a.size else 0.0
    if asym > tol:
        raise AsymmetricMatrixError(asym)


def eigvals_batch(stack, tol: float = TOL) -> np.ndarray:
    """Eigenvalues of each matrix in a ``(B, n, n)`` stack, rows sorted non-increasing."""
    a = np.asarray(stack, dtype=float)
    _check_symmetric(a, tol)
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]))
    d, _ = _jacobi(a)
    return -np.sort(-d, axis=1)


def eigh_jacobi(a, tol: float = TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of one symmetric matrix, values non-increasing, vectors as columns."""
    a = np.asarray(a, dtype=float)
    _check_symmetric(a, tol)
    d, V = _jacobi(a[None], vectors=True)
    order = np.argsort(-d[0], kind="stable")
    return d[0][order], V[0][:, order]


def eig_symmetric(a, tol: float = TOL) -> Spectrum:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return Spectrum(tuple(float(v) for v in eigvals_batch(a[None], tol)[0]), tol)


def laplacian_spectrum(g: Graph, tol: float = TOL) -> Spectrum:
    return eig_symmetric(laplacian(g), tol)


def lambda1_batch(graphs, tol: float = TOL) -> np.ndarray:
    """Largest Laplacian eigenvalue of each graph (all graphs share ``n``)."""
    graphs = list(graphs)
    if not graphs:
        return np.zeros(0)
    stack = np.stack([laplacian(g) for g in graphs])
    return eigvals_batch(stack, tol)[:, 0]


def lambda1(g: Graph, tol: float = TOL, exact: bool = True) -> float:
    """Largest Laplacian eigenvalue.

    Unions of complete graphs short-circuit to the largest component size,
    which is exact.  Pass ``exact=False`` to force the numerical solve.
    """
    if exact:
        part = union_partition(g)
        if part is not None:
            return float(part.largest if g.m else 0)
    value = laplacian_spectrum(g, tol).lambda1
    assert value <= g.n + 1e3 * tol, f"lambda1 {value} exceeds n={g.n}"
    if g.m:
        delta = degree_profile(g).delta_max
        assert value >= delta + 1 - 1e3 * tol, f"lambda1 {value} below Delta+1={delta + 1}"
    return value


def algebraic_connectivity(g: Graph, tol: float = TOL) -> float:
    return laplacian_spectrum(g, tol).algebraic_connectivity


class ComplementCheck(NamedTuple):
    ok: bool
    max_deviation: float


def complement_relation_check(g: Graph, tol: float = 1e-8) -> ComplementCheck:
    """Compare ``lambda_i(G^c)`` with ``n - lambda_{n-i}(G)`` from two independent solves."""
    n = g.n
    mine = laplacian_spectrum(g).values
    comp = laplacian_spectrum(complement(g)).values
    dev = max(abs(mine[-1]), abs(comp[-1]))
    for i in range(1, n):
        # 1-based lambda_i is values[i-1]; lambda_{n-i} is values[n-i-1]
        dev = max(dev, abs(comp[i - 1] - (n - mine[n - i - 1])))
    return ComplementCheck(dev <= tol, dev)
