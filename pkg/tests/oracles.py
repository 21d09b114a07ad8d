"""Brute-force reference implementations.

Everything here enumerates the full ambient space with numpy and never calls
the package's elimination or search routines, so agreement is a genuine
second route to the same answer.
"""

from __future__ import annotations

import itertools
import random

import numpy as np


def dense(mat) -> np.ndarray:
    out = np.zeros((mat.nrows, mat.ncols), dtype=np.uint8)
    for i, j in mat.coords():
        out[i, j] = 1
    return out


def all_vectors(n: int) -> np.ndarray:
    """Every vector of GF(2)^n as rows, row r holding the bits of r."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def span_codes(cols: np.ndarray) -> set[int]:
    """Integer codes of every vector in the column span of ``cols``."""
    n, c = cols.shape
    if c == 0:
        return {0}
    combos = all_vectors(c)
    span = (combos.astype(np.int64) @ cols.T.astype(np.int64)) % 2
    return set((span.astype(np.int64) << np.arange(n)).sum(axis=1).tolist())


def to_code(v: np.ndarray) -> np.ndarray:
    return (v.astype(np.int64) << np.arange(v.shape[-1])).sum(axis=-1)


def rank(mat: np.ndarray) -> int:
    """log2 of the number of distinct row combinations."""
    return len(span_codes(mat.T)).bit_length() - 1


def kernel(mat: np.ndarray) -> np.ndarray:
    """All x with mat @ x = 0, as rows."""
    V = all_vectors(mat.shape[1])
    return V[((V.astype(np.int64) @ mat.T.astype(np.int64)) % 2).sum(axis=1) == 0]


def classical_distance(delta: np.ndarray) -> int | None:
    """Minimum weight of a nonzero x with delta^T x = 0."""
    K = kernel(delta.T)
    w = K.sum(axis=1)
    w = w[w > 0]
    return int(w.min()) if w.size else None


def coset_min(offset: np.ndarray, span: np.ndarray) -> int:
    """Minimum weight over offset + span by scanning all 2^n vectors."""
    members = span_codes(span)
    V = all_vectors(len(offset))
    shifted = to_code(V ^ offset[None, :])
    mask = np.isin(shifted, np.fromiter(members, dtype=np.int64))
    return int(V[mask].sum(axis=1).min())


def nontrivial_min(kernel_of: np.ndarray, trivial: np.ndarray) -> int | None:
    """Minimum weight over Ker(kernel_of) minus colspan(trivial)."""
    K = kernel(kernel_of)
    triv = np.fromiter(span_codes(trivial), dtype=np.int64)
    keep = ~np.isin(to_code(K), triv)
    w = K[keep].sum(axis=1)
    return int(w.min()) if w.size else None


def quantum_distances(d1: np.ndarray, d2: np.ndarray) -> tuple[int | None, int | None]:
    """(d_X, d_Z) of the complex with boundary maps d1 (sites x edges) and d2 (edges x faces)."""
    d_z = nontrivial_min(d1, d2)
    d_x = nontrivial_min(d2.T, d1.T)
    return d_x, d_z


def energy(delta: np.ndarray, flips: np.ndarray) -> int:
    return int(((flips.astype(np.int64) @ delta.astype(np.int64)) % 2).sum())


def barrier(delta: np.ndarray, support: list[int], F: int) -> int:
    best = None
    for combo in itertools.combinations(support, F):
        x = np.zeros(delta.shape[0], dtype=np.uint8)
        x[list(combo)] = 1
        e = energy(delta, x)
        best = e if best is None else min(best, e)
    return best


def all_min_weight_logicals(delta: np.ndarray) -> list[tuple[int, ...]]:
    K = kernel(delta.T)
    w = K.sum(axis=1)
    top = w[w > 0].min()
    return sorted(tuple(np.flatnonzero(row)) for row in K[w == top])


def annealed_barrier(delta: np.ndarray, support: list[int], F: int, seed: int = 0, restarts: int = 8, sweeps: int = 400) -> int:
    """Best energy found by simulated annealing over F-subsets; never below the true minimum."""
    rng = random.Random(seed)
    if F == 0:
        return 0
    best = None
    for _ in range(restarts):
        chosen = rng.sample(support, F)
        x = np.zeros(delta.shape[0], dtype=np.uint8)
        x[chosen] = 1
        e = energy(delta, x)
        for step in range(sweeps):
            temp = max(0.05, 2.0 * (1 - step / sweeps))
            out_pool = [s for s in support if not x[s]]
            if not out_pool:
                break
            i, j = rng.choice(chosen), rng.choice(out_pool)
            x[i], x[j] = 0, 1
            e2 = energy(delta, x)
            if e2 <= e or rng.random() < np.exp((e - e2) / temp):
                chosen[chosen.index(i)] = j
                e = e2
            else:
                x[i], x[j] = 1, 0
            best = e if best is None else min(best, e)
        best = e if best is None else min(best, e)
    return best


def locally_minimal_distance(d1: np.ndarray, d2: np.ndarray) -> int | None:
    """Smallest nonzero cocycle that no single-site coboundary shortens."""
    K = kernel(d2.T)
    moves = d1  # row i is the coboundary of site i
    best = None
    for c in K:
        w = int(c.sum())
        if w == 0 or (best is not None and w >= best):
            continue
        if all(int((c ^ mv).sum()) >= w for mv in moves):
            best = w
    return best


def symplectic_form_holds(rows: list[int], n: int) -> bool:
    """M Omega M^T = Omega for the 2n x 2n matrix whose rows are (x | z) images."""
    M = np.array([[(r >> j) & 1 for j in range(2 * n)] for r in rows], dtype=np.int64)
    omega = np.zeros((2 * n, 2 * n), dtype=np.int64)
    omega[:n, n:] = np.eye(n, dtype=np.int64)
    omega[n:, :n] = np.eye(n, dtype=np.int64)
    return bool(np.array_equal((M @ omega @ M.T) % 2, omega))
