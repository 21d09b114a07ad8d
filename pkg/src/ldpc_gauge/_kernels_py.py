"""Pure-Python enumeration kernels.

Vectors are Python ints used as bitsets. Every kernel scans a half-open index
range so the caller can split work; the winner is the minimum under the total
order (weight, lexicographic support), which makes the reduction independent
of the split.
"""

from __future__ import annotations


def lex_less(a: int, b: int) -> bool:
    """True when support(a) sorts before support(b) (equal weights assumed)."""
    d = a ^ b
    return d != 0 and (a & d & -d) != 0


def _gray_state(base: int, gens: list[int], g: int) -> int:
    v = base
    j = 0
    while g:
        if g & 1:
            v ^= gens[j]
        g >>= 1
        j += 1
    return v


def gray_min(base: int, gens: list[int], required: int, start: int, stop: int) -> tuple[int, int]:
    """Minimum-weight vector of the form base + sum(gens[j] for j in gray(idx)).

    Indices whose Gray word misses every bit of ``required`` are skipped.
    Returns (-1, 0) when nothing qualifies.
    """
    if start >= stop:
        return -1, 0
    best_w, best_v = -1, 0
    g = start ^ (start >> 1)
    v = _gray_state(base, gens, g)
    idx = start
    while True:
        if not required or g & required:
            w = v.bit_count()
            if best_w < 0 or w < best_w or (w == best_w and lex_less(v, best_v)):
                best_w, best_v = w, v
        idx += 1
        if idx >= stop:
            break
        bit = (idx & -idx).bit_length() - 1
        v ^= gens[bit]
        g ^= 1 << bit
    return best_w, best_v


def gray_syndrome_min(
    target: int, cols: list[int], nonzero: int, start: int, stop: int
) -> tuple[int, int]:
    """Minimum-weight x over the ambient space with a prescribed syndrome.

    ``cols[i]`` is the syndrome of the i-th unit vector. A vector qualifies when
    its syndrome agrees with ``target`` outside ``nonzero`` and, if ``nonzero``
    is set, has at least one bit inside it.
    """
    if start >= stop:
        return -1, 0
    keep = ~nonzero
    best_w, best_x = -1, 0
    x = start ^ (start >> 1)
    syn = _gray_state(0, cols, x)
    w = x.bit_count()
    idx = start
    while True:
        if (syn & keep) == (target & keep) and (not nonzero or syn & nonzero):
            if best_w < 0 or w < best_w or (w == best_w and lex_less(x, best_x)):
                best_w, best_x = w, x
        idx += 1
        if idx >= stop:
            break
        bit = (idx & -idx).bit_length() - 1
        syn ^= cols[bit]
        x ^= 1 << bit
        w += 1 if x >> bit & 1 else -1
    return best_w, best_x


def subset_min(rows: list[int], size: int, lo: int, hi: int) -> tuple[int, tuple[int, ...]]:
    """Minimum weight of XOR over ``size``-subsets whose first element is in [lo, hi).

    Subsets are visited in lexicographic order, so the first strict minimum is
    the lexicographically smallest minimiser.
    """
    n = len(rows)
    if size == 0:
        return (0, ()) if lo == 0 < hi else (-1, ())
    if lo >= hi or lo + size > n:
        return -1, ()
    idx = list(range(lo, lo + size))
    acc = [0] * (size + 1)
    for t in range(size):
        acc[t + 1] = acc[t] ^ rows[idx[t]]
    best, best_idx = -1, ()
    while True:
        w = acc[size].bit_count()
        if best < 0 or w < best:
            best, best_idx = w, tuple(idx)
        t = size - 1
        while t >= 0 and idx[t] == n - size + t:
            t -= 1
        if t < 0:
            break
        idx[t] += 1
        if t == 0 and idx[0] >= hi:
            break
        for u in range(t + 1, size):
            idx[u] = idx[u - 1] + 1
        for u in range(t, size):
            acc[u + 1] = acc[u] ^ rows[idx[u]]
    return best, best_idx


def locally_minimal_min(
    gens: list[int], moves: list[int], start: int, stop: int
) -> tuple[int, int]:
    """Smallest nonzero vector in span(gens) that no single move shortens.

    A move r shortens v exactly when 2|v & r| > |r|.
    """
    if start >= stop:
        return -1, 0
    move_w = [r.bit_count() for r in moves]
    best_w, best_v = -1, 0
    g = start ^ (start >> 1)
    v = _gray_state(0, gens, g)
    idx = start
    while True:
        if v:
            w = v.bit_count()
            if best_w < 0 or w < best_w or (w == best_w and lex_less(v, best_v)):
                for r, rw in zip(moves, move_w):
                    if 2 * (v & r).bit_count() > rw:
                        break
                else:
                    best_w, best_v = w, v
        idx += 1
        if idx >= stop:
            break
        bit = (idx & -idx).bit_length() - 1
        v ^= gens[bit]
        g ^= 1 << bit
    return best_w, best_v
