# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels over packed uint64 words.

Same contracts as ``_kernels_py``; vectors arrive as 1-D word arrays and
generator lists as 2-D (count, words) arrays. The loops release the GIL so
the dispatcher can run index ranges on worker threads.
"""

import numpy as np

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil


cdef inline int weight(const uint64_t* v, Py_ssize_t nw) noexcept nogil:
    cdef int w = 0
    cdef Py_ssize_t t
    for t in range(nw):
        w += popcount64(v[t])
    return w


cdef inline bint lex_less(const uint64_t* a, const uint64_t* b, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t t
    cdef uint64_t d
    for t in range(nw):
        d = a[t] ^ b[t]
        if d:
            return (a[t] & d & (~d + 1)) != 0
    return False


cdef inline void xor_into(uint64_t* v, const uint64_t* g, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(nw):
        v[t] ^= g[t]


cdef inline void copy_words(uint64_t* dst, const uint64_t* src, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(nw):
        dst[t] = src[t]


cdef inline bint any_and(const uint64_t* a, const uint64_t* b, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(nw):
        if a[t] & b[t]:
            return True
    return False


def gray_min(const uint64_t[::1] base, const uint64_t[:, ::1] gens,
             uint64_t required, uint64_t start, uint64_t stop):
    cdef Py_ssize_t nw = base.shape[0]
    cdef Py_ssize_t k = gens.shape[0]
    cdef uint64_t[::1] v = np.array(base, dtype=np.uint64)
    cdef uint64_t[::1] best = np.zeros(nw, dtype=np.uint64)
    cdef int best_w = -1
    cdef int w
    cdef uint64_t g, idx, gg
    cdef int bit
    cdef Py_ssize_t j
    if start >= stop:
        return -1, best.base
    with nogil:
        g = start ^ (start >> 1)
        gg = g
        j = 0
        while gg:
            if gg & 1:
                xor_into(&v[0], &gens[j, 0], nw)
            gg >>= 1
            j += 1
        idx = start
        while True:
            if required == 0 or (g & required):
                w = weight(&v[0], nw)
                if best_w < 0 or w < best_w or (w == best_w and lex_less(&v[0], &best[0], nw)):
                    best_w = w
                    copy_words(&best[0], &v[0], nw)
            idx += 1
            if idx >= stop:
                break
            bit = ctz64(idx)
            xor_into(&v[0], &gens[bit, 0], nw)
            g ^= (<uint64_t>1) << bit
    return best_w, best.base


def gray_syndrome_min(const uint64_t[::1] target, const uint64_t[:, ::1] cols,
                      const uint64_t[::1] nonzero, uint64_t start, uint64_t stop):
    cdef Py_ssize_t sw = target.shape[0]
    cdef uint64_t[::1] syn = np.zeros(sw, dtype=np.uint64)
    cdef uint64_t[::1] keep = np.zeros(sw, dtype=np.uint64)
    cdef bint has_nonzero = False
    cdef int best_w = -1
    cdef uint64_t best_x = 0
    cdef uint64_t x, gg, idx
    cdef int w, bit
    cdef Py_ssize_t j, t
    cdef bint ok
    if start >= stop:
        return -1, 0
    for t in range(sw):
        keep[t] = ~nonzero[t]
        if nonzero[t]:
            has_nonzero = True
    with nogil:
        x = start ^ (start >> 1)
        gg = x
        j = 0
        while gg:
            if gg & 1:
                xor_into(&syn[0], &cols[j, 0], sw)
            gg >>= 1
            j += 1
        w = popcount64(x)
        idx = start
        while True:
            ok = True
            for t in range(sw):
                if (syn[t] & keep[t]) != (target[t] & keep[t]):
                    ok = False
                    break
            if ok and has_nonzero:
                ok = any_and(&syn[0], &nonzero[0], sw)
            if ok:
                if best_w < 0 or w < best_w or (w == best_w and (x ^ best_x) & x & (~(x ^ best_x) + 1)):
                    best_w = w
                    best_x = x
            idx += 1
            if idx >= stop:
                break
            bit = ctz64(idx)
            xor_into(&syn[0], &cols[bit, 0], sw)
            x ^= (<uint64_t>1) << bit
            if (x >> bit) & 1:
                w += 1
            else:
                w -= 1
    return best_w, best_x


def subset_min(const uint64_t[:, ::1] rows, int size, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t nw = rows.shape[1]
    cdef Py_ssize_t t, u
    cdef int w
    cdef int best = -1
    if size == 0:
        return (0, ()) if lo == 0 < hi else (-1, ())
    if lo >= hi or lo + size > n:
        return -1, ()
    cdef Py_ssize_t[::1] idx = np.arange(lo, lo + size, dtype=np.intp)
    cdef Py_ssize_t[::1] best_idx = np.array(idx, dtype=np.intp)
    cdef uint64_t[:, ::1] acc = np.zeros((size + 1, nw), dtype=np.uint64)
    with nogil:
        for t in range(size):
            copy_words(&acc[t + 1, 0], &acc[t, 0], nw)
            xor_into(&acc[t + 1, 0], &rows[idx[t], 0], nw)
        while True:
            w = weight(&acc[size, 0], nw)
            if best < 0 or w < best:
                best = w
                for t in range(size):
                    best_idx[t] = idx[t]
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
                copy_words(&acc[u + 1, 0], &acc[u, 0], nw)
                xor_into(&acc[u + 1, 0], &rows[idx[u], 0], nw)
    return best, tuple(int(i) for i in best_idx)


def locally_minimal_min(const uint64_t[:, ::1] gens, const uint64_t[:, ::1] moves,
                        uint64_t start, uint64_t stop):
    cdef Py_ssize_t nw = gens.shape[1]
    cdef Py_ssize_t nm = moves.shape[0]
    cdef uint64_t[::1] v = np.zeros(nw, dtype=np.uint64)
    cdef uint64_t[::1] best = np.zeros(nw, dtype=np.uint64)
    cdef int[::1] move_w = np.zeros(nm, dtype=np.intc)
    cdef int best_w = -1
    cdef int w, ov, bit
    cdef uint64_t g, gg, idx
    cdef Py_ssize_t j, r, t
    cdef bint minimal
    if start >= stop:
        return -1, best.base
    for r in range(nm):
        move_w[r] = weight(&moves[r, 0], nw)
    with nogil:
        g = start ^ (start >> 1)
        gg = g
        j = 0
        while gg:
            if gg & 1:
                xor_into(&v[0], &gens[j, 0], nw)
            gg >>= 1
            j += 1
        idx = start
        while True:
            w = weight(&v[0], nw)
            if w > 0 and (best_w < 0 or w < best_w or (w == best_w and lex_less(&v[0], &best[0], nw))):
                minimal = True
                for r in range(nm):
                    ov = 0
                    for t in range(nw):
                        ov += popcount64(v[t] & moves[r, t])
                    if 2 * ov > move_w[r]:
                        minimal = False
                        break
                if minimal:
                    best_w = w
                    copy_words(&best[0], &v[0], nw)
            idx += 1
            if idx >= stop:
                break
            bit = ctz64(idx)
            xor_into(&v[0], &gens[bit, 0], nw)
            g ^= (<uint64_t>1) << bit
    return best_w, best.base
