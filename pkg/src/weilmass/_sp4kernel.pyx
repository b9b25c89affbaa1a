# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for packed Sp4(F_ell) sweeps.

Same contract and packing as _sp4kernel_py: slot k = 4*i + j of a uint64
holds matrix entry (i, j) in a bit field of width bit_length(ell - 1).
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

import numpy as np

BACKEND = "cython"

cdef uint64_t EMPTY = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef inline int width_for_c(int ell) nogil:
    cdef int w = 0
    cdef int v = ell - 1
    while v:
        w += 1
        v >>= 1
    return w


cdef inline void unpack16(uint64_t key, int w, int mask, int *out) nogil:
    cdef int k
    for k in range(16):
        out[k] = <int>((key >> (k * w)) & <uint64_t>mask)


cdef inline uint64_t pack16(int *m, int w) nogil:
    cdef uint64_t key = 0
    cdef int k
    for k in range(16):
        key |= (<uint64_t>m[k]) << (k * w)
    return key


cdef inline void matmul4(int *A, int *B, int *C, int ell) nogil:
    cdef int i, j, k, acc
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc += A[4 * i + k] * B[4 * k + j]
            C[4 * i + j] = acc % ell


cdef inline void charpoly_c3_c2(int *a, int ell, int *c3, int *c2) nogil:
    cdef int e1 = a[0] + a[5] + a[10] + a[15]
    cdef int e2 = 0
    cdef int i, j
    for i in range(4):
        for j in range(i + 1, 4):
            e2 += a[4 * i + i] * a[4 * j + j] - a[4 * i + j] * a[4 * j + i]
    c3[0] = ((-e1) % ell + ell) % ell
    c2[0] = (e2 % ell + ell) % ell


cdef inline bint poly_is_zero_at(int64_t *coeffs, int ncoef, int *g, int ell) nogil:
    # Horner: acc = ((c4*g + c3)*g + ...) + c0*I
    cdef int acc[16]
    cdef int tmp[16]
    cdef int k, i, c
    for k in range(16):
        acc[k] = 0
    for i in range(ncoef - 1, -1, -1):
        matmul4(acc, g, tmp, ell)
        c = <int>(coeffs[i] % ell)
        if c < 0:
            c += ell
        for k in range(16):
            acc[k] = tmp[k]
        if c:
            acc[0] = (acc[0] + c) % ell
            acc[5] = (acc[5] + c) % ell
            acc[10] = (acc[10] + c) % ell
            acc[15] = (acc[15] + c) % ell
    for k in range(16):
        if acc[k]:
            return False
    return True


cdef inline bint table_insert(uint64_t *table, uint64_t mask, uint64_t key) nogil:
    """True if key was absent and has been inserted."""
    cdef uint64_t idx = (key * <uint64_t>0x9E3779B97F4A7C15) & mask
    while True:
        if table[idx] == EMPTY:
            table[idx] = key
            return True
        if table[idx] == key:
            return False
        idx = (idx + 1) & mask


def width_for(ell):
    return width_for_c(ell)


def bfs_closure(gens, int ell, long long expected):
    """Closure of packed generators under multiplication; sorted uint64 array."""
    cdef uint64_t[::1] gens_v = np.ascontiguousarray(gens, dtype=np.uint64)
    cdef int ngens = gens_v.shape[0]
    cdef int w = width_for_c(ell)
    cdef int mask = (1 << w) - 1
    cdef uint64_t cap = 1
    while cap < <uint64_t>(2 * expected + 16):
        cap <<= 1
    cdef uint64_t tmask = cap - 1
    cdef uint64_t *table = <uint64_t *>malloc(cap * sizeof(uint64_t))
    if table == NULL:
        raise MemoryError
    cdef uint64_t i
    for i in range(cap):
        table[i] = EMPTY

    out = np.empty(expected, dtype=np.uint64)
    cdef uint64_t[::1] order = out
    cdef int *gmats = <int *>malloc(ngens * 16 * sizeof(int))
    if gmats == NULL:
        free(table)
        raise MemoryError
    cdef int gi, k
    for gi in range(ngens):
        unpack16(gens_v[gi], w, mask, gmats + 16 * gi)

    cdef int A[16]
    cdef int C[16]
    cdef uint64_t ident = 0
    cdef int ident_m[16]
    for k in range(16):
        ident_m[k] = 1 if (k % 5 == 0) else 0
    ident = pack16(ident_m, w)

    cdef long long n = 0, head = 0
    cdef uint64_t key, nk
    cdef bint overflow = False
    with nogil:
        table_insert(table, tmask, ident)
        order[0] = ident
        n = 1
        while head < n:
            key = order[head]
            head += 1
            unpack16(key, w, mask, A)
            for gi in range(ngens):
                matmul4(A, gmats + 16 * gi, C, ell)
                nk = pack16(C, w)
                if table_insert(table, tmask, nk):
                    if n >= expected:
                        overflow = True
                        break
                    order[n] = nk
                    n += 1
            if overflow:
                break
    free(table)
    free(gmats)
    if overflow:
        raise ValueError("closure exceeded the expected group order")
    res = out[:n].copy()
    res.sort()
    return res


def charpoly_histogram(elements, int ell, gamma0):
    """Counts of (c3, c2) over the coset gamma0 * elements; shape (ell, ell)."""
    cdef uint64_t[::1] elts = np.ascontiguousarray(elements, dtype=np.uint64)
    cdef int w = width_for_c(ell)
    cdef int mask = (1 << w) - 1
    cdef int g0[16]
    unpack16(<uint64_t>gamma0, w, mask, g0)
    hist_np = np.zeros(ell * ell, dtype=np.int64)
    cdef int64_t[::1] hist = hist_np
    cdef long long i, n = elts.shape[0]
    cdef int S[16]
    cdef int G[16]
    cdef int c3 = 0, c2 = 0
    with nogil:
        for i in range(n):
            unpack16(elts[i], w, mask, S)
            matmul4(g0, S, G, ell)
            charpoly_c3_c2(G, ell, &c3, &c2)
            hist[c3 * ell + c2] += 1
    return hist_np.reshape(ell, ell)


def count_in_fiber(elements, int ell, gamma0, int c3, int c2, checks, int mode):
    """Count gamma = gamma0*s in charpoly bin (c3, c2) passing the checks.

    mode 0: no checks; 1: all check polys nonzero at gamma; 2: all zero.
    """
    cdef uint64_t[::1] elts = np.ascontiguousarray(elements, dtype=np.uint64)
    checks_np = np.ascontiguousarray(np.asarray(checks, dtype=np.int64).reshape(-1, 5))
    cdef int64_t[:, ::1] chk = checks_np
    cdef int nchk = chk.shape[0]
    cdef int w = width_for_c(ell)
    cdef int mask = (1 << w) - 1
    cdef int g0[16]
    unpack16(<uint64_t>gamma0, w, mask, g0)
    cdef long long i, n = elts.shape[0], total = 0
    cdef int S[16]
    cdef int G[16]
    cdef int gc3 = 0, gc2 = 0, j
    cdef bint ok, z
    with nogil:
        for i in range(n):
            unpack16(elts[i], w, mask, S)
            matmul4(g0, S, G, ell)
            charpoly_c3_c2(G, ell, &gc3, &gc2)
            if gc3 != c3 or gc2 != c2:
                continue
            ok = True
            if mode != 0:
                for j in range(nchk):
                    z = poly_is_zero_at(&chk[j, 0], 5, G, ell)
                    if (mode == 1 and z) or (mode == 2 and not z):
                        ok = False
                        break
            if ok:
                total += 1
    return total


def find_in_fiber(elements, int ell, gamma0, int c3, int c2, checks, int mode,
                  long long max_out):
    """First packed gamma = gamma0*s matching, up to max_out of them."""
    cdef uint64_t[::1] elts = np.ascontiguousarray(elements, dtype=np.uint64)
    checks_np = np.ascontiguousarray(np.asarray(checks, dtype=np.int64).reshape(-1, 5))
    cdef int64_t[:, ::1] chk = checks_np
    cdef int nchk = chk.shape[0]
    cdef int w = width_for_c(ell)
    cdef int mask = (1 << w) - 1
    cdef int g0[16]
    unpack16(<uint64_t>gamma0, w, mask, g0)
    out_np = np.empty(max_out, dtype=np.uint64)
    cdef uint64_t[::1] out = out_np
    cdef long long i, n = elts.shape[0], found = 0
    cdef int S[16]
    cdef int G[16]
    cdef int gc3 = 0, gc2 = 0, j
    cdef bint ok, z
    with nogil:
        for i in range(n):
            if found >= max_out:
                break
            unpack16(elts[i], w, mask, S)
            matmul4(g0, S, G, ell)
            charpoly_c3_c2(G, ell, &gc3, &gc2)
            if gc3 != c3 or gc2 != c2:
                continue
            ok = True
            if mode != 0:
                for j in range(nchk):
                    z = poly_is_zero_at(&chk[j, 0], 5, G, ell)
                    if (mode == 1 and z) or (mode == 2 and not z):
                        ok = False
                        break
            if ok:
                out[found] = pack16(G, w)
                found += 1
    return out_np[:found].copy()


def count_commuting(elements, int ell, gamma0, target):
    """Count gamma = gamma0*s commuting with the packed target matrix."""
    cdef uint64_t[::1] elts = np.ascontiguousarray(elements, dtype=np.uint64)
    cdef int w = width_for_c(ell)
    cdef int mask = (1 << w) - 1
    cdef int g0[16]
    cdef int T[16]
    unpack16(<uint64_t>gamma0, w, mask, g0)
    unpack16(<uint64_t>target, w, mask, T)
    cdef long long i, n = elts.shape[0], total = 0
    cdef int S[16]
    cdef int G[16]
    cdef int GT[16]
    cdef int TG[16]
    cdef int k
    cdef bint same
    with nogil:
        for i in range(n):
            unpack16(elts[i], w, mask, S)
            matmul4(g0, S, G, ell)
            matmul4(G, T, GT, ell)
            matmul4(T, G, TG, ell)
            same = True
            for k in range(16):
                if GT[k] != TG[k]:
                    same = False
                    break
            if same:
                total += 1
    return total
