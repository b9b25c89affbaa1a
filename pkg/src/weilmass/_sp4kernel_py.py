"""Pure-numpy kernels for packed Sp4(F_ell) sweeps (fallback backend).

Matrices over F_ell are packed one entry per fixed-width bit slot of a
uint64: slot k = 4*i + j holds entry (i, j), slot width = bit_length(ell-1).
The compiled backend in _sp4kernel.pyx implements the same five entry points
with identical packing; results must agree bit-for-bit.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_CHUNK = 1 << 17


def width_for(ell: int) -> int:
    return int(ell - 1).bit_length()


def _shifts(ell: int) -> np.ndarray:
    w = width_for(ell)
    return (np.arange(16, dtype=np.uint64) * np.uint64(w))


def unpack_block(keys: np.ndarray, ell: int) -> np.ndarray:
    """(N,) uint64 -> (N, 4, 4) int64."""
    mask = np.uint64((1 << width_for(ell)) - 1)
    m = (keys[:, None] >> _shifts(ell)[None, :]) & mask
    return m.astype(np.int64).reshape(-1, 4, 4)


def pack_block(mats: np.ndarray, ell: int) -> np.ndarray:
    """(N, 4, 4) int -> (N,) uint64."""
    flat = np.ascontiguousarray(mats, dtype=np.uint64).reshape(-1, 16)
    return np.bitwise_or.reduce(flat << _shifts(ell)[None, :], axis=1)


def _isin_sorted(keys: np.ndarray, sorted_arr: np.ndarray) -> np.ndarray:
    if sorted_arr.size == 0:
        return np.zeros(keys.shape, dtype=bool)
    idx = np.searchsorted(sorted_arr, keys)
    idx_c = np.minimum(idx, sorted_arr.size - 1)
    return sorted_arr[idx_c] == keys


def bfs_closure(gens: np.ndarray, ell: int, expected: int) -> np.ndarray:
    """Closure of the generator set under left-to-right multiplication.

    Returns the sorted packed element array; raises if the closure exceeds
    `expected` (a generator was not in the target group).
    """
    gens_m = unpack_block(np.asarray(gens, dtype=np.uint64), ell)
    ident = pack_block(np.eye(4, dtype=np.int64)[None, :, :], ell)
    visited = ident.copy()
    frontier = ident.copy()
    while frontier.size:
        new_chunks = []
        for lo in range(0, frontier.size, _CHUNK):
            fm = unpack_block(frontier[lo:lo + _CHUNK], ell).astype(np.int16)
            prod = np.einsum("nik,gkj->ngij", fm, gens_m.astype(np.int16)) % ell
            new_chunks.append(pack_block(prod.reshape(-1, 4, 4), ell))
        keys = np.unique(np.concatenate(new_chunks))
        fresh = keys[~_isin_sorted(keys, visited)]
        if fresh.size == 0:
            break
        visited = np.union1d(visited, fresh)
        if visited.size > expected:
            raise ValueError("closure exceeded the expected group order")
        frontier = fresh
    return visited  # already sorted


def _coset_mats(elements: np.ndarray, ell: int, gamma0: int, lo: int, hi: int) -> np.ndarray:
    s = unpack_block(elements[lo:hi], ell)
    g0 = unpack_block(np.array([gamma0], dtype=np.uint64), ell)[0]
    return np.einsum("ik,nkj->nij", g0, s) % ell


def _charpoly_c3_c2(g: np.ndarray, ell: int) -> tuple[np.ndarray, np.ndarray]:
    d = g.reshape(-1, 16)
    e1 = d[:, 0] + d[:, 5] + d[:, 10] + d[:, 15]
    e2 = np.zeros(len(d), dtype=np.int64)
    for i in range(4):
        for j in range(i + 1, 4):
            e2 += g[:, i, i] * g[:, j, j] - g[:, i, j] * g[:, j, i]
    return (-e1) % ell, e2 % ell


def charpoly_histogram(elements: np.ndarray, ell: int, gamma0: int) -> np.ndarray:
    """Counts of (c3, c2) over the coset gamma0 * elements; shape (ell, ell)."""
    hist = np.zeros(ell * ell, dtype=np.int64)
    for lo in range(0, elements.size, _CHUNK):
        g = _coset_mats(elements, ell, gamma0, lo, lo + _CHUNK)
        c3, c2 = _charpoly_c3_c2(g, ell)
        hist += np.bincount(c3 * ell + c2, minlength=ell * ell)
    return hist.reshape(ell, ell)


def _poly_at_mats(coeffs: np.ndarray, g: np.ndarray, ell: int) -> np.ndarray:
    """Evaluate one polynomial (ascending int64 coeffs) at a batch of matrices."""
    n = g.shape[0]
    eye = np.eye(4, dtype=np.int64)
    acc = np.zeros((n, 4, 4), dtype=np.int64)
    for c in coeffs[::-1]:
        acc = np.einsum("nij,njk->nik", acc, g) % ell
        if c % ell:
            acc = (acc + (int(c) % ell) * eye) % ell
    return acc


def _fiber_matches(elements, ell, gamma0, c3, c2, checks, mode, lo, hi):
    g = _coset_mats(elements, ell, gamma0, lo, hi)
    gc3, gc2 = _charpoly_c3_c2(g, ell)
    sel = (gc3 == c3) & (gc2 == c2)
    if not sel.any():
        return np.zeros(0, dtype=bool), g[:0]
    gm = g[sel]
    if mode == 0 or len(checks) == 0:
        return sel, gm
    keep = np.ones(gm.shape[0], dtype=bool)
    for row in checks:
        val = _poly_at_mats(row, gm, ell)
        z = (val == 0).all(axis=(1, 2))
        keep &= ~z if mode == 1 else z
    idx = np.flatnonzero(sel)
    out = np.zeros_like(sel)
    out[idx[keep]] = True
    return out, gm[keep]


def count_in_fiber(elements, ell, gamma0, c3, c2, checks, mode) -> int:
    """Count gamma = gamma0*s with charpoly bin (c3, c2) passing the checks.

    mode 0: no checks; mode 1: every check polynomial nonzero at gamma
    (cyclicity via cofactors); mode 2: every check polynomial zero at gamma
    (semisimplicity via the radical).
    """
    total = 0
    checks = np.asarray(checks, dtype=np.int64).reshape(-1, 5)
    for lo in range(0, elements.size, _CHUNK):
        sel, _ = _fiber_matches(elements, ell, gamma0, c3, c2, checks, mode,
                                lo, lo + _CHUNK)
        total += int(sel.sum())
    return total


def find_in_fiber(elements, ell, gamma0, c3, c2, checks, mode, max_out) -> np.ndarray:
    """First packed gamma = gamma0*s matching, up to max_out of them."""
    found: list[np.ndarray] = []
    n = 0
    checks = np.asarray(checks, dtype=np.int64).reshape(-1, 5)
    for lo in range(0, elements.size, _CHUNK):
        _, gm = _fiber_matches(elements, ell, gamma0, c3, c2, checks, mode,
                               lo, lo + _CHUNK)
        if gm.shape[0]:
            found.append(pack_block(gm, ell))
            n += gm.shape[0]
            if n >= max_out:
                break
    if not found:
        return np.zeros(0, dtype=np.uint64)
    return np.concatenate(found)[:max_out]


def count_commuting(elements, ell, gamma0, target) -> int:
    """Count gamma = gamma0*s commuting with the packed target matrix."""
    t = unpack_block(np.array([target], dtype=np.uint64), ell)[0]
    total = 0
    for lo in range(0, elements.size, _CHUNK):
        g = _coset_mats(elements, ell, gamma0, lo, lo + _CHUNK)
        gt = np.einsum("nij,jk->nik", g, t) % ell
        tg = np.einsum("ij,njk->nik", t, g) % ell
        total += int((gt == tg).all(axis=(1, 2)).sum())
    return total
