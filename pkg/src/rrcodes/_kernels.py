"""Compiled inner loops for GF(q) linear algebra.

Field elements are ints in ``[0, q)`` encoding the base-``p`` digits of the
coefficient vector over GF(p). Scalar helpers work from the digits and the
log/antilog tables; the matrix kernels take full addition, multiplication,
negation and inversion tables ``(at, mt, nt, it)`` instead.
"""

from __future__ import annotations

import os

import numpy as np
from numba import config, njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    config.THREADING_LAYER = "workqueue"


@njit(cache=True)
def gadd(a, b, p, m):
    if p == 2:
        return a ^ b
    if m == 1:
        r = a + b
        return r - p if r >= p else r
    res = 0
    place = 1
    for _ in range(m):
        d = a % p + b % p
        if d >= p:
            d -= p
        res += d * place
        place *= p
        a //= p
        b //= p
    return res


@njit(cache=True)
def gneg(a, p, m):
    if p == 2:
        return a
    if m == 1:
        return (p - a) % p
    res = 0
    place = 1
    for _ in range(m):
        res += ((p - a % p) % p) * place
        place *= p
        a //= p
    return res


@njit(cache=True)
def gmul(a, b, q, exp, log):
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % (q - 1)]


@njit(cache=True)
def ginv(a, q, exp, log):
    return exp[(q - 1 - log[a]) % (q - 1)]


@njit(cache=True)
def _axpy(dst, f, src, start, at, mt, nt, it):
    # dst -= f * src, columns >= start
    row = mt[nt[f]]
    for c in range(start, dst.shape[0]):
        s = src[c]
        if s != 0:
            dst[c] = at[dst[c], row[s]]


@njit(cache=True)
def rref_inplace(a, nrows, at, mt, nt, it):
    """Reduce the first ``nrows`` rows of ``a`` to RREF in place; return rank."""
    ncols = a.shape[1]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = it[a[r, c]]
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = mt[a[r, j], inv]
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                _axpy(a[i], a[i, c], a[r], c, at, mt, nt, it)
        r += 1
    return r


@njit(cache=True)
def pivot_columns(a, rank):
    out = np.full(a.shape[0], -1, dtype=np.int64)
    for i in range(rank):
        for c in range(a.shape[1]):
            if a[i, c] != 0:
                out[i] = c
                break
    return out


@njit(cache=True)
def rref_batch(bases, nrows, at, mt, nt, it):
    """Row-reduce every ``bases[i, :nrows[i]]`` in place; return ranks and pivots."""
    M = bases.shape[0]
    ranks = np.zeros(M, dtype=np.int64)
    pivots = np.full((M, bases.shape[1]), -1, dtype=np.int64)
    for i in range(M):
        r = rref_inplace(bases[i], nrows[i], at, mt, nt, it)
        ranks[i] = r
        pivots[i] = pivot_columns(bases[i], r)
    return ranks, pivots


@njit(cache=True)
def _stack_rank_reduced(u, du, upiv, v, dv, work, at, mt, nt, it):
    # u is in RREF with pivots upiv; reduce v's rows against u, rank the rest
    for i in range(dv):
        for c in range(v.shape[1]):
            work[i, c] = v[i, c]
    for r in range(du):
        c = upiv[r]
        for i in range(dv):
            f = work[i, c]
            if f != 0:
                _axpy(work[i], f, u[r], c, at, mt, nt, it)
    return du + rref_inplace(work, dv, at, mt, nt, it)


@njit(cache=True)
def stack_rank_rref(u, du, upiv, v, dv, at, mt, nt, it):
    work = np.zeros((max(dv, 1), v.shape[1]), dtype=v.dtype)
    return _stack_rank_reduced(u, du, upiv, v, dv, work, at, mt, nt, it)


@njit(cache=True, parallel=True)
def pairwise_stack_ranks(bases, ranks, pivots, at, mt, nt, it):
    """Rank of every stacked pair ``[U_i; U_j]`` for ``i < j``; ``-1`` elsewhere."""
    M = bases.shape[0]
    L = bases.shape[1]
    N = bases.shape[2]
    out = np.full((M, M), -1, dtype=np.int32)
    for i in prange(M):
        work = np.zeros((max(L, 1), N), dtype=bases.dtype)
        for j in range(i + 1, M):
            out[i, j] = _stack_rank_reduced(
                bases[i], ranks[i], pivots[i], bases[j], ranks[j], work, at, mt, nt, it
            )
    return out


@njit(cache=True)
def linear_power_product(points, exps, at, mt, nt, it):
    """Coefficients (low to high) of prod (x - points[i]) ** exps[i]."""
    deg = 0
    for e in exps:
        deg += e
    out = np.zeros(deg + 1, dtype=np.int64)
    out[0] = 1
    cur = 0
    for i in range(points.shape[0]):
        na = nt[points[i]]
        for _ in range(exps[i]):
            # multiply by (x + na)
            cur += 1
            for d in range(cur, 0, -1):
                out[d] = at[out[d - 1], mt[na, out[d]]]
            out[0] = mt[na, out[0]]
    return out
