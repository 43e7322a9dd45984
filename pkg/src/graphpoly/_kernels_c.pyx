# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the NumPy kernels: grid evaluation and zero counting
over prime fields, projective rank-stratum scans, and the batched
monomial evaluator with compensated summation."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


cdef long long _pow_mod(long long base, long long exp, long long q) noexcept:
    cdef long long out = 1
    base %= q
    while exp:
        if exp & 1:
            out = out * base % q
        base = base * base % q
        exp >>= 1
    return out


def eval_grid(coeffs, exps, long long q):
    """Values of the polynomial over F_q^m, flattened with variable 0 on
    the slowest axis."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] c = np.ascontiguousarray(
        np.asarray(coeffs, dtype=np.int64) % q
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] e = np.ascontiguousarray(
        np.asarray(exps, dtype=np.uint8)
    )
    cdef Py_ssize_t m = e.shape[1]
    cdef Py_ssize_t size = 1
    cdef Py_ssize_t i
    for i in range(m):
        size *= q
    if c.shape[0] == 0:
        return np.zeros(size, dtype=np.int64)
    if m == 0:
        return np.array([int(np.sum(c)) % q], dtype=np.int64)
    order = np.lexsort([e[:, k] for k in range(m - 1, -1, -1)])
    c = np.ascontiguousarray(c[order])
    e = np.ascontiguousarray(e[order])
    out = np.zeros(size, dtype=np.int64)
    _eval_rec(c, e, q, m, 0, c.shape[0], 0, out)
    return out


cdef void _eval_rec(cnp.int64_t[:] coeffs, cnp.uint8_t[:, :] exps,
                    long long q, Py_ssize_t m, Py_ssize_t lo, Py_ssize_t hi,
                    Py_ssize_t var, cnp.int64_t[:] out):
    cdef Py_ssize_t i, j, a, t
    cdef long long total, p
    cdef Py_ssize_t block = 1
    if var == m:
        total = 0
        for t in range(lo, hi):
            total = (total + coeffs[t]) % q
        out[0] = total
        return
    for i in range(m - var - 1):
        block *= q
    cdef cnp.int64_t[:] child = np.zeros(block, dtype=np.int64)
    cdef int e
    i = lo
    while i < hi:
        e = exps[i, var]
        j = i
        while j < hi and exps[j, var] == e:
            j += 1
        for t in range(block):
            child[t] = 0
        _eval_rec(coeffs, exps, q, m, i, j, var + 1, child)
        if e == 0:
            for a in range(q):
                for t in range(block):
                    out[a * block + t] = (out[a * block + t] + child[t]) % q
        else:
            for a in range(q):
                p = _pow_mod(a, e, q)
                if p:
                    for t in range(block):
                        out[a * block + t] = (
                            out[a * block + t] + p * child[t]
                        ) % q
        i = j
    return


def count_zeros_set(polys, long long q, Py_ssize_t m):
    """Common zeros of the given (coeffs, exps) pairs over F_q^m."""
    cdef Py_ssize_t size = 1
    cdef Py_ssize_t i
    for i in range(m):
        size *= q
    if not polys:
        return int(size)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.ones(size, dtype=np.uint8)
    cdef cnp.uint8_t[:] mview = mask
    cdef cnp.int64_t[:] vals
    cdef Py_ssize_t t
    cdef long long remaining
    for coeffs, exps in polys:
        vals = eval_grid(coeffs, exps, q)
        remaining = 0
        for t in range(size):
            if mview[t] and vals[t] != 0:
                mview[t] = 0
        for t in range(size):
            remaining += mview[t]
        if remaining == 0:
            return 0
    cdef long long count = 0
    for t in range(size):
        count += mview[t]
    return int(count)


def count_zeros_single_linear(fc, fe, gc, ge, long long q, Py_ssize_t m):
    """Zeros of x_m * f + g over F_q^(m+1): one solution where f != 0 and
    q solutions where f = g = 0."""
    cdef cnp.int64_t[:] fvals = eval_grid(fc, fe, q)
    cdef cnp.int64_t[:] gvals = eval_grid(gc, ge, q)
    cdef Py_ssize_t size = fvals.shape[0]
    cdef long long nonzero_f = 0, both = 0
    cdef Py_ssize_t t
    for t in range(size):
        if fvals[t] != 0:
            nonzero_f += 1
        elif gvals[t] == 0:
            both += 1
    return int(nonzero_f + q * both)


def count_rank_lt(mats, long long q, int bound):
    """Projective points (first nonzero coordinate 1) where the weighted
    symmetric matrix has rank below ``bound``."""
    cdef cnp.ndarray[cnp.int64_t, ndim=3] ms = np.ascontiguousarray(
        np.asarray(mats, dtype=np.int64) % q
    )
    cdef Py_ssize_t E = ms.shape[0]
    cdef int h = <int> ms.shape[1]
    cdef long long count = 0
    cdef Py_ssize_t lead, free, idx, total, j, pos
    cdef int r, ccol, rr, pivot, cc
    cdef long long f, pv_inv
    cdef long long[64] point
    cdef long long[64] work  # h*h <= 64
    cdef cnp.int64_t[:, :, :] mv = ms
    cdef long long[64] acc
    for lead in range(E):
        free = E - lead - 1
        total = 1
        for j in range(free):
            total *= q
            point[j] = 0
        for idx in range(total):
            if idx > 0:
                pos = free - 1
                while True:
                    point[pos] += 1
                    if point[pos] < q:
                        break
                    point[pos] = 0
                    pos -= 1
            # assemble matrix
            for r in range(h):
                for cc in range(h):
                    acc[r * h + cc] = mv[lead, r, cc]
            for j in range(free):
                if point[j]:
                    for r in range(h):
                        for cc in range(h):
                            acc[r * h + cc] = (
                                acc[r * h + cc]
                                + point[j] * mv[lead + 1 + j, r, cc]
                            ) % q
            # rank by Gaussian elimination
            for r in range(h):
                for cc in range(h):
                    work[r * h + cc] = acc[r * h + cc] % q
            r = 0
            for ccol in range(h):
                pivot = -1
                for rr in range(r, h):
                    if work[rr * h + ccol] != 0:
                        pivot = rr
                        break
                if pivot < 0:
                    continue
                if pivot != r:
                    for cc in range(h):
                        f = work[r * h + cc]
                        work[r * h + cc] = work[pivot * h + cc]
                        work[pivot * h + cc] = f
                pv_inv = _pow_mod(work[r * h + ccol], q - 2, q)
                for cc in range(ccol, h):
                    work[r * h + cc] = work[r * h + cc] * pv_inv % q
                for rr in range(r + 1, h):
                    f = work[rr * h + ccol]
                    if f:
                        for cc in range(ccol, h):
                            work[rr * h + cc] = (
                                work[rr * h + cc]
                                - f * work[r * h + cc]
                            ) % q
                            if work[rr * h + cc] < 0:
                                work[rr * h + cc] += q
                r += 1
                if r == h:
                    break
            if r < bound:
                count += 1
    return int(count)


def psi_eval_batch(exp_mask, A):
    """Sum over monomials of products of selected coordinates, Kahan
    compensated per point."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] em = np.ascontiguousarray(
        np.asarray(exp_mask, dtype=np.uint8)
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(
        np.asarray(A, dtype=np.float64)
    )
    cdef Py_ssize_t T = em.shape[0]
    cdef Py_ssize_t n = em.shape[1]
    cdef Py_ssize_t N = a.shape[0]
    out = np.zeros(N, dtype=np.float64)
    cdef cnp.float64_t[:] ov = out
    cdef cnp.float64_t[:, :] av = a
    cdef cnp.uint8_t[:, :] ev = em
    cdef Py_ssize_t p, t, i
    cdef double acc, comp, term, y, s
    for p in range(N):
        acc = 0.0
        comp = 0.0
        for t in range(T):
            term = 1.0
            for i in range(n):
                if ev[t, i]:
                    term *= av[p, i]
            y = term - comp
            s = acc + y
            comp = (s - acc) - y
            acc = s
        ov[p] = acc
    return out
