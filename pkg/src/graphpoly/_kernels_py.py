"""Pure NumPy implementations of the hot kernels.

Same contracts as the compiled module `_kernels_c`; `kernels` picks
whichever is importable.  Grids are flattened C-order with variable 0 on
the slowest axis.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _lex_order(exps: np.ndarray) -> np.ndarray:
    cols = [exps[:, i] for i in range(exps.shape[1] - 1, -1, -1)]
    return np.lexsort(cols)


def eval_grid(coeffs: np.ndarray, exps: np.ndarray, q: int) -> np.ndarray:
    """Values of sum_t coeffs[t] * prod_i x_i^exps[t,i] over F_q^m."""
    coeffs = np.asarray(coeffs, dtype=np.int64) % q
    exps = np.asarray(exps, dtype=np.uint8)
    m = exps.shape[1]
    if len(coeffs) == 0:
        return np.zeros(q**m, dtype=np.int64)
    if m == 0:
        return np.array([int(coeffs.sum()) % q], dtype=np.int64)
    order = _lex_order(exps)
    coeffs = coeffs[order]
    exps = exps[order]

    def rec(lo: int, hi: int, var: int) -> np.ndarray:
        if var == m:
            return np.array([int(coeffs[lo:hi].sum()) % q], dtype=np.int64)
        block = q ** (m - var - 1)
        out = np.zeros(q * block, dtype=np.int64)
        i = lo
        while i < hi:
            e = exps[i, var]
            j = i
            while j < hi and exps[j, var] == e:
                j += 1
            child = rec(i, j, var + 1)
            if e == 0:
                for a in range(q):
                    out[a * block : (a + 1) * block] += child
            else:
                for a in range(q):
                    p = pow(a, int(e), q)
                    if p:
                        out[a * block : (a + 1) * block] += p * child
            i = j
        out %= q
        return out

    return rec(0, len(coeffs), 0)


def count_zeros_set(polys, q: int, m: int) -> int:
    """Common zeros of the given (coeffs, exps) pairs over F_q^m."""
    if not polys:
        return q**m
    mask = None
    for coeffs, exps in polys:
        vals = eval_grid(coeffs, exps, q)
        zero = vals == 0
        mask = zero if mask is None else (mask & zero)
        if not mask.any():
            return 0
    return int(mask.sum())


def count_zeros_single_linear(fc, fe, gc, ge, q: int, m: int) -> int:
    """Zeros of x_m * f + g over F_q^(m+1), with f, g over the first m
    variables: one solution wherever f != 0, q wherever f = g = 0."""
    fvals = eval_grid(fc, fe, q)
    gvals = eval_grid(gc, ge, q)
    nonzero_f = int(np.count_nonzero(fvals))
    both = int(np.count_nonzero((fvals == 0) & (gvals == 0)))
    return nonzero_f + q * both


def _inverse_table(q: int) -> np.ndarray:
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)
    return inv


def rank_mod(mat, q: int) -> int:
    """Rank of a small integer matrix over F_q (in-place on a copy)."""
    m = [[int(x) % q for x in row] for row in mat]
    h = len(m)
    w = len(m[0]) if h else 0
    rank = 0
    for col in range(w):
        pivot = None
        for r in range(rank, h):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        pv_inv = pow(pv, q - 2, q)
        row_r = m[rank]
        for c in range(col, w):
            row_r[c] = row_r[c] * pv_inv % q
        for r in range(rank + 1, h):
            f = m[r][col]
            if f:
                row = m[r]
                for c in range(col, w):
                    row[c] = (row[c] - f * row_r[c]) % q
        rank += 1
        if rank == h:
            break
    return rank


def count_rank_lt(mats: np.ndarray, q: int, bound: int) -> int:
    """Projective points where sum_e x_e * mats[e] has rank < bound.

    Representatives have first nonzero coordinate 1; ``mats`` has shape
    (E, h, h).
    """
    mats = np.asarray(mats, dtype=np.int64) % q
    E, h, _ = mats.shape
    count = 0
    for lead in range(E):
        free = E - lead - 1
        total = q**free
        base = mats[lead].copy()
        point = [0] * free
        acc = base % q
        for idx in range(total):
            if idx > 0:
                # odometer increment over trailing coordinates
                pos = free - 1
                while True:
                    point[pos] += 1
                    if point[pos] < q:
                        break
                    point[pos] = 0
                    pos -= 1
                acc = base.copy()
                for j, xv in enumerate(point):
                    if xv:
                        acc += xv * mats[lead + 1 + j]
                acc %= q
            if rank_mod(acc, q) < bound:
                count += 1
    return count


def psi_eval_batch(exp_mask: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Evaluate a multilinear all-ones polynomial on a batch of points.

    ``exp_mask`` is (T, n) with entries in {0,1}; ``A`` is (N, n) float64.
    """
    exp_mask = np.asarray(exp_mask, dtype=np.uint8)
    A = np.asarray(A, dtype=np.float64)
    out = np.zeros(A.shape[0], dtype=np.float64)
    for t in range(exp_mask.shape[0]):
        cols = np.nonzero(exp_mask[t])[0]
        if len(cols) == 0:
            out += 1.0
            continue
        term = A[:, cols[0]].copy()
        for c in cols[1:]:
            term *= A[:, c]
        out += term
    return out
